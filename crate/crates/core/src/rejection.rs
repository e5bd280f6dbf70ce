// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Rejection sampling of hypergraphs through a bipartite sampler.
//!
//! Draw `B` from any sampler for `B(d, k)`, keep it if it is H-simple and
//! output `phi(B)`. Every simple hypergraph has exactly `m!` preimages, so an
//! exactly uniform bipartite sampler gives an exactly uniform hypergraph
//! sampler, and the number of draws is geometric with success probability
//! `P(B*)`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use rand::RngCore;
use rayon::prelude::*;

use crate::config_model::config_sample_bipartite;
use crate::error::{Error, Result};
use crate::simplicity::phi;
use crate::switch_chain::{initial_graph, ChainState};
use crate::types::{BipartiteGraph, Hypergraph, HypergraphInstance, RngSeed};

/// A black-box sampler for `B(d, k)`.
pub trait BipartiteSampler: Send + Sync {
    fn name(&self) -> &str;

    /// Declared total variation distance of the output law from uniform on
    /// `B(d, k)`, when known.
    fn tv_bound(&self) -> Option<f64> {
        None
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<BipartiteGraph>;
}

/// Fresh switch chain per call, run for a fixed number of steps from the
/// greedy initial graph.
#[derive(Debug, Clone)]
pub struct SwitchSampler {
    start: BipartiteGraph,
    steps: u64,
    tv_bound: Option<f64>,
}

impl SwitchSampler {
    pub fn new(inst: &HypergraphInstance, steps: u64) -> Result<Self> {
        Ok(Self {
            start: initial_graph(&inst.bipartite())?,
            steps,
            tv_bound: None,
        })
    }

    /// Records the accuracy the step budget was derived for.
    pub fn with_tv_bound(mut self, eps: f64) -> Self {
        self.tv_bound = Some(eps);
        self
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }
}

impl BipartiteSampler for SwitchSampler {
    fn name(&self) -> &str {
        "switch"
    }

    fn tv_bound(&self) -> Option<f64> {
        self.tv_bound
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<BipartiteGraph> {
        let mut state = ChainState::new(&self.start);
        state.run(self.steps, rng);
        Ok(state.graph())
    }
}

/// Bipartite configuration model; exactly uniform on `B(d, k)`.
#[derive(Debug, Clone)]
pub struct ConfigurationSampler {
    inst: HypergraphInstance,
    max_trials: u64,
}

impl ConfigurationSampler {
    pub fn new(inst: &HypergraphInstance) -> Self {
        Self {
            inst: inst.clone(),
            max_trials: 1_000_000,
        }
    }

    pub fn with_max_trials(mut self, max_trials: u64) -> Self {
        self.max_trials = max_trials;
        self
    }
}

impl BipartiteSampler for ConfigurationSampler {
    fn name(&self) -> &str {
        "config"
    }

    fn tv_bound(&self) -> Option<f64> {
        Some(0.0)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<BipartiteGraph> {
        config_sample_bipartite(&self.inst, rng, self.max_trials).map(|(g, _)| g)
    }
}

/// Per-run bookkeeping.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RejectionStats {
    pub iterations: u64,
    /// H-simplicity verdict of every draw, in order.
    pub verdicts: Vec<bool>,
    pub sampler_time: Duration,
    pub test_time: Duration,
}

impl RejectionStats {
    /// Associative merge of statistics from independent runs.
    pub fn merge(mut self, other: RejectionStats) -> RejectionStats {
        self.iterations += other.iterations;
        self.verdicts.extend(other.verdicts);
        self.sampler_time += other.sampler_time;
        self.test_time += other.test_time;
        self
    }

    /// Fraction of draws that were H-simple.
    pub fn success_rate(&self) -> f64 {
        if self.verdicts.is_empty() {
            return 0.0;
        }
        self.verdicts.iter().filter(|&&v| v).count() as f64 / self.verdicts.len() as f64
    }
}

/// Draws from `sampler` until the draw is H-simple, then returns its
/// hypergraph. With `cap` set, gives up with [`Error::Fail`] after `cap`
/// draws. Without a cap the loop never ends if `B*(d, k)` is empty.
pub fn hypergraph_sampling(
    inst: &HypergraphInstance,
    sampler: &dyn BipartiteSampler,
    rng: &mut dyn RngCore,
    cap: Option<u64>,
) -> Result<(Hypergraph, RejectionStats)> {
    let mut stats = RejectionStats::default();
    let bds = inst.bipartite();
    loop {
        let t0 = Instant::now();
        let b = sampler.sample(rng)?;
        let t1 = Instant::now();
        debug_assert!(
            b.realises(&bds),
            "{} produced a graph outside B(d, k)",
            sampler.name()
        );
        let verdict = phi(&b);
        stats.sampler_time += t1 - t0;
        stats.test_time += t1.elapsed();
        stats.iterations += 1;
        stats.verdicts.push(verdict.is_ok());
        if let Ok(h) = verdict {
            return Ok((h, stats));
        }
        if cap.is_some_and(|c| stats.iterations >= c) {
            return Err(Error::Fail {
                iterations: stats.iterations,
            });
        }
    }
}

/// Runs `count` independent samplings; draw `i` uses stream `i` of `seed`,
/// so the result does not depend on the number of worker threads.
pub fn sample_batch(
    inst: &HypergraphInstance,
    sampler: &dyn BipartiteSampler,
    seed: u64,
    count: usize,
    cap: Option<u64>,
) -> Vec<Result<(Hypergraph, RejectionStats)>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngSeed::new(seed, i as u64).rng();
            hypergraph_sampling(inst, sampler, &mut rng, cap)
        })
        .collect()
}

/// Number of draws after which the capped sampler reports failure:
/// `ceil(2 / (1 - c0 - eps))`.
pub fn fpaus_cap(c0: f64, eps: f64) -> Result<u64> {
    if c0.is_nan() || c0 <= 0.0 || c0 >= 1.0 || eps.is_nan() || eps <= 0.0 {
        return Err(Error::InvalidRegion(format!(
            "need 0 < c0 < 1 and eps > 0, got c0 = {c0}, eps = {eps}"
        )));
    }
    if c0 + eps >= 1.0 {
        return Err(Error::InvalidRegion(format!(
            "c0 + eps = {} >= 1",
            c0 + eps
        )));
    }
    let x = 2.0 / (1.0 - c0 - eps);
    // 2 / 0.4 evaluates to 5.000000000000001; snap near-integers first.
    let r = x.round();
    let cap = if (x - r).abs() <= 1e-9 * r.max(1.0) {
        r
    } else {
        x.ceil()
    };
    Ok(cap as u64)
}

/// Accuracy to request from the bipartite sampler so that the hypergraph
/// output is within `eps`: `2 eps (1 - c0) / 3`.
pub fn inner_eps(eps: f64, c0: f64) -> f64 {
    2.0 * eps * (1.0 - c0) / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    pub pass: bool,
    /// Fraction of samples with more than `t q` iterations.
    pub observed: f64,
    /// `exp(-t)` plus three binomial standard deviations.
    pub allowed: f64,
}

/// Checks `P(iterations > t q) <= exp(-t)` on observed iteration counts.
pub fn geometric_tail_check(samples: &[u64], q: f64, t: f64) -> TailCheck {
    let bound = (-t).exp();
    let n = samples.len().max(1) as f64;
    let over = samples.iter().filter(|&&s| s as f64 > t * q).count() as f64;
    let observed = over / n;
    let allowed = bound + 3.0 * (bound * (1.0 - bound) / n).sqrt();
    TailCheck {
        pass: observed <= allowed,
        observed,
        allowed,
    }
}

/// Exact output law of the rejection sampler when the bipartite sampler
/// draws `states[i]` with probability proportional to `weights[i]`.
pub fn output_distribution(
    states: &[BipartiteGraph],
    weights: &[BigRational],
) -> Result<BTreeMap<Hypergraph, BigRational>> {
    if states.len() != weights.len() {
        return Err(Error::PreconditionViolated("one weight per state".into()));
    }
    let mut mass: BTreeMap<Hypergraph, BigRational> = BTreeMap::new();
    let mut accepted = BigRational::zero();
    for (g, w) in states.iter().zip(weights) {
        if let Ok(h) = phi(g) {
            accepted += w;
            *mass.entry(h).or_insert_with(BigRational::zero) += w;
        }
    }
    if accepted.is_zero() {
        return Err(Error::EmptySpace);
    }
    for v in mass.values_mut() {
        *v /= &accepted;
    }
    Ok(mass)
}
