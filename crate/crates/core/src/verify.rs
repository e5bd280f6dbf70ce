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

//! Property suites run over families of small instances against the
//! enumeration oracle.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;

use crate::bounds::regular_simplicity_bound_exact;
use crate::error::{Error, Result};
use crate::oracle::{
    constants_bound, enumerate_bipartite, exact_constants, exact_uniform_handle,
    verify_proposition_balanced,
};
use crate::rejection::{
    geometric_tail_check, sample_batch, BipartiteSampler, ConfigurationSampler,
};
use crate::simplicity::phi;
use crate::stats::{tv_from_uniform, Histogram};
use crate::types::{BipartiteDegreeSequence, CanonicalEncoding, HypergraphInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Thm12,
    Lemma31,
    Prop42,
    Uniformity,
    Tail,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "thm12" => Ok(Suite::Thm12),
            "lemma31" => Ok(Suite::Lemma31),
            "prop42" => Ok(Suite::Prop42),
            "uniformity" => Ok(Suite::Uniformity),
            "tail" => Ok(Suite::Tail),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Largest number of nodes; `None` uses each suite's own default.
    pub max_n: Option<usize>,
    /// Largest number of edges; `None` uses each suite's own default.
    pub max_m: Option<usize>,
    pub seed: u64,
    pub limit: u64,
    /// Draws per instance in the sampling suites.
    pub draws: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_n: None,
            max_m: None,
            seed: 1,
            limit: crate::oracle::DEFAULT_LIMIT,
            draws: 100_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Too large to enumerate under the limit.
    Skip,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub suite: &'static str,
    pub instance: String,
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        };
        write!(
            f,
            "{} {} {}: {}",
            self.suite, status, self.instance, self.detail
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub verdicts: Vec<Verdict>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.verdicts.iter().filter(|v| v.status == status).count()
    }
}

fn label(d: &[usize], k: usize) -> String {
    let ids: Vec<String> = d.iter().map(usize::to_string).collect();
    format!("d=({}) k={}", ids.join(","), k)
}

fn as_f64<T: ToPrimitive>(x: &T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Nonincreasing sequences with entries in `1..=max_entry`, length at most
/// `max_n`, total at most `max_total` and divisible by `k`.
pub fn partitions(max_n: usize, max_total: usize, max_entry: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(
        prefix: &mut Vec<usize>,
        cap: usize,
        total: usize,
        max_n: usize,
        max_total: usize,
        k: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !prefix.is_empty() && total.is_multiple_of(k) {
            out.push(prefix.clone());
        }
        if prefix.len() == max_n {
            return;
        }
        for x in (1..=cap).rev() {
            if total + x > max_total {
                continue;
            }
            prefix.push(x);
            rec(prefix, x, total + x, max_n, max_total, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), max_entry, 0, max_n, max_total, k, &mut out);
    out
}

/// Every sequence in `0..=max_entry` of length `n` (not just sorted ones).
fn all_sequences(n: usize, max_entry: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=max_entry).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Exact `P(B*)` against the regular closed-form bound, `k = 3`.
pub fn suite_thm12(opts: &VerifyOptions, sink: &mut dyn FnMut(&Verdict)) -> SuiteReport {
    let k = 3;
    let max_n = opts.max_n.unwrap_or(8);
    let mut report = SuiteReport::default();
    for n in k..=max_n {
        for d in 1..=4 {
            let Ok(inst) = HypergraphInstance::regular(n, d, k) else {
                continue;
            };
            if opts.max_m.is_some_and(|m| inst.edge_count() > m) {
                continue;
            }
            let name = label(inst.degrees(), k);
            let v = match enumerate_bipartite(&inst.bipartite(), opts.limit, false) {
                Ok(r) => {
                    let bound = regular_simplicity_bound_exact(n, d, k).expect("k divides nd");
                    let ok = r.p_simple >= bound;
                    Verdict {
                        suite: "thm12",
                        instance: name,
                        status: if ok { Status::Pass } else { Status::Fail },
                        detail: format!(
                            "p_simple={} ({:.6}) bound={:.6}",
                            r.p_simple,
                            as_f64(&r.p_simple),
                            as_f64(&bound)
                        ),
                    }
                }
                Err(e) => skip("thm12", name, e),
            };
            sink(&v);
            report.verdicts.push(v);
        }
    }
    report
}

fn skip(suite: &'static str, instance: String, e: Error) -> Verdict {
    Verdict {
        suite,
        instance,
        status: Status::Skip,
        detail: e.to_string(),
    }
}

/// `1 - c1 c2 C(m,2)/C(n,k) <= P(B*)` with exact constants, `k = 3`.
pub fn suite_lemma31(opts: &VerifyOptions, sink: &mut dyn FnMut(&Verdict)) -> SuiteReport {
    let k = 3;
    let max_n = opts.max_n.unwrap_or(6);
    let max_total = opts.max_m.unwrap_or(4) * k;
    let mut report = SuiteReport::default();
    for d in partitions(max_n, max_total, max_total, k) {
        let Ok(inst) = HypergraphInstance::new(d.clone(), k) else {
            continue;
        };
        let name = label(&d, k);
        let v = match enumerate_bipartite(&inst.bipartite(), opts.limit, false) {
            Ok(r) if r.count_b == 0 => skip("lemma31", name, Error::EmptySpace),
            Ok(r) => match exact_constants(&inst, opts.limit) {
                Ok(c) => {
                    let bound = constants_bound(&inst, &c);
                    let ok = bound <= r.p_simple;
                    Verdict {
                        suite: "lemma31",
                        instance: name,
                        status: if ok { Status::Pass } else { Status::Fail },
                        detail: format!(
                            "c1={} c2={}{} bound={:.6} p_simple={:.6}",
                            c.c1,
                            c.c2,
                            if c.degenerate { " (degenerate)" } else { "" },
                            as_f64(&bound),
                            as_f64(&r.p_simple)
                        ),
                    }
                }
                Err(e) => skip("lemma31", name, e),
            },
            Err(e) => skip("lemma31", name, e),
        };
        sink(&v);
        report.verdicts.push(v);
    }
    report
}

/// `|B(d, k)| <= |B(d', k)|` after moving one unit from a node of degree at
/// least `d_h + 2` to node `h`, over all sequences, `k = 3`.
pub fn suite_prop42(opts: &VerifyOptions, sink: &mut dyn FnMut(&Verdict)) -> SuiteReport {
    let k = 3;
    let max_n = opts.max_n.unwrap_or(5);
    let max_m = opts.max_m.unwrap_or(4);
    let mut report = SuiteReport::default();
    for m in 1..=max_m {
        let right = vec![k; m];
        for n in 1..=max_n {
            let (mut checked, mut failed, mut skipped) = (0usize, Vec::new(), 0usize);
            for d in all_sequences(n, m * k) {
                if d.iter().sum::<usize>() != m * k {
                    continue;
                }
                let bds =
                    BipartiteDegreeSequence::new(d.clone(), right.clone()).expect("sums agree");
                for g in 0..n {
                    for h in 0..n {
                        if g == h || d[g] < d[h] + 2 {
                            continue;
                        }
                        match verify_proposition_balanced(&bds, g, h, opts.limit) {
                            Ok(r) if r.holds => checked += 1,
                            Ok(r) => failed.push(format!(
                                "{} g={} h={}: {} > {}",
                                label(&d, k),
                                g + 1,
                                h + 1,
                                r.count_before,
                                r.count_after
                            )),
                            Err(_) => skipped += 1,
                        }
                    }
                }
            }
            if checked + failed.len() + skipped == 0 {
                continue;
            }
            let v = Verdict {
                suite: "prop42",
                instance: format!("n={n} m={m} k={k}"),
                status: if failed.is_empty() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                detail: if failed.is_empty() {
                    format!("{checked} pairs hold, {skipped} skipped")
                } else {
                    failed.join("; ")
                },
            };
            sink(&v);
            report.verdicts.push(v);
        }
    }
    report
}

/// Instances used by the sampling suites: small enough that a uniform
/// histogram over `H_k(d)` settles within a 0.02 TV tolerance.
pub fn sampling_instances() -> Vec<HypergraphInstance> {
    [
        (vec![2, 2, 2, 1, 1, 1], 3),
        (vec![1; 6], 3),
        (vec![2, 2, 1, 1, 1, 1, 1], 3),
    ]
    .into_iter()
    .map(|(d, k)| HypergraphInstance::new(d, k).expect("valid instance"))
    .collect()
}

/// Canonical encodings of every hypergraph in `H_k(d)`.
pub fn hypergraph_space(inst: &HypergraphInstance, limit: u64) -> Result<Vec<String>> {
    let r = enumerate_bipartite(&inst.bipartite(), limit, true)?;
    let set: BTreeSet<String> = r
        .states
        .unwrap_or_default()
        .iter()
        .filter_map(|g| phi(g).ok())
        .map(|h| h.encoding())
        .collect();
    Ok(set.into_iter().collect())
}

/// Empirical TV distance from uniform on `H_k(d)` of `draws` rejection
/// samples built on `sampler`.
pub fn rejection_tv(
    inst: &HypergraphInstance,
    sampler: &dyn BipartiteSampler,
    space: &[String],
    seed: u64,
    draws: usize,
) -> Result<f64> {
    let mut hist = Histogram::new();
    for r in sample_batch(inst, sampler, seed, draws, None) {
        hist.add(r?.0.encoding());
    }
    Ok(tv_from_uniform(&hist, space))
}

/// Rejection sampling with the exact-uniform and configuration-model
/// samplers against uniform on `H_k(d)`.
pub fn suite_uniformity(opts: &VerifyOptions, sink: &mut dyn FnMut(&Verdict)) -> SuiteReport {
    let mut report = SuiteReport::default();
    for (i, inst) in sampling_instances().into_iter().enumerate() {
        let name = label(inst.degrees(), inst.k());
        let space = match hypergraph_space(&inst, opts.limit) {
            Ok(s) => s,
            Err(e) => {
                let v = skip("uniformity", name, e);
                sink(&v);
                report.verdicts.push(v);
                continue;
            }
        };
        let samplers: Vec<Box<dyn BipartiteSampler>> = vec![
            Box::new(exact_uniform_handle(&inst, opts.limit).expect("enumerable")),
            Box::new(ConfigurationSampler::new(&inst)),
        ];
        for (j, sampler) in samplers.iter().enumerate() {
            let seed = opts.seed.wrapping_add((10 * i + j) as u64);
            let v = match rejection_tv(&inst, sampler.as_ref(), &space, seed, opts.draws) {
                Ok(tv) => Verdict {
                    suite: "uniformity",
                    instance: format!("{name} sampler={}", sampler.name()),
                    status: if tv < 0.02 {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                    detail: format!("tv={tv:.5} states={} draws={}", space.len(), opts.draws),
                },
                Err(e) => Verdict {
                    suite: "uniformity",
                    instance: format!("{name} sampler={}", sampler.name()),
                    status: Status::Fail,
                    detail: e.to_string(),
                },
            };
            sink(&v);
            report.verdicts.push(v);
        }
    }
    report
}

/// Iteration counts under an exact-uniform sampler: mean within 5% of
/// `1 / P(B*)` and the geometric tail bound at `t = 1, 2, 3`.
pub fn suite_tail(opts: &VerifyOptions, sink: &mut dyn FnMut(&Verdict)) -> SuiteReport {
    let runs = (opts.draws / 10).max(1);
    let mut report = SuiteReport::default();
    let mut instances = sampling_instances();
    instances.push(HypergraphInstance::regular(5, 3, 3).expect("valid instance"));
    for (i, inst) in instances.into_iter().enumerate() {
        let name = label(inst.degrees(), inst.k());
        let r = match enumerate_bipartite(&inst.bipartite(), opts.limit, false) {
            Ok(r) => r,
            Err(e) => {
                let v = skip("tail", name, e);
                sink(&v);
                report.verdicts.push(v);
                continue;
            }
        };
        let p = as_f64(&r.p_simple);
        if !(p > 0.0 && p < 1.0) {
            continue;
        }
        let handle = exact_uniform_handle(&inst, opts.limit).expect("enumerable");
        let seed = opts.seed.wrapping_add(100 + i as u64);
        let iterations: Vec<u64> = sample_batch(&inst, &handle, seed, runs, None)
            .into_iter()
            .map(|r| r.expect("B* is nonempty").1.iterations)
            .collect();
        let q = 1.0 / p;
        let mean = iterations.iter().sum::<u64>() as f64 / runs as f64;
        let rel = (mean - q).abs() / q;
        let tails: Vec<_> = [1.0, 2.0, 3.0]
            .iter()
            .map(|&t| (t, geometric_tail_check(&iterations, q, t)))
            .collect();
        let ok = rel < 0.05 && tails.iter().all(|(_, c)| c.pass);
        let tail_text: Vec<String> = tails
            .iter()
            .map(|(t, c)| format!("t={t}: {:.4}<={:.4}", c.observed, c.allowed))
            .collect();
        let v = Verdict {
            suite: "tail",
            instance: name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: format!(
                "p={p:.5} mean={mean:.4} expected={q:.4} rel={rel:.4} {}",
                tail_text.join(" ")
            ),
        };
        sink(&v);
        report.verdicts.push(v);
    }
    report
}

pub fn run_suite(
    suite: Suite,
    opts: &VerifyOptions,
    sink: &mut dyn FnMut(&Verdict),
) -> SuiteReport {
    match suite {
        Suite::Thm12 => suite_thm12(opts, sink),
        Suite::Lemma31 => suite_lemma31(opts, sink),
        Suite::Prop42 => suite_prop42(opts, sink),
        Suite::Uniformity => suite_uniformity(opts, sink),
        Suite::Tail => suite_tail(opts, sink),
        Suite::All => {
            let mut all = SuiteReport::default();
            for s in [
                Suite::Thm12,
                Suite::Lemma31,
                Suite::Prop42,
                Suite::Uniformity,
                Suite::Tail,
            ] {
                all.verdicts.extend(run_suite(s, opts, sink).verdicts);
            }
            all
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_sorted_and_divisible() {
        let ps = partitions(4, 6, 6, 3);
        assert!(ps.iter().all(|p| p.windows(2).all(|w| w[0] >= w[1])));
        assert!(ps.iter().all(|p| p.iter().sum::<usize>() % 3 == 0));
        assert!(ps.contains(&vec![1, 1, 1]));
        assert!(ps.contains(&vec![2, 2, 1, 1]));
        assert!(ps.contains(&vec![6]));
        assert!(!ps.contains(&vec![1, 1, 1, 1]));
    }

    #[test]
    fn all_sequences_count() {
        assert_eq!(all_sequences(3, 2).len(), 27);
    }

    #[test]
    fn suite_names() {
        assert_eq!("prop42".parse::<Suite>().unwrap(), Suite::Prop42);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn sampling_instances_have_enough_hypergraphs() {
        for inst in sampling_instances() {
            let space = hypergraph_space(&inst, crate::oracle::DEFAULT_LIMIT).unwrap();
            assert!(space.len() >= 5, "{:?}", inst.degrees());
            assert!(space.len() <= 100, "{:?}", inst.degrees());
        }
    }
}
