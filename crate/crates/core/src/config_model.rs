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

//! Configuration model for `k`-uniform hypergraphs.
//!
//! Cell `i` holds `d_i` labelled points. A configuration is a partition of the
//! `M` points into `m` parts of size `k`; projecting every point onto its cell
//! gives a `k`-uniform multi-hypergraph which is kept only if it is simple.
//! Simple hypergraphs all have the same number of preimages, so rejection
//! yields the exactly uniform distribution on simple hypergraphs.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bounds::Asymptotic;
use crate::error::{Error, Result};
use crate::types::{BipartiteGraph, Hypergraph, HypergraphInstance};

/// A uniformly shuffled point array cut into consecutive blocks of `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    n: usize,
    k: usize,
    cell_of: Vec<usize>,
    points: Vec<usize>,
}

impl Configuration {
    /// Builds a configuration from an explicit point order. Points are
    /// numbered cell by cell: cell 0 owns `0..d_0`, cell 1 the next `d_1`, ...
    pub fn from_point_order(inst: &HypergraphInstance, points: Vec<usize>) -> Result<Self> {
        let cell_of = cell_table(inst);
        let mut seen = vec![false; cell_of.len()];
        if points.len() != cell_of.len() {
            return Err(Error::PreconditionViolated(format!(
                "expected {} points, got {}",
                cell_of.len(),
                points.len()
            )));
        }
        for &p in &points {
            if p >= seen.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::PreconditionViolated(format!(
                    "point {p} missing from or repeated in the order"
                )));
            }
        }
        Ok(Self {
            n: inst.n(),
            k: inst.k(),
            cell_of,
            points,
        })
    }

    pub fn parts(&self) -> impl Iterator<Item = &[usize]> {
        self.points.chunks(self.k)
    }

    pub fn cell(&self, point: usize) -> usize {
        self.cell_of[point]
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }
}

fn cell_table(inst: &HypergraphInstance) -> Vec<usize> {
    let mut cell_of = Vec::with_capacity(inst.total_degree());
    for (i, &d) in inst.degrees().iter().enumerate() {
        cell_of.extend(std::iter::repeat_n(i, d));
    }
    cell_of
}

/// `O(M)`: one Fisher-Yates shuffle of the points.
pub fn random_configuration<R: Rng + ?Sized>(
    inst: &HypergraphInstance,
    rng: &mut R,
) -> Configuration {
    let cell_of = cell_table(inst);
    let mut points: Vec<usize> = (0..cell_of.len()).collect();
    points.shuffle(rng);
    Configuration {
        n: inst.n(),
        k: inst.k(),
        cell_of,
        points,
    }
}

/// Why a projected configuration is not a simple hypergraph. Part indices
/// are positions of the blocks in the configuration, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotSimple {
    Loop { part: usize, node: usize },
    RepeatedEdge { first: usize, second: usize },
}

impl fmt::Display for NotSimple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotSimple::Loop { part, node } => {
                write!(f, "part {} contains node {} twice", part + 1, node + 1)
            }
            NotSimple::RepeatedEdge { first, second } => {
                write!(
                    f,
                    "parts {} and {} project to the same edge",
                    first + 1,
                    second + 1
                )
            }
        }
    }
}

fn projected_parts(c: &Configuration) -> std::result::Result<Vec<Vec<usize>>, NotSimple> {
    let mut edges = Vec::with_capacity(c.points.len() / c.k.max(1));
    for (part, block) in c.parts().enumerate() {
        let mut edge: Vec<usize> = block.iter().map(|&p| c.cell_of[p]).collect();
        edge.sort_unstable();
        if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
            return Err(NotSimple::Loop { part, node: w[0] });
        }
        edges.push(edge);
    }
    Ok(edges)
}

/// Replaces each point by its cell. Succeeds iff the result is simple.
pub fn project(c: &Configuration) -> std::result::Result<Hypergraph, NotSimple> {
    let edges = projected_parts(c)?;
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&s, &t| edges[s].cmp(&edges[t]).then(s.cmp(&t)));
    if let Some(w) = order.windows(2).find(|w| edges[w[0]] == edges[w[1]]) {
        return Err(NotSimple::RepeatedEdge {
            first: w[0],
            second: w[1],
        });
    }
    let sorted = order.into_iter().map(|j| edges[j].clone()).collect();
    Ok(Hypergraph::from_canonical_unchecked(c.n, c.k, sorted))
}

/// Bipartite reading of a configuration: right node `j` is part `j`.
/// Fails only on loops, which would be multi-edges in the bipartite graph.
pub fn project_bipartite(c: &Configuration) -> std::result::Result<BipartiteGraph, NotSimple> {
    let edges = projected_parts(c)?;
    Ok(BipartiteGraph::from_sorted_unchecked(c.n, edges))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSample {
    pub hypergraph: Hypergraph,
    pub trials: u64,
}

/// `ceil(100 * expected trials)`.
pub fn default_max_trials(inst: &HypergraphInstance) -> u64 {
    let t = (100.0 * expected_trials_estimate(inst).value).ceil();
    if t.is_finite() && t < u64::MAX as f64 {
        t as u64
    } else {
        u64::MAX
    }
}

/// Samples configurations until one is simple. The output is exactly
/// uniform on simple hypergraphs with the given degrees.
pub fn config_sample_hypergraph<R: Rng + ?Sized>(
    inst: &HypergraphInstance,
    rng: &mut R,
    max_trials: Option<u64>,
) -> Result<ConfigSample> {
    let cap = max_trials.unwrap_or_else(|| default_max_trials(inst));
    for trial in 1..=cap {
        let c = random_configuration(inst, rng);
        if let Ok(hypergraph) = project(&c) {
            return Ok(ConfigSample {
                hypergraph,
                trials: trial,
            });
        }
    }
    Err(Error::Exhausted { trials: cap })
}

/// Bipartite configuration model: exactly uniform on `B(d, k)`.
pub fn config_sample_bipartite<R: Rng + ?Sized>(
    inst: &HypergraphInstance,
    rng: &mut R,
    max_trials: u64,
) -> Result<(BipartiteGraph, u64)> {
    for trial in 1..=max_trials {
        let c = random_configuration(inst, rng);
        if let Ok(g) = project_bipartite(&c) {
            return Ok((g, trial));
        }
    }
    Err(Error::Exhausted { trials: max_trials })
}

/// Leading term `exp((k - 1) M_2 / (2M))` of the expected number of
/// configurations drawn before a simple one; the `o(1)` in the exponent is
/// dropped. The proxy for `k^4 d_max^3 = o(M)` is `k^4 d_max^3 <= M / 10`.
pub fn expected_trials_estimate(inst: &HypergraphInstance) -> Asymptotic {
    let k = inst.k() as f64;
    let total = inst.total_degree() as f64;
    let exponent = (k - 1.0) * inst.m2() as f64 / (2.0 * total);
    let proxy = k.powi(4) * (inst.d_max() as f64).powi(3) <= total / 10.0;
    Asymptotic::new(exponent.exp(), proxy)
}
