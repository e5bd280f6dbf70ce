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

//! Problem instances and the graph / hypergraph value types.
//!
//! Node indices are 0-based everywhere in this module. All textual I/O
//! (see [`crate::io`]) is 1-based, and the conversion happens only there.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated `(d, k)` problem: sample a simple `k`-uniform hypergraph on
/// `n = d.len()` nodes in which node `i` has degree `d[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HypergraphInstance {
    degrees: Vec<usize>,
    k: usize,
    total: usize,
    edges: usize,
    d_max: usize,
    m2: usize,
}

impl HypergraphInstance {
    pub fn new(degrees: Vec<usize>, k: usize) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::EmptySequence);
        }
        if k < 2 {
            return Err(Error::EdgeSizeTooSmall { k: k as u64 });
        }
        if let Some(node) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::ZeroDegree { node });
        }
        let total: usize = degrees.iter().sum();
        if !total.is_multiple_of(k) {
            return Err(Error::IndivisibleTotal {
                total: total as u64,
                k: k as u64,
            });
        }
        let edges = total / k;
        let d_max = *degrees.iter().max().expect("nonempty");
        if d_max > edges {
            return Err(Error::DegreeExceedsEdges {
                d_max: d_max as u64,
                m: edges as u64,
            });
        }
        let m2 = degrees.iter().map(|&d| d * (d - 1)).sum();
        Ok(Self {
            degrees,
            k,
            total,
            edges,
            d_max,
            m2,
        })
    }

    /// The `d`-regular instance on `n` nodes.
    pub fn regular(n: usize, d: usize, k: usize) -> Result<Self> {
        Self::new(vec![d; n], k)
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `M`, the sum of all degrees.
    pub fn total_degree(&self) -> usize {
        self.total
    }

    /// `m = M / k`, the number of edges of every hypergraph in the space.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    /// `M_2 = sum d_i (d_i - 1)`.
    pub fn m2(&self) -> usize {
        self.m2
    }

    /// `L_2 = (k - 1) M`, the second falling-factorial sum of the right side.
    pub fn l2(&self) -> usize {
        (self.k - 1) * self.total
    }

    /// Common degree when the sequence is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.degrees[0];
        self.degrees.iter().all(|&d| d == first).then_some(first)
    }

    /// The bound theorems are only stated for `k >= 3`.
    pub fn in_theorem_range(&self) -> bool {
        self.k >= 3
    }

    /// The half-regular bipartite degree sequence `(d, (k, ..., k))`.
    pub fn bipartite(&self) -> BipartiteDegreeSequence {
        BipartiteDegreeSequence {
            left: self.degrees.clone(),
            right: vec![self.k; self.edges],
        }
    }
}

/// Left and right degrees of a bipartite graph. Zero degrees are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteDegreeSequence {
    left: Vec<usize>,
    right: Vec<usize>,
}

/// `(a)_r = a (a - 1) ... (a - r + 1)`.
pub fn falling_factorial(a: usize, r: usize) -> u128 {
    if r > a {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (a - i) as u128)
}

impl BipartiteDegreeSequence {
    pub fn new(left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        let l: usize = left.iter().sum();
        let r: usize = right.iter().sum();
        if l != r {
            return Err(Error::DegreeSumMismatch {
                left: l as u64,
                right: r as u64,
            });
        }
        Ok(Self { left, right })
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn n(&self) -> usize {
        self.left.len()
    }

    pub fn m(&self) -> usize {
        self.right.len()
    }

    pub fn total(&self) -> usize {
        self.left.iter().sum()
    }

    pub fn d_max(&self) -> usize {
        self.left.iter().copied().max().unwrap_or(0)
    }

    pub fn k_max(&self) -> usize {
        self.right.iter().copied().max().unwrap_or(0)
    }

    /// `M_r = sum_i (d_i)_r`.
    pub fn left_moment(&self, r: usize) -> u128 {
        self.left.iter().map(|&d| falling_factorial(d, r)).sum()
    }

    /// `L_r = sum_j (k_j)_r`.
    pub fn right_moment(&self, r: usize) -> u128 {
        self.right.iter().map(|&k| falling_factorial(k, r)).sum()
    }

    /// Copy with `left[from] -= 1` and `left[to] += 1`.
    pub fn shift_left_degree(&self, from: usize, to: usize) -> Self {
        let mut left = self.left.clone();
        left[from] -= 1;
        left[to] += 1;
        Self {
            left,
            right: self.right.clone(),
        }
    }
}

/// Simple bipartite graph with left part `0..n` and right part `0..m`,
/// stored as the neighbourhood of each right node.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteGraph {
    n: usize,
    nbrs: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Each neighbourhood must be strictly increasing and inside `0..n`.
    pub fn from_neighbourhoods(n: usize, nbrs: Vec<Vec<usize>>) -> Result<Self> {
        for (right, list) in nbrs.iter().enumerate() {
            if let Some(&node) = list.iter().find(|&&x| x >= n) {
                return Err(Error::NodeOutOfRange { node, n });
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::UnsortedNeighbourhood { right });
            }
        }
        Ok(Self { n, nbrs })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, nbrs: Vec<Vec<usize>>) -> Self {
        debug_assert!(nbrs.iter().all(|l| l.windows(2).all(|w| w[0] < w[1])));
        Self { n, nbrs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.nbrs.len()
    }

    pub fn neighbourhoods(&self) -> &[Vec<usize>] {
        &self.nbrs
    }

    pub fn neighbourhood(&self, right: usize) -> &[usize] {
        &self.nbrs[right]
    }

    pub fn edge_count(&self) -> usize {
        self.nbrs.iter().map(Vec::len).sum()
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &x in self.nbrs.iter().flatten() {
            deg[x] += 1;
        }
        deg
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        self.nbrs.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.nbrs[right].binary_search(&left).is_ok()
    }

    /// True when the graph lies in `B(d, k)` for the given sequence.
    pub fn realises(&self, bds: &BipartiteDegreeSequence) -> bool {
        self.n == bds.n()
            && self.m() == bds.m()
            && self.right_degrees() == bds.right()
            && self.left_degrees() == bds.left()
    }

    pub fn check_realises(&self, bds: &BipartiteDegreeSequence) -> Result<()> {
        if self.realises(bds) {
            Ok(())
        } else {
            Err(Error::DegreeMismatch)
        }
    }
}

/// Canonical simple `k`-uniform hypergraph: every edge strictly increasing,
/// the edge list sorted lexicographically. Equal hypergraphs compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

/// Sorts every edge and the edge list, rejecting anything that would not be
/// a simple `k`-uniform hypergraph on `n` nodes. Duplicates are reported
/// using their positions in the input.
pub fn canonicalize(n: usize, k: usize, raw: Vec<Vec<usize>>) -> Result<Hypergraph> {
    let mut edges = Vec::with_capacity(raw.len());
    for (idx, mut edge) in raw.into_iter().enumerate() {
        if edge.len() != k {
            return Err(Error::WrongEdgeSize {
                edge: idx,
                found: edge.len(),
                expected: k,
            });
        }
        if let Some(&node) = edge.iter().find(|&&x| x >= n) {
            return Err(Error::NodeOutOfRange { node, n });
        }
        edge.sort_unstable();
        if let Some(w) = edge.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::RepeatedNodeInEdge {
                edge: idx,
                node: w[0],
            });
        }
        edges.push((edge, idx));
    }
    edges.sort();
    if let Some(w) = edges.windows(2).find(|w| w[0].0 == w[1].0) {
        let (a, b) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
        return Err(Error::DuplicateEdge {
            first: a,
            second: b,
        });
    }
    Ok(Hypergraph {
        n,
        k,
        edges: edges.into_iter().map(|(e, _)| e).collect(),
    })
}

impl Hypergraph {
    pub(crate) fn from_canonical_unchecked(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self { n, k, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &v in self.edges.iter().flatten() {
            deg[v] += 1;
        }
        deg
    }

    /// The biadjacency graph with right node `j` standing for edge `j`.
    pub fn to_bipartite(&self) -> BipartiteGraph {
        BipartiteGraph::from_sorted_unchecked(self.n, self.edges.clone())
    }
}

/// Stable string keys for histograms. Two values have the same encoding iff
/// they are equal.
pub trait CanonicalEncoding {
    fn encoding(&self) -> String;
}

fn join_ids(list: &[usize]) -> String {
    let mut s = String::with_capacity(list.len() * 3);
    for (i, v) in list.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        s.push_str(&(v + 1).to_string());
    }
    s
}

/// Right-node neighbourhoods, 1-based, separated by `|`.
impl CanonicalEncoding for BipartiteGraph {
    fn encoding(&self) -> String {
        self.nbrs
            .iter()
            .map(|l| join_ids(l))
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// Edges, 1-based, separated by `|`.
impl CanonicalEncoding for Hypergraph {
    fn encoding(&self) -> String {
        self.edges
            .iter()
            .map(|e| join_ids(e))
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for Hypergraph {
    /// One edge per line, ascending 1-based node ids.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "{}", join_ids(e))?;
        }
        Ok(())
    }
}

/// Seed plus stream index. The same pair always yields the same generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}
