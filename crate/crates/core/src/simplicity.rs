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

//! The map from bipartite graphs to hypergraphs and the H-simplicity test.
//!
//! A bipartite graph is H-simple when no two right nodes share a
//! neighbourhood. The test sorts the `m` neighbourhoods lexicographically and
//! scans adjacent pairs, which costs `O(M log M)` and produces the canonical
//! edge list of the hypergraph as a by-product.

use std::fmt;

use crate::types::{BipartiteGraph, Hypergraph};

/// Two right nodes with the same neighbourhood. `first < second`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotHSimple {
    pub first: usize,
    pub second: usize,
}

impl fmt::Display for NotHSimple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "right nodes {} and {} share a neighbourhood",
            self.first + 1,
            self.second + 1
        )
    }
}

/// Maps `b` to the hypergraph whose edges are its right-node neighbourhoods.
///
/// On a collision the reported pair is the first adjacent equal pair in the
/// sorted order, with ties between equal neighbourhoods broken by right-node
/// index, so the diagnostic is deterministic.
pub fn phi(b: &BipartiteGraph) -> Result<Hypergraph, NotHSimple> {
    let nbrs = b.neighbourhoods();
    let mut order: Vec<usize> = (0..nbrs.len()).collect();
    order.sort_by(|&s, &t| nbrs[s].cmp(&nbrs[t]).then(s.cmp(&t)));
    if let Some(w) = order.windows(2).find(|w| nbrs[w[0]] == nbrs[w[1]]) {
        return Err(NotHSimple {
            first: w[0],
            second: w[1],
        });
    }
    let k = nbrs.first().map_or(0, Vec::len);
    debug_assert!(
        nbrs.iter().all(|l| l.len() == k),
        "right side must be k-regular"
    );
    let edges = order.into_iter().map(|j| nbrs[j].clone()).collect();
    Ok(Hypergraph::from_canonical_unchecked(b.n(), k, edges))
}

pub fn is_h_simple(b: &BipartiteGraph) -> bool {
    phi(b).is_ok()
}
