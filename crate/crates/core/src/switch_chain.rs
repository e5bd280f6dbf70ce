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

//! Switch Markov chain on `B(d, k)`.
//!
//! One step picks an unordered pair of distinct incidences
//! `{(x1, y1), (x2, y2)}` uniformly at random. If `x1 != x2`, `y1 != y2` and
//! neither `(x1, y2)` nor `(x2, y1)` is present, the pair is replaced by
//! `{(x1, y2), (x2, y1)}`; otherwise the chain holds. The proposal is
//! symmetric and acceptance is 0/1, so the uniform distribution is
//! stationary.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::types::{BipartiteDegreeSequence, BipartiteGraph, HypergraphInstance};

/// Deterministic greedy realisation. Right nodes are processed by decreasing
/// degree (ties: lower index first); each is joined to the left nodes of
/// largest residual degree (ties: lower index first).
pub fn initial_graph(bds: &BipartiteDegreeSequence) -> Result<BipartiteGraph> {
    let n = bds.n();
    let mut residual = bds.left().to_vec();
    let top = bds.d_max();
    let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); top + 1];
    for (x, &r) in residual.iter().enumerate() {
        buckets[r].insert(x);
    }
    let mut cur_max = top;

    let mut order: Vec<usize> = (0..bds.m()).collect();
    order.sort_by(|&a, &b| bds.right()[b].cmp(&bds.right()[a]).then(a.cmp(&b)));

    let mut nbrs = vec![Vec::new(); bds.m()];
    for y in order {
        let need = bds.right()[y];
        let mut chosen = Vec::with_capacity(need);
        let mut r = cur_max;
        while chosen.len() < need && r >= 1 {
            chosen.extend(buckets[r].iter().take(need - chosen.len()).copied());
            r -= 1;
        }
        if chosen.len() < need {
            return Err(Error::NonGraphical);
        }
        for &x in &chosen {
            buckets[residual[x]].remove(&x);
            residual[x] -= 1;
            buckets[residual[x]].insert(x);
        }
        while cur_max > 0 && buckets[cur_max].is_empty() {
            cur_max -= 1;
        }
        chosen.sort_unstable();
        nbrs[y] = chosen;
    }
    if residual.iter().any(|&r| r != 0) {
        return Err(Error::NonGraphical);
    }
    Ok(BipartiteGraph::from_sorted_unchecked(n, nbrs))
}

#[derive(Debug, Clone)]
enum Membership {
    Dense { bits: Vec<u64>, m: usize },
    Sparse(HashSet<u64>),
}

const DENSE_LIMIT: usize = 1 << 26;

impl Membership {
    fn new(n: usize, m: usize) -> Self {
        match n.checked_mul(m) {
            Some(cells) if cells <= DENSE_LIMIT => Membership::Dense {
                bits: vec![0; cells.div_ceil(64)],
                m,
            },
            _ => Membership::Sparse(HashSet::new()),
        }
    }

    fn key(x: usize, y: usize) -> u64 {
        ((x as u64) << 32) | y as u64
    }

    fn contains(&self, x: usize, y: usize) -> bool {
        match self {
            Membership::Dense { bits, m } => {
                let i = x * m + y;
                bits[i / 64] >> (i % 64) & 1 == 1
            }
            Membership::Sparse(set) => set.contains(&Self::key(x, y)),
        }
    }

    fn set(&mut self, x: usize, y: usize, present: bool) {
        match self {
            Membership::Dense { bits, m } => {
                let i = x * *m + y;
                if present {
                    bits[i / 64] |= 1 << (i % 64);
                } else {
                    bits[i / 64] &= !(1 << (i % 64));
                }
            }
            Membership::Sparse(set) => {
                if present {
                    set.insert(Self::key(x, y));
                } else {
                    set.remove(&Self::key(x, y));
                }
            }
        }
    }
}

/// Mutable chain state: a flat incidence array for `O(1)` uniform pair
/// selection and a membership table for `O(1)` adjacency queries.
#[derive(Debug, Clone)]
pub struct ChainState {
    n: usize,
    m: usize,
    incidences: Vec<(usize, usize)>,
    members: Membership,
    steps: u64,
    switches: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Switched,
    Held,
}

impl ChainState {
    pub fn new(graph: &BipartiteGraph) -> Self {
        let mut members = Membership::new(graph.n(), graph.m());
        let mut incidences = Vec::with_capacity(graph.edge_count());
        for (y, list) in graph.neighbourhoods().iter().enumerate() {
            for &x in list {
                incidences.push((x, y));
                members.set(x, y, true);
            }
        }
        Self {
            n: graph.n(),
            m: graph.m(),
            incidences,
            members,
            steps: 0,
            switches: 0,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn switches(&self) -> u64 {
        self.switches
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> StepOutcome {
        self.steps += 1;
        let e = self.incidences.len();
        if e < 2 {
            return StepOutcome::Held;
        }
        let i = rng.gen_range(0..e);
        let mut j = rng.gen_range(0..e - 1);
        if j >= i {
            j += 1;
        }
        self.try_switch(i, j)
    }

    /// Applies the switch for incidence positions `i` and `j` if it is legal.
    fn try_switch(&mut self, i: usize, j: usize) -> StepOutcome {
        let (x1, y1) = self.incidences[i];
        let (x2, y2) = self.incidences[j];
        if x1 == x2 || y1 == y2 || self.members.contains(x1, y2) || self.members.contains(x2, y1) {
            return StepOutcome::Held;
        }
        self.members.set(x1, y1, false);
        self.members.set(x2, y2, false);
        self.members.set(x1, y2, true);
        self.members.set(x2, y1, true);
        self.incidences[i] = (x1, y2);
        self.incidences[j] = (x2, y1);
        self.switches += 1;
        StepOutcome::Switched
    }

    pub fn run<R: Rng + ?Sized>(&mut self, steps: u64, rng: &mut R) {
        for _ in 0..steps {
            self.step(rng);
        }
    }

    pub fn graph(&self) -> BipartiteGraph {
        let mut nbrs = vec![Vec::new(); self.m];
        for &(x, y) in &self.incidences {
            nbrs[y].push(x);
        }
        for l in nbrs.iter_mut() {
            l.sort_unstable();
        }
        BipartiteGraph::from_sorted_unchecked(self.n, nbrs)
    }
}

pub fn switch_step<R: Rng + ?Sized>(state: &mut ChainState, rng: &mut R) -> StepOutcome {
    state.step(rng)
}

/// Runs `steps` switch steps from the greedy initial graph.
pub fn switch_sample<R: Rng + ?Sized>(
    inst: &HypergraphInstance,
    steps: u64,
    rng: &mut R,
) -> Result<BipartiteGraph> {
    let start = initial_graph(&inst.bipartite())?;
    let mut state = ChainState::new(&start);
    state.run(steps, rng);
    Ok(state.graph())
}

/// All graphs reachable in one step from `g`, one entry per unordered
/// incidence pair (holds map back to `g`).
pub fn one_step_successors(g: &BipartiteGraph) -> Vec<BipartiteGraph> {
    let incidences: Vec<(usize, usize)> = g
        .neighbourhoods()
        .iter()
        .enumerate()
        .flat_map(|(y, l)| l.iter().map(move |&x| (x, y)))
        .collect();
    let mut out = Vec::with_capacity(incidences.len() * incidences.len() / 2);
    for i in 0..incidences.len() {
        for j in i + 1..incidences.len() {
            let (x1, y1) = incidences[i];
            let (x2, y2) = incidences[j];
            if x1 == x2 || y1 == y2 || g.has_edge(x1, y2) || g.has_edge(x2, y1) {
                out.push(g.clone());
                continue;
            }
            let mut nbrs = g.neighbourhoods().to_vec();
            replace_sorted(&mut nbrs[y1], x1, x2);
            replace_sorted(&mut nbrs[y2], x2, x1);
            out.push(BipartiteGraph::from_sorted_unchecked(g.n(), nbrs));
        }
    }
    out
}

fn replace_sorted(list: &mut Vec<usize>, old: usize, new: usize) {
    let pos = list.binary_search(&old).expect("incidence present");
    list.remove(pos);
    let at = list.binary_search(&new).unwrap_err();
    list.insert(at, new);
}

/// Dense one-step transition matrix over an explicit state space.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    probs: Vec<Vec<f64>>,
}

/// Builds the exact transition matrix over `states`, which must be closed
/// under switches (e.g. all of `B(d, k)` from the enumeration oracle).
pub fn exact_transition_matrix(states: &[BipartiteGraph]) -> Result<TransitionMatrix> {
    let index: HashMap<&BipartiteGraph, usize> =
        states.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut probs = vec![vec![0.0; states.len()]; states.len()];
    for (a, g) in states.iter().enumerate() {
        let succ = one_step_successors(g);
        if succ.is_empty() {
            probs[a][a] = 1.0;
            continue;
        }
        let w = 1.0 / succ.len() as f64;
        for h in succ {
            let b = *index.get(&h).ok_or_else(|| {
                Error::PreconditionViolated("state list is not closed under switches".into())
            })?;
            probs[a][b] += w;
        }
    }
    Ok(TransitionMatrix { probs })
}

impl TransitionMatrix {
    pub fn size(&self) -> usize {
        self.probs.len()
    }

    pub fn prob(&self, from: usize, to: usize) -> f64 {
        self.probs[from][to]
    }

    /// `max_j |(pi P)_j - pi_j|` for the uniform vector `pi`.
    pub fn uniform_stationarity_residual(&self) -> f64 {
        let s = self.size();
        if s == 0 {
            return 0.0;
        }
        let u = 1.0 / s as f64;
        (0..s)
            .map(|j| {
                let col: f64 = (0..s).map(|i| u * self.probs[i][j]).sum();
                (col - u).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_row_sum_error(&self) -> f64 {
        self.probs
            .iter()
            .map(|r| (r.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_asymmetry(&self) -> f64 {
        let s = self.size();
        let mut worst: f64 = 0.0;
        for i in 0..s {
            for j in i + 1..s {
                worst = worst.max((self.probs[i][j] - self.probs[j][i]).abs());
            }
        }
        worst
    }

    /// Strong connectivity of the positive-transition graph: every state is
    /// reachable from state 0 and state 0 is reachable from every state.
    pub fn is_irreducible(&self) -> bool {
        let s = self.size();
        if s == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; s];
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(a) = queue.pop_front() {
                for (b, flag) in seen.iter_mut().enumerate() {
                    let p = if forward {
                        self.probs[a][b]
                    } else {
                        self.probs[b][a]
                    };
                    if p > 0.0 && !*flag {
                        *flag = true;
                        queue.push_back(b);
                    }
                }
            }
            seen.into_iter().all(|x| x)
        };
        reach(true) && reach(false)
    }
}
