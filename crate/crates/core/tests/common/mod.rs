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

//! Reference computations that share no code with the library: plain
//! product enumeration, memoised counting recursions and a direct switch
//! transition table.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

/// All `r`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Every bipartite graph with the given degrees, by trying every choice of
/// neighbourhood for every right node. Graphs are lists of neighbourhoods.
pub fn brute_force_graphs(left: &[usize], right: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let n = left.len();
    let choices: Vec<Vec<Vec<usize>>> = right.iter().map(|&k| subsets(n, k)).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Vec<usize>> = Vec::with_capacity(right.len());
    let mut deg = vec![0usize; n];
    fn rec(
        j: usize,
        choices: &[Vec<Vec<usize>>],
        left: &[usize],
        cur: &mut Vec<Vec<usize>>,
        deg: &mut [usize],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if j == choices.len() {
            if deg == left {
                out.push(cur.clone());
            }
            return;
        }
        for s in &choices[j] {
            if s.iter().any(|&x| deg[x] >= left[x]) {
                continue;
            }
            for &x in s {
                deg[x] += 1;
            }
            cur.push(s.clone());
            rec(j + 1, choices, left, cur, deg, out);
            cur.pop();
            for &x in s {
                deg[x] -= 1;
            }
        }
    }
    rec(0, &choices, left, &mut cur, &mut deg, &mut out);
    out
}

pub fn has_distinct_neighbourhoods(g: &[Vec<usize>]) -> bool {
    let set: BTreeSet<&Vec<usize>> = g.iter().collect();
    set.len() == g.len()
}

/// `|B(d, k)|` by memoised recursion over right nodes on the residual
/// left degrees.
pub fn count_b_dp(left: &[usize], right: &[usize]) -> u128 {
    fn rec(
        j: usize,
        residual: &mut Vec<usize>,
        right: &[usize],
        memo: &mut HashMap<(usize, Vec<usize>), u128>,
    ) -> u128 {
        if j == right.len() {
            return residual.iter().all(|&r| r == 0) as u128;
        }
        if let Some(&v) = memo.get(&(j, residual.clone())) {
            return v;
        }
        let mut total = 0;
        for s in subsets(residual.len(), right[j]) {
            if s.iter().all(|&x| residual[x] > 0) {
                for &x in &s {
                    residual[x] -= 1;
                }
                total += rec(j + 1, residual, right, memo);
                for &x in &s {
                    residual[x] += 1;
                }
            }
        }
        memo.insert((j, residual.clone()), total);
        total
    }
    rec(0, &mut left.to_vec(), right, &mut HashMap::new())
}

/// `|H_k(d)|`: sets of distinct `k`-subsets covering node `i` exactly
/// `d_i` times, by include/exclude recursion over all `k`-subsets.
pub fn count_h_dp(d: &[usize], k: usize) -> u128 {
    let all = subsets(d.len(), k);
    fn rec(
        i: usize,
        residual: &mut Vec<usize>,
        all: &[Vec<usize>],
        memo: &mut HashMap<(usize, Vec<usize>), u128>,
    ) -> u128 {
        if residual.iter().all(|&r| r == 0) {
            return 1;
        }
        if i == all.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(i, residual.clone())) {
            return v;
        }
        let mut total = rec(i + 1, residual, all, memo);
        if all[i].iter().all(|&x| residual[x] > 0) {
            for &x in &all[i] {
                residual[x] -= 1;
            }
            total += rec(i + 1, residual, all, memo);
            for &x in &all[i] {
                residual[x] += 1;
            }
        }
        memo.insert((i, residual.clone()), total);
        total
    }
    rec(0, &mut d.to_vec(), &all, &mut HashMap::new())
}

/// Every simple `k`-uniform hypergraph with degrees `d`, each as its sorted
/// edge list.
pub fn brute_force_hypergraphs(d: &[usize], k: usize) -> Vec<Vec<Vec<usize>>> {
    let all = subsets(d.len(), k);
    let mut out = Vec::new();
    fn rec(
        i: usize,
        residual: &mut Vec<usize>,
        all: &[Vec<usize>],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if residual.iter().all(|&r| r == 0) {
            out.push(cur.clone());
            return;
        }
        if i == all.len() {
            return;
        }
        if all[i].iter().all(|&x| residual[x] > 0) {
            for &x in &all[i] {
                residual[x] -= 1;
            }
            cur.push(all[i].clone());
            rec(i + 1, residual, all, cur, out);
            cur.pop();
            for &x in &all[i] {
                residual[x] += 1;
            }
        }
        rec(i + 1, residual, all, cur, out);
    }
    rec(0, &mut d.to_vec(), &all, &mut Vec::new(), &mut out);
    out
}

/// Same text as the library's canonical encoding: 1-based ids separated by
/// spaces, groups separated by `|`.
pub fn encode(groups: &[Vec<usize>]) -> String {
    groups
        .iter()
        .map(|g| {
            g.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("|")
}

/// Row-stochastic switch transition table over `states`: each unordered
/// pair of incidences is proposed with equal probability; proposals that
/// share an endpoint or would duplicate an incidence leave the state alone.
pub fn switch_table(states: &[Vec<Vec<usize>>]) -> Vec<Vec<f64>> {
    let index: HashMap<&Vec<Vec<usize>>, usize> =
        states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut table = vec![vec![0.0; states.len()]; states.len()];
    for (a, g) in states.iter().enumerate() {
        let inc: Vec<(usize, usize)> = g
            .iter()
            .enumerate()
            .flat_map(|(y, l)| l.iter().map(move |&x| (x, y)))
            .collect();
        let pairs = inc.len() * (inc.len().saturating_sub(1)) / 2;
        if pairs == 0 {
            table[a][a] = 1.0;
            continue;
        }
        let w = 1.0 / pairs as f64;
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                let ((x1, y1), (x2, y2)) = (inc[i], inc[j]);
                let valid = x1 != x2 && y1 != y2 && !g[y2].contains(&x1) && !g[y1].contains(&x2);
                if !valid {
                    table[a][a] += w;
                    continue;
                }
                let mut h = g.clone();
                h[y1].retain(|&x| x != x1);
                h[y1].push(x2);
                h[y1].sort_unstable();
                h[y2].retain(|&x| x != x2);
                h[y2].push(x1);
                h[y2].sort_unstable();
                table[a][index[&h]] += w;
            }
        }
    }
    table
}
