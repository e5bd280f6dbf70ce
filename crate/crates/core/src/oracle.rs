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

//! Exhaustive enumeration of `B(d, k)` on tiny instances.
//!
//! Right nodes are filled one at a time in nonincreasing degree order. After
//! each choice the residual left degrees are tested against the remaining
//! right degrees with the Gale-Ryser condition, so every branch that survives
//! ends in at least one graph. Neighbourhoods are held as `u128` bit masks,
//! which bounds the number of left nodes at 128.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, RngCore};

use crate::bounds::{binomial, gmw_log_count};
use crate::error::{Error, Result};
use crate::rejection::BipartiteSampler;
use crate::types::{BipartiteDegreeSequence, BipartiteGraph, HypergraphInstance};

/// Default cap on visited search nodes.
pub const DEFAULT_LIMIT: u64 = 10_000_000;

const MAX_LEFT: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub count_b: u64,
    pub count_b_star: u64,
    /// `count_b_star` divided by the number of right-node relabellings that
    /// preserve the right degrees (`m!` when all right degrees agree).
    pub count_h: u64,
    pub p_simple: BigRational,
    /// All of `B(d, k)` in enumeration order, when requested.
    pub states: Option<Vec<BipartiteGraph>>,
}

struct Search<'a> {
    n: usize,
    order: Vec<usize>,
    right: &'a [usize],
    residual: Vec<usize>,
    chosen: Vec<u128>,
    visited: u64,
    limit: u64,
    count_b: u64,
    count_b_star: u64,
    states: Option<Vec<BipartiteGraph>>,
}

impl Search<'_> {
    /// Gale-Ryser on the residual: the right degrees still to place (in
    /// nonincreasing order) against the residual left degrees.
    fn feasible(&self, depth: usize) -> bool {
        let rest = &self.order[depth..];
        let mut need = 0usize;
        for (t, &j) in rest.iter().enumerate() {
            need += self.right[j];
            let t = t + 1;
            let have: usize = self.residual.iter().map(|&r| r.min(t)).sum();
            if need > have {
                return false;
            }
        }
        let left: usize = self.residual.iter().sum();
        left == need
    }

    fn descend(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            self.count_b += 1;
            let simple = {
                let mut masks = self.chosen.clone();
                masks.sort_unstable();
                masks.windows(2).all(|w| w[0] != w[1])
            };
            if simple {
                self.count_b_star += 1;
            }
            if let Some(states) = self.states.as_mut() {
                let mut nbrs = vec![Vec::new(); self.order.len()];
                for (pos, &j) in self.order.iter().enumerate() {
                    nbrs[j] = mask_to_list(self.chosen[pos]);
                }
                states.push(BipartiteGraph::from_sorted_unchecked(self.n, nbrs));
            }
            return Ok(());
        }
        let size = self.right[self.order[depth]];
        let candidates: Vec<usize> = (0..self.n).filter(|&x| self.residual[x] > 0).collect();
        let mut pick = Vec::with_capacity(size);
        self.choose(depth, &candidates, 0, size, &mut pick)
    }

    fn choose(
        &mut self,
        depth: usize,
        candidates: &[usize],
        from: usize,
        size: usize,
        pick: &mut Vec<usize>,
    ) -> Result<()> {
        if pick.len() == size {
            self.visited += 1;
            if self.visited > self.limit {
                return Err(Error::TooLarge { limit: self.limit });
            }
            for &x in pick.iter() {
                self.residual[x] -= 1;
            }
            if self.feasible(depth + 1) {
                self.chosen
                    .push(pick.iter().fold(0u128, |m, &x| m | 1 << x));
                self.descend(depth + 1)?;
                self.chosen.pop();
            }
            for &x in pick.iter() {
                self.residual[x] += 1;
            }
            return Ok(());
        }
        let missing = size - pick.len();
        for i in from..candidates.len() {
            if candidates.len() - i < missing {
                break;
            }
            pick.push(candidates[i]);
            self.choose(depth, candidates, i + 1, size, pick)?;
            pick.pop();
        }
        Ok(())
    }
}

fn mask_to_list(mut mask: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

fn factorial(a: usize) -> u128 {
    (1..=a as u128).product()
}

/// Enumerates `B(d, k)` exactly. Fails with [`Error::TooLarge`] once more
/// than `limit` candidate neighbourhoods have been tried, or up front when
/// the asymptotic count already exceeds a few times the limit.
pub fn enumerate_bipartite(
    bds: &BipartiteDegreeSequence,
    limit: u64,
    keep_states: bool,
) -> Result<OracleResult> {
    if bds.n() > MAX_LEFT {
        return Err(Error::TooLarge { limit });
    }
    let estimate = gmw_log_count(bds).value;
    if estimate.is_finite() && estimate > (4.0 * limit as f64).ln() {
        return Err(Error::TooLarge { limit });
    }
    let right = bds.right();
    let mut order: Vec<usize> = (0..right.len()).collect();
    order.sort_by(|&a, &b| right[b].cmp(&right[a]).then(a.cmp(&b)));
    let mut search = Search {
        n: bds.n(),
        order,
        right,
        residual: bds.left().to_vec(),
        chosen: Vec::with_capacity(right.len()),
        visited: 0,
        limit,
        count_b: 0,
        count_b_star: 0,
        states: keep_states.then(Vec::new),
    };
    if search.feasible(0) {
        search.descend(0)?;
    }

    let mut multiplicity: HashMap<usize, usize> = HashMap::new();
    for &k in right {
        *multiplicity.entry(k).or_default() += 1;
    }
    let relabellings: u128 = multiplicity.values().map(|&c| factorial(c)).product();
    debug_assert_eq!(search.count_b_star as u128 % relabellings, 0);
    let count_h = (search.count_b_star as u128 / relabellings) as u64;
    let p_simple = if search.count_b == 0 {
        BigRational::zero()
    } else {
        BigRational::new(search.count_b_star.into(), search.count_b.into())
    };
    Ok(OracleResult {
        count_b: search.count_b,
        count_b_star: search.count_b_star,
        count_h,
        p_simple,
        states: search.states,
    })
}

/// Exact neighbourhood constants of a fully enumerated instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactConstants {
    /// `C(n, k)` times the largest probability of any single neighbourhood
    /// event `N(y) = W`.
    pub c1: BigRational,
    /// Largest ratio `P(N(y') = W | N(y) = W) / P(N(y') = W)` over `y != y'`
    /// with both events of positive probability; zero when no such pair has
    /// a positive joint probability.
    pub c2: BigRational,
    /// Some `k`-subset never occurs as a neighbourhood, so the maximum for
    /// `c2` ranges over a strict subset of the events.
    pub degenerate: bool,
}

pub fn exact_constants(inst: &HypergraphInstance, limit: u64) -> Result<ExactConstants> {
    let result = enumerate_bipartite(&inst.bipartite(), limit, true)?;
    let states = result.states.unwrap_or_default();
    if states.is_empty() {
        return Err(Error::EmptySpace);
    }
    let m = inst.edge_count();
    let total = BigInt::from(states.len());

    let masks: Vec<Vec<u128>> = states
        .iter()
        .map(|g| {
            g.neighbourhoods()
                .iter()
                .map(|l| l.iter().fold(0u128, |acc, &x| acc | 1 << x))
                .collect()
        })
        .collect();

    let mut single: HashMap<(usize, u128), u64> = HashMap::new();
    let mut joint: HashMap<(usize, usize, u128), u64> = HashMap::new();
    for g in &masks {
        for (y, &w) in g.iter().enumerate() {
            *single.entry((y, w)).or_default() += 1;
            for (y2, &w2) in g.iter().enumerate() {
                if y2 != y && w2 == w {
                    *joint.entry((y, y2, w)).or_default() += 1;
                }
            }
        }
    }

    let max_single = single.values().copied().max().unwrap_or(0);
    let choose = BigInt::from(binomial(inst.n() as u64, inst.k() as u64));
    let c1 = BigRational::new(choose * BigInt::from(max_single), total.clone());

    // P(N(y') = W | N(y) = W) / P(N(y') = W) = joint |B| / (n_y n_y').
    // Pairs with zero joint count contribute zero, so only the joint table
    // needs scanning.
    let mut c2 = BigRational::zero();
    for (&(y, y2, w), &both) in &joint {
        let ratio = BigRational::new(
            BigInt::from(both) * &total,
            BigInt::from(single[&(y, w)]) * BigInt::from(single[&(y2, w)]),
        );
        if ratio > c2 {
            c2 = ratio;
        }
    }

    let distinct_events = single
        .keys()
        .map(|&(_, w)| w)
        .collect::<std::collections::HashSet<_>>();
    let subsets = binomial(inst.n() as u64, inst.k() as u64);
    let degenerate = m > 0 && BigInt::from(distinct_events.len()) < BigInt::from(subsets);
    Ok(ExactConstants { c1, c2, degenerate })
}

/// `1 - c1 c2 C(m, 2) / C(n, k)`, the lower bound on `P(B*)` implied by the
/// exact constants.
pub fn constants_bound(inst: &HypergraphInstance, constants: &ExactConstants) -> BigRational {
    let m = inst.edge_count() as u64;
    let pairs = BigInt::from(binomial(m, 2));
    let subsets = BigInt::from(binomial(inst.n() as u64, inst.k() as u64));
    BigRational::one() - &constants.c1 * &constants.c2 * BigRational::new(pairs, subsets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonotonicityCheck {
    pub count_before: u64,
    pub count_after: u64,
    pub holds: bool,
}

/// Moves one unit of degree from left node `g` to left node `h` (0-based)
/// and compares `|B(d, k)|` before and after.
pub fn verify_proposition_balanced(
    bds: &BipartiteDegreeSequence,
    g: usize,
    h: usize,
    limit: u64,
) -> Result<MonotonicityCheck> {
    let n = bds.n();
    if g >= n || h >= n {
        return Err(Error::PreconditionViolated(format!(
            "node index out of range for {n} left nodes"
        )));
    }
    let (dg, dh) = (bds.left()[g], bds.left()[h]);
    if g == h || dg < dh + 2 {
        return Err(Error::PreconditionViolated(format!(
            "need d_g >= d_h + 2, got d_g = {dg}, d_h = {dh}"
        )));
    }
    let before = enumerate_bipartite(bds, limit, false)?.count_b;
    let after = enumerate_bipartite(&bds.shift_left_degree(g, h), limit, false)?.count_b;
    Ok(MonotonicityCheck {
        count_before: before,
        count_after: after,
        holds: before <= after,
    })
}

/// Uniform draws from a materialised state list.
#[derive(Debug, Clone)]
pub struct UniformListSampler {
    states: Vec<BipartiteGraph>,
}

impl UniformListSampler {
    pub fn new(states: Vec<BipartiteGraph>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptySpace);
        }
        Ok(Self { states })
    }

    pub fn states(&self) -> &[BipartiteGraph] {
        &self.states
    }
}

impl BipartiteSampler for UniformListSampler {
    fn name(&self) -> &str {
        "oracle"
    }

    fn tv_bound(&self) -> Option<f64> {
        Some(0.0)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<BipartiteGraph> {
        Ok(self.states[rng.gen_range(0..self.states.len())].clone())
    }
}

/// Exactly uniform sampler on `B(d, k)` backed by full enumeration.
pub fn exact_uniform_handle(inst: &HypergraphInstance, limit: u64) -> Result<UniformListSampler> {
    let result = enumerate_bipartite(&inst.bipartite(), limit, true)?;
    UniformListSampler::new(result.states.unwrap_or_default())
}

/// Draws `states[i]` with probability proportional to `weights[i]`.
#[derive(Debug, Clone)]
pub struct WeightedListSampler {
    states: Vec<BipartiteGraph>,
    weights: Vec<u64>,
    index: WeightedIndex<u64>,
    tv: f64,
}

impl WeightedListSampler {
    pub fn new(states: Vec<BipartiteGraph>, weights: Vec<u64>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::EmptySpace);
        }
        if states.len() != weights.len() {
            return Err(Error::PreconditionViolated("one weight per state".into()));
        }
        let index = WeightedIndex::new(&weights)
            .map_err(|e| Error::PreconditionViolated(format!("bad weights: {e}")))?;
        let sum: u64 = weights.iter().sum();
        let len = weights.len() as f64;
        let tv = 0.5
            * weights
                .iter()
                .map(|&w| (w as f64 / sum as f64 - 1.0 / len).abs())
                .sum::<f64>();
        Ok(Self {
            states,
            weights,
            index,
            tv,
        })
    }

    pub fn states(&self) -> &[BipartiteGraph] {
        &self.states
    }

    /// Exact output law as rationals.
    pub fn law(&self) -> Vec<BigRational> {
        let sum: u64 = self.weights.iter().sum();
        self.weights
            .iter()
            .map(|&w| BigRational::new(w.into(), sum.into()))
            .collect()
    }
}

impl BipartiteSampler for WeightedListSampler {
    fn name(&self) -> &str {
        "weighted"
    }

    fn tv_bound(&self) -> Option<f64> {
        Some(self.tv)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Result<BipartiteGraph> {
        Ok(self.states[self.index.sample(rng)].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicity::is_h_simple;
    use crate::types::RngSeed;
    use proptest::prelude::*;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn bds(left: &[usize], right: &[usize]) -> BipartiteDegreeSequence {
        BipartiteDegreeSequence::new(left.to_vec(), right.to_vec()).unwrap()
    }

    #[test]
    fn counts_on_tiny_instances() {
        let r = enumerate_bipartite(&bds(&[1; 6], &[3, 3]), DEFAULT_LIMIT, false).unwrap();
        assert_eq!((r.count_b, r.count_b_star, r.count_h), (20, 20, 10));
        assert_eq!(r.p_simple, BigRational::one());

        let r = enumerate_bipartite(&bds(&[2, 2, 2], &[3, 3]), DEFAULT_LIMIT, false).unwrap();
        assert_eq!((r.count_b, r.count_b_star, r.count_h), (1, 0, 0));
        assert_eq!(r.p_simple, BigRational::zero());

        let r = enumerate_bipartite(&bds(&[3; 4], &[3; 4]), DEFAULT_LIMIT, false).unwrap();
        assert_eq!((r.count_b, r.count_b_star, r.count_h), (24, 24, 1));
    }

    #[test]
    fn empty_space() {
        let r = enumerate_bipartite(&bds(&[3, 1, 1, 1], &[3, 3]), DEFAULT_LIMIT, true).unwrap();
        assert_eq!(r.count_b, 0);
        assert_eq!(r.states, Some(vec![]));
        let inst = HypergraphInstance::new(vec![3, 1, 1, 1], 3);
        // d_max > m is rejected by the instance itself.
        assert!(inst.is_err());
    }

    #[test]
    fn limit_is_enforced() {
        let r = enumerate_bipartite(&bds(&[1; 12], &[3; 4]), 100, false);
        assert_eq!(r, Err(Error::TooLarge { limit: 100 }));
    }

    #[test]
    fn states_are_distinct_and_valid() {
        let b = bds(&[2, 2, 2, 1, 1, 1], &[3, 3, 3]);
        let r = enumerate_bipartite(&b, DEFAULT_LIMIT, true).unwrap();
        let states = r.states.unwrap();
        assert_eq!(states.len() as u64, r.count_b);
        let unique: std::collections::HashSet<_> = states.iter().collect();
        assert_eq!(unique.len(), states.len());
        assert!(states.iter().all(|g| g.realises(&b)));
        let simple = states.iter().filter(|g| is_h_simple(g)).count() as u64;
        assert_eq!(simple, r.count_b_star);
        assert_eq!(r.count_b_star % 6, 0);
    }

    #[test]
    fn constants_examples() {
        let inst = HypergraphInstance::new(vec![1; 6], 3).unwrap();
        let c = exact_constants(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!((c.c1, c.c2), (BigRational::one(), BigRational::zero()));
        assert!(!c.degenerate);

        let inst = HypergraphInstance::new(vec![2, 2, 2], 3).unwrap();
        let c = exact_constants(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!((c.c1, c.c2), (BigRational::one(), BigRational::one()));

        let inst = HypergraphInstance::new(vec![2; 6], 3).unwrap();
        let c = exact_constants(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!(c.c1, BigRational::one());
    }

    #[test]
    fn proposition_examples() {
        let b = bds(&[3, 1, 1, 1], &[3, 3]);
        let r = verify_proposition_balanced(&b, 0, 1, DEFAULT_LIMIT).unwrap();
        assert_eq!((r.count_before, r.count_after, r.holds), (0, 2, true));

        let b = bds(&[2, 2, 1, 1], &[3, 3]);
        assert!(matches!(
            verify_proposition_balanced(&b, 0, 1, DEFAULT_LIMIT),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn uniform_handle_frequencies() {
        let inst = HypergraphInstance::new(vec![1; 6], 3).unwrap();
        let handle = exact_uniform_handle(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!(handle.states().len(), 20);
        let mut rng = RngSeed::new(3, 0).rng();
        let mut counts: HashMap<BipartiteGraph, u64> = HashMap::new();
        let draws = 1_000_000;
        for _ in 0..draws {
            *counts.entry(handle.sample(&mut rng).unwrap()).or_default() += 1;
        }
        assert_eq!(counts.len(), 20);
        for &c in counts.values() {
            assert!((c as f64 / draws as f64 - 0.05).abs() < 0.005);
        }

        let inst = HypergraphInstance::new(vec![2, 2, 2], 3).unwrap();
        let handle = exact_uniform_handle(&inst, DEFAULT_LIMIT).unwrap();
        let g = handle.sample(&mut rng).unwrap();
        assert_eq!(g.neighbourhoods(), &[vec![0, 1, 2], vec![0, 1, 2]]);
    }

    #[test]
    fn weighted_law_and_tv() {
        let inst = HypergraphInstance::new(vec![1; 6], 3).unwrap();
        let states = exact_uniform_handle(&inst, DEFAULT_LIMIT)
            .unwrap()
            .states()
            .to_vec();
        let mut weights = vec![1u64; 20];
        weights[0] = 21;
        let s = WeightedListSampler::new(states, weights).unwrap();
        assert_eq!(s.law()[0], ratio(21, 40));
        // 1/2 (|21/40 - 1/20| + 19 |1/40 - 1/20|) = 19/40.
        assert!((s.tv_bound().unwrap() - 19.0 / 40.0).abs() < 1e-12);
    }

    fn sorted_sequence() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(1usize..=3, 3..=6).prop_filter_map("k | M", |mut d| {
            d.sort_unstable_by(|a, b| b.cmp(a));
            let total: usize = d.iter().sum();
            (total.is_multiple_of(3) && total <= 12).then_some(d)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn counts_ignore_left_order(d in sorted_sequence(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            let m = d.iter().sum::<usize>() / 3;
            let a = enumerate_bipartite(&bds(&d, &vec![3; m]), DEFAULT_LIMIT, false).unwrap();
            let mut shuffled = d.clone();
            shuffled.shuffle(&mut RngSeed::new(seed, 0).rng());
            let b = enumerate_bipartite(&bds(&shuffled, &vec![3; m]), DEFAULT_LIMIT, false).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn star_count_is_multiple_of_m_factorial(d in sorted_sequence()) {
            let m = d.iter().sum::<usize>() / 3;
            let r = enumerate_bipartite(&bds(&d, &vec![3; m]), DEFAULT_LIMIT, false).unwrap();
            prop_assert!(r.count_b_star <= r.count_b);
            prop_assert_eq!(r.count_b_star as u128 % factorial(m), 0);
            prop_assert_eq!(r.count_h as u128 * factorial(m), r.count_b_star as u128);
        }
    }
}
