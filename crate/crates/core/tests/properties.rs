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

mod common;

use proptest::prelude::*;

use hypersample::oracle::{enumerate_bipartite, DEFAULT_LIMIT};
use hypersample::rejection::{hypergraph_sampling, ConfigurationSampler, SwitchSampler};
use hypersample::switch_chain::{exact_transition_matrix, initial_graph, ChainState};
use hypersample::{phi, BipartiteDegreeSequence, HypergraphInstance, RngSeed};

use common::*;

fn instance() -> impl Strategy<Value = HypergraphInstance> {
    (prop::collection::vec(1usize..=3, 3..=6), 2usize..=3).prop_filter_map("valid", |(d, k)| {
        let total: usize = d.iter().sum();
        (total <= 12)
            .then(|| HypergraphInstance::new(d, k).ok())
            .flatten()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_matches_reference_counts(inst in instance()) {
        let right = vec![inst.k(); inst.edge_count()];
        let r = enumerate_bipartite(&inst.bipartite(), DEFAULT_LIMIT, false).unwrap();
        prop_assert_eq!(r.count_b as u128, count_b_dp(inst.degrees(), &right));
        let h = count_h_dp(inst.degrees(), inst.k());
        prop_assert_eq!(r.count_h as u128, h);
        prop_assert_eq!(r.count_b_star as u128, h * factorial(inst.edge_count()));
    }

    #[test]
    fn every_state_space_is_stationary_and_connected(inst in instance()) {
        let r = enumerate_bipartite(&inst.bipartite(), DEFAULT_LIMIT, true).unwrap();
        let states = r.states.unwrap();
        prop_assume!(!states.is_empty() && states.len() <= 400);
        let m = exact_transition_matrix(&states).unwrap();
        prop_assert!(m.uniform_stationarity_residual() < 1e-12);
        prop_assert!(m.max_row_sum_error() < 1e-12);
        prop_assert!(m.max_asymmetry() < 1e-12);
        prop_assert!(m.is_irreducible());
    }

    #[test]
    fn chain_preserves_degrees(inst in instance(), seed in any::<u64>(), steps in 0u64..500) {
        let bds = inst.bipartite();
        let start = initial_graph(&bds).unwrap();
        let mut chain = ChainState::new(&start);
        chain.run(steps, &mut RngSeed::new(seed, 0).rng());
        prop_assert!(chain.graph().realises(&bds));
        prop_assert_eq!(chain.steps(), steps);
    }

    #[test]
    fn samplers_return_hypergraphs_with_the_degrees(inst in instance(), seed in any::<u64>()) {
        let r = enumerate_bipartite(&inst.bipartite(), DEFAULT_LIMIT, false).unwrap();
        prop_assume!(r.count_b_star > 0);
        let mut rng = RngSeed::new(seed, 0).rng();
        let config = ConfigurationSampler::new(&inst);
        let (h, stats) = hypergraph_sampling(&inst, &config, &mut rng, None).unwrap();
        prop_assert_eq!(h.degrees(), inst.degrees().to_vec());
        prop_assert_eq!(stats.verdicts.iter().filter(|&&v| v).count(), 1);
        prop_assert_eq!(stats.verdicts.last(), Some(&true));

        let switch = SwitchSampler::new(&inst, 30).unwrap();
        let (h, _) = hypergraph_sampling(&inst, &switch, &mut rng, None).unwrap();
        prop_assert_eq!(h.degrees(), inst.degrees().to_vec());
    }

    #[test]
    fn phi_fibres_have_m_factorial_elements(inst in instance()) {
        let r = enumerate_bipartite(&inst.bipartite(), DEFAULT_LIMIT, true).unwrap();
        let mut fibres: std::collections::HashMap<_, u128> = std::collections::HashMap::new();
        for g in r.states.unwrap() {
            if let Ok(h) = phi(&g) {
                *fibres.entry(h).or_default() += 1;
            }
        }
        let m_fact = factorial(inst.edge_count());
        prop_assert!(fibres.values().all(|&c| c == m_fact));
    }
}

#[test]
fn irregular_right_degrees_match_reference() {
    for (left, right) in [
        (vec![2, 2, 1, 1], vec![1, 2, 3]),
        (vec![3, 2, 2, 1, 0], vec![4, 2, 2]),
        (vec![1, 1, 1, 1, 1], vec![2, 2, 1]),
    ] {
        let bds = BipartiteDegreeSequence::new(left.clone(), right.clone()).unwrap();
        let r = enumerate_bipartite(&bds, DEFAULT_LIMIT, false).unwrap();
        assert_eq!(r.count_b as u128, count_b_dp(&left, &right));
        assert_eq!(r.count_b as usize, brute_force_graphs(&left, &right).len());
    }
}
