mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        check_ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), x in point_strategy()) {
        check_evaluation_homomorphism(&a, &b, &x)?;
    }

    #[test]
    fn modular_evaluation_matches_exact(a in poly_strategy(), x in integer_point_strategy(), p in any::<u64>()) {
        check_mod_p_evaluation(&a, &x, p)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn one_connections_match_spanning_subgraphs(g in graph_strategy(7, 2.0)) {
        check_one_connection_counts(&g)?;
    }

    #[test]
    fn cycle_families_match_subsets(g in graph_strategy(7, 2.5)) {
        check_family_count(&g)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn prune_is_order_independent(g in graph_strategy(4, 1.5), d in 1usize..=2) {
        check_prune_order_independence(&g, d)?;
    }

    #[test]
    fn jacobian_matches_difference_quotients(g in graph_strategy(4, 1.5), seed in any::<u64>()) {
        check_jacobian_finite_difference(&g, seed)?;
    }

    #[test]
    fn rank_grows_with_trials(g in graph_strategy(5, 1.5), seed in any::<u64>()) {
        check_rank_monotone(&g, seed)?;
    }
}
