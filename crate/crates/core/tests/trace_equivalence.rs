mod common;

use common::{check_trace, trace_config};
use proptest::prelude::*;

#[test]
fn two_node_mtoa_l_twenty_slots() {
    for seed in 0..50 {
        check_trace(false, 2, 1, 0.9, 0.05, None, 20, seed).unwrap();
    }
}

#[test]
fn two_node_mtoa_g_twenty_slots() {
    for seed in 0..50 {
        check_trace(true, 2, 1, 0.9, 0.0, Some(3), 20, seed).unwrap();
    }
}

#[test]
fn long_single_run_matches() {
    check_trace(false, 4, 3, 0.9, 0.05, None, 5_000, 17).unwrap();
    check_trace(true, 4, 3, 0.9, 0.0, Some(5), 5_000, 17).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_small_configs_match((global, n, l, alpha, q_th, window, t, seed) in trace_config()) {
        prop_assert_eq!(check_trace(global, n, l, alpha, q_th, window, t, seed), Ok(()));
    }
}
