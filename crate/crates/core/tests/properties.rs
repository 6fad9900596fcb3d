mod common;

use common::*;

const CASES: u32 = 200;

fn ok(o: Outcome) {
    if let Err(e) = o {
        panic!("{e}");
    }
}

#[test]
fn exp_and_log_invert_each_other() {
    KERNEL_PRIMES.iter().for_each(|&p| ok(exp_log_round_trip(p, CASES)));
}

#[test]
fn log_is_additive() {
    KERNEL_PRIMES.iter().for_each(|&p| ok(log_additivity(p, CASES)));
}

#[test]
fn teichmuller_is_a_multiplicative_root_of_unity() {
    KERNEL_PRIMES.iter().for_each(|&p| ok(teichmuller_laws(p, CASES)));
}

#[test]
fn reported_precision_is_honest() {
    KERNEL_PRIMES.iter().for_each(|&p| ok(precision_honesty(p, CASES)));
}

#[test]
fn series_matches_special_values() {
    KERNEL_PRIMES.iter().for_each(|&p| ok(special_values(p)));
}

#[test]
fn series_is_independent_of_d() {
    KERNEL_PRIMES.iter().for_each(|&p| ok(d_independence(p)));
}

#[test]
fn odd_characters_vanish() {
    KERNEL_PRIMES.iter().for_each(|&p| ok(odd_vanishing(p)));
}

#[test]
fn values_are_integral() {
    KERNEL_PRIMES.iter().for_each(|&p| ok(integrality(p)));
}

#[test]
fn kummer_congruences() {
    [7u64, 11, 13].iter().for_each(|&p| ok(kummer(p)));
}

#[test]
fn operator_quotient_and_l_value_agree() {
    ok(three_way(7));
    ok(three_way(11));
}

#[test]
fn power_sum_identity() {
    let n = power_sums().unwrap();
    assert!(n >= 20, "only {n} cells");
}

#[test]
fn v_p_congruences() {
    ok(vpi_upto(50));
}
