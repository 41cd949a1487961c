//! The acceptance suite: runs every criterion of the pinned regression
//! ledger and prints one pass/fail line per criterion. This is the same
//! battery behind `qci paper`.

use qci_cli::paper::{self, CriterionResult};

const PRIME: u64 = 101;
const SEED: u64 = 7;

fn check(result: CriterionResult) {
    println!(
        "[{}] criterion {:>2}: {}\n      {}",
        if result.passed { "PASS" } else { "FAIL" },
        result.id,
        result.name,
        result.details
    );
    assert!(
        result.passed,
        "criterion {} failed: {}",
        result.id, result.details
    );
}

#[test]
fn criterion_01_hilbert_series_over_four_fields() {
    check(paper::criterion_1());
}

#[test]
fn criterion_02_groebner_fixed_point_and_standard_monomials() {
    check(paper::criterion_2(PRIME));
}

#[test]
fn criterion_03_koszul_homology_dimensions() {
    check(paper::criterion_3(PRIME));
}

#[test]
fn criterion_04_qci_certificate_and_two_generated_criterion() {
    check(paper::criterion_4(PRIME));
}

#[test]
fn criterion_05_no_exact_zero_divisors_inside_the_ideal() {
    check(paper::criterion_5());
}

#[test]
fn criterion_06_homotopy_layer_and_non_embeddedness() {
    check(paper::criterion_6(PRIME));
}

#[test]
fn criterion_07_ambient_betti_numbers_and_koszulness() {
    check(paper::criterion_7());
}

#[test]
fn criterion_08_tate_betti_pattern() {
    check(paper::criterion_8(PRIME));
}

#[test]
fn criterion_09_loewy_length_bounds() {
    check(paper::criterion_9(PRIME));
}

#[test]
fn criterion_10_generic_quadrics_experiment() {
    check(paper::criterion_10(PRIME, SEED));
}

#[test]
fn criterion_11_witness_matrices() {
    check(paper::criterion_11(PRIME));
}

#[test]
fn criterion_12_randomized_invariant_battery() {
    check(paper::criterion_12(SEED));
}
