//! Acceptance gate: every numbered claim of the library, one test each,
//! printing a single pass/fail line (run with `--nocapture` to see all
//! lines regardless of outcome).

use bogolat::verify;

const SEED: u64 = 2024;

fn gate(report: bogolat::CriterionReport) {
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_01_lax_pair_identities() {
    gate(verify::criterion_1(SEED));
}

#[test]
fn criterion_02_reconstruction_roundtrip() {
    gate(verify::criterion_2(SEED));
}

#[test]
fn criterion_03_determinant_closed_forms() {
    gate(verify::criterion_3(SEED));
}

#[test]
fn criterion_04_moment_evolution_ode() {
    gate(verify::criterion_4(SEED));
}

#[test]
fn criterion_05_cauchy_pipeline_vs_direct_ode() {
    gate(verify::criterion_5(SEED));
}

#[test]
fn criterion_06_miura_commuting_square_and_inverse() {
    gate(verify::criterion_6(SEED));
}

#[test]
fn criterion_07_determinant_transport() {
    gate(verify::criterion_7(SEED));
}

#[test]
fn criterion_08_worked_example() {
    gate(verify::criterion_8(SEED));
}

#[test]
fn criterion_09_first_integral_conservation() {
    gate(verify::criterion_9(SEED));
}

#[test]
fn criterion_10_finite_rank_recurrences() {
    gate(verify::criterion_10(SEED));
}

#[test]
fn criterion_11_third_moment_identity() {
    gate(verify::criterion_11(SEED));
}

#[test]
fn criterion_12_resolvent_vs_moment_series() {
    gate(verify::criterion_12(SEED));
}
