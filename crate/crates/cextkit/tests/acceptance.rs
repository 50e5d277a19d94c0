//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use cextkit::caps::Caps;
use cextkit::verify::{self, CriterionOutcome};

fn check(outcome: cextkit::Result<CriterionOutcome>) {
    let outcome = outcome.expect("criterion ran to completion");
    println!(
        "criterion {:>2}: {}  {}",
        outcome.id,
        if outcome.pass { "PASS" } else { "FAIL" },
        outcome.description
    );
    for d in &outcome.details {
        println!("              {d}");
    }
    assert!(outcome.pass, "criterion {} failed", outcome.id);
}

#[test]
fn criterion_01_main_theorem_grid() {
    check(verify::criterion_1_main_theorem(&Caps::default()));
}

#[test]
fn criterion_02_torsor_equivalence() {
    check(verify::criterion_2_torsor_equivalence(&Caps::default()));
}

#[test]
fn criterion_03_higher_centrality() {
    check(verify::criterion_3_higher_centrality(&Caps::default()));
}

#[test]
fn criterion_04_centrality_sum() {
    check(verify::criterion_4_centrality_sum(&Caps::default()));
}

#[test]
fn criterion_05_centralisation() {
    check(verify::criterion_5_centralisation(&Caps::default()));
}

#[test]
fn criterion_06_k_objects() {
    check(verify::criterion_6_k_objects(&Caps::default()));
}

#[test]
fn criterion_07_direction_calculus() {
    check(verify::criterion_7_direction_calculus(&Caps::default()));
}

#[test]
fn criterion_08_simplicial_approximation() {
    check(verify::criterion_8_simplicial_approximation(&Caps::default()));
}

#[test]
fn criterion_09_composition_identities() {
    check(verify::criterion_9_composition_identities(&Caps::default()));
}

#[test]
fn criterion_10_oracle_selfcheck() {
    check(verify::criterion_10_oracle_selfcheck(&Caps::default()));
}
