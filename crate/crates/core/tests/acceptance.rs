//! Acceptance suite: runs every check from `yeelab_core::verify` as its own
//! test and prints one pass/fail line per criterion.
//!
//! The same checks back the CLI's `verify` subcommand; this target exists so
//! `cargo test` gates on them.

use yeelab_core::verify;

fn run(name: &str) {
    let outcomes = verify::run_all(Some(name));
    assert_eq!(outcomes.len(), 1, "unknown check name {name}");
    let o = &outcomes[0];
    println!(
        "{} {} ({:.2} s): {}",
        if o.passed { "PASS" } else { "FAIL" },
        o.name,
        o.seconds,
        o.detail
    );
    assert!(o.passed, "{}: {}", o.name, o.detail);
}

#[test]
fn all_checks_are_covered() {
    // every registered check has a dedicated test below
    let names: Vec<&str> = verify::checks().into_iter().map(|(n, _, _)| n).collect();
    assert_eq!(
        names,
        vec![
            "exact-theory",
            "convergence",
            "simulation-crosscheck",
            "sign-laws",
            "figure-spot-values",
            "dispersion",
            "tfsf-cleanliness",
            "high-contrast",
        ]
    );
}

#[test]
fn criterion_1_exact_theory() {
    run("exact-theory");
}

#[test]
fn criterion_2_convergence() {
    run("convergence");
}

#[test]
fn criterion_3_simulation_crosscheck() {
    run("simulation-crosscheck");
}

#[test]
fn criterion_4_sign_laws() {
    run("sign-laws");
}

#[test]
fn criterion_5_figure_spot_values() {
    run("figure-spot-values");
}

#[test]
fn criterion_6_dispersion() {
    run("dispersion");
}

#[test]
fn criterion_7_tfsf_cleanliness() {
    run("tfsf-cleanliness");
}

#[test]
fn criterion_8_high_contrast() {
    run("high-contrast");
}
