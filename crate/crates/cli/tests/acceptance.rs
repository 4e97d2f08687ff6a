//! One PASS/FAIL line per acceptance criterion. Every comparison is exact
//! (integers and rationals, tolerance 0); random parts use the default seed.
//!
//! Criteria 3, 4, 6 and 7 fail on the shipped data for reasons recorded in
//! the decisions ledger. They are reported as FAIL, and this target exits
//! nonzero only when a criterion changes from its recorded state.

use std::process::ExitCode;

use nilvar::checks::{acceptance, Check, Context, DEFAULT_SEED};

/// Recorded failing criteria and a fragment their report must contain.
const KNOWN_FAILURES: [(&str, &str); 4] = [
    ("3", "198/202 stated inequalities hold"),
    ("4", "pole at t = 0 in [x3,x7] along x1"),
    ("6", "upper triangular fuzz clean for 0/4 sets"),
    ("7", "readings matching N7_8_3: A, B"),
];

fn mentions(c: &Check, fragment: &str) -> bool {
    c.summary.contains(fragment) || c.details.iter().any(|d| d.contains(fragment))
}

fn main() -> ExitCode {
    let ctx = match Context::load(Default::default(), DEFAULT_SEED) {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL loading data: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let checks = match acceptance(&ctx) {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL running checks: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    let mut unexpected = Vec::new();
    for c in &checks {
        let known = KNOWN_FAILURES.iter().find(|(id, _)| *id == c.id);
        let note = match (c.passed, known) {
            (true, None) => "",
            (false, Some((_, frag))) if mentions(c, frag) => " [known failure, see decisions ledger]",
            (true, Some(_)) => {
                unexpected.push(c.id.clone());
                " [recorded as failing, now passes]"
            }
            _ => {
                unexpected.push(c.id.clone());
                " [unexpected]"
            }
        };
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {}: {} ({}){note}", c.id, c.title, c.summary);
        for d in &c.details {
            println!("    {d}");
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("acceptance: {passed}/{} criteria pass, seed {DEFAULT_SEED:#x}", checks.len());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("criteria differing from the recorded state: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
