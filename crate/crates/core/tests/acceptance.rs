//! One PASS/FAIL line per acceptance criterion, followed by the checks behind it.
//! Criterion 11 contains a limit check that cannot hold as stated (the value at
//! w = 1e-4 carries an exact imaginary part -pi w); it is reported as FAIL, and
//! the run only fails if that check misses for any other reason.

use std::f64::consts::PI;
use std::process::ExitCode;

use mzv_harmonic::omega::{omega_generating_series, OmegaContext};
use mzv_harmonic::suite::{criteria, CheckOutcome};

const UNATTAINABLE: &str = "limit omega=1e-4 r<=3 rel 1e-6";

fn describe(o: &CheckOutcome) -> String {
    let status = if o.passed() { "ok" } else { "FAIL" };
    let mut line = format!("    [{status}] {} ({:.2?})", o.name, o.elapsed);
    if let Some(e) = &o.error {
        line += &format!(" error: {e}");
    }
    if !o.within_budget() {
        line += &format!(" over budget {:?}", o.budget.unwrap_or_default());
    }
    for r in o.reports.iter().filter(|r| !r.is_verified()) {
        if let Some(m) = &r.first_mismatch {
            line += &format!(" [{} degree {}: {} vs {}]", r.identity, m.degree, m.lhs, m.rhs);
        }
        if let Some(e) = r.abs_err {
            line += &format!(" max abs err {e:.3e}");
        }
    }
    line
}

/// The limit check fails only through the exact O(w) imaginary part: real parts
/// match to 1e-6 relative and Im Z_w(e_2) = -pi w.
fn unattainable_for_the_known_reason() -> bool {
    let w = 1e-4;
    let ctx = OmegaContext::new(w).expect("w > 0");
    let Ok(s) = omega_generating_series(1, 3, &ctx) else {
        return false;
    };
    let mut fact = 1.0;
    let mut ok = (s[1].im + PI * w).abs() < 1e-12;
    for r in 1..=3 {
        fact *= ((2 * r) * (2 * r + 1)) as f64;
        let limit = PI.powi(2 * r as i32) / fact;
        ok &= (s[r].re - limit).abs() < 1e-6 * limit;
        println!(
            "    r={r}: Z = {:.12e}{:+.12e}i, limit {:.12e}, relative error {:.3e}",
            s[r].re,
            s[r].im,
            limit,
            (s[r] - limit).norm() / limit
        );
    }
    ok
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    for c in criteria() {
        let outcomes: Vec<CheckOutcome> = c.checks.iter().map(|k| k.run()).collect();
        let passed = outcomes.iter().all(CheckOutcome::passed);
        println!("criterion {:>2}: {} {}", c.id, if passed { "PASS" } else { "FAIL" }, c.title);
        for o in &outcomes {
            println!("{}", describe(o));
            if o.passed() {
                continue;
            }
            if o.name == UNATTAINABLE && o.error.is_none() {
                println!("    unattainable as stated: Z_w(e_2) = zeta(2)(1 - w^2) - pi i w, so the relative gap is ~pi w / zeta(2)");
                if unattainable_for_the_known_reason() {
                    continue;
                }
            }
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        println!("acceptance: all criteria pass except the documented unattainable limit check in criterion 11");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
