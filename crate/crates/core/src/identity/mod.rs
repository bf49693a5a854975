//! Exact verification of the generating-series identities: both sides are
//! built independently and compared coefficient by coefficient.

mod alpha;
mod bernoulli_omega;
mod general;
mod poly_spec;
mod solvable;
mod varphi;

use std::collections::BTreeMap;

pub use alpha::{alpha_power_sums, log_sum_powers, AlphaPowerSums};
pub use bernoulli_omega::{bernoulli_omega, bernoulli_omega_expected, verify_bernoulli_omega};
pub use general::{
    bachmann_exponent, exponent_from_sums, main_identity_sides, verify_bachmann_exact, verify_main_identity,
    verify_main_identity_with,
};
pub use poly_spec::PolynomialSpec;
pub use solvable::{explicit_exponent, solvable_exponent, verify_solvable_case, verify_solvable_case_with};
pub use varphi::{verify_appendix_b, verify_appendix_b_with, varphi, varphi_symbolic, VarphiPerturbation};

use crate::algebra::{make_phi, AlgebraElement};
use crate::algseries::AlgSeries;
use crate::error::Result;
use crate::report::VerificationReport;

/// Supplies `phi_k`, optionally with some entries replaced (negative controls).
#[derive(Clone, Debug, Default)]
pub struct PhiSource {
    overrides: BTreeMap<usize, AlgebraElement>,
}

impl PhiSource {
    /// Adds `delta` to `phi_k`.
    pub fn perturb(mut self, k: usize, delta: AlgebraElement) -> Self {
        let base = make_phi(k).expect("k >= 1");
        self.overrides.insert(k, &base + &delta);
        self
    }

    pub fn phi(&self, k: usize) -> Result<AlgebraElement> {
        match self.overrides.get(&k) {
            Some(e) => Ok(e.clone()),
            None => make_phi(k),
        }
    }
}

/// Exact coefficientwise comparison of two series, degree by degree.
pub fn compare_series(report: VerificationReport, lhs: &AlgSeries, rhs: &AlgSeries) -> VerificationReport {
    let order = lhs.order().min(rhs.order());
    report.compare_exact((0..=order).map(|n| (n, lhs.coeff(n).clone(), rhs.coeff(n).clone())))
}
