use num_traits::Zero;

use crate::algebra::{circ_power, make_e, AlgebraElement};
use crate::algseries::{geometric_inverse, AlgSeries};
use crate::arith::{big, binomial, int, rat, sign_pow, RatSeries};
use crate::combinatorics::HarmonicCache;
use crate::error::{Error, Result};
use crate::report::VerificationReport;

use super::general::exponent_from_sums;
use super::varphi::varphi;
use super::{compare_series, PhiSource};

fn check_nl(n: usize, l: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("N must be >= 2, got {n}")));
    }
    if l < 1 {
        return Err(Error::InvalidParameter("L must be >= 1".into()));
    }
    Ok(())
}

/// `-sum_{k>=2} h^{-k}/k! phi_k sum_{m=1}^{NL} varphi(1/N; eps_{NL}^m X)^k`, the root
/// of unity sum taken as a multisection.
pub fn solvable_exponent(n: usize, l: usize, order: usize, phis: &PhiSource) -> Result<AlgSeries> {
    check_nl(n, l)?;
    let phi = varphi(&rat(1, n as i64), order);
    let mut sums = vec![RatSeries::zero(order); order + 1];
    let mut power = phi.clone();
    for (k, slot) in sums.iter_mut().enumerate().skip(1) {
        if k >= 2 {
            power = power.mul(&phi)?;
            *slot = power.multisection(n * l);
        }
    }
    exponent_from_sums(&sums, phis, order)
}

/// `N/((N-1)L) sum_n ((-1)^{(N-1)L} X^{NL})^n / (n^2 binom(NLn, Ln))
///  sum_{k=2}^{NLn} C_{k-2}(Ln, (N-1)Ln) h^{-k} phi_k`.
pub fn explicit_exponent(n: usize, l: usize, order: usize, phis: &PhiSource) -> Result<AlgSeries> {
    check_nl(n, l)?;
    let nl = n * l;
    let prefactor = rat(n as i64, ((n - 1) * l) as i64);
    let sign = sign_pow(((n - 1) * l) as i64);
    let mut cache = HarmonicCache::new();
    let mut coeffs = vec![AlgebraElement::zero(); order + 1];
    let mut m = 1;
    while nl * m <= order {
        let ln = l * m;
        let outer = &prefactor * num_traits::pow(sign.clone(), m) / (int((m * m) as i64) * big(&binomial(nl * m, ln)));
        let mut inner = AlgebraElement::zero();
        for k in 2..=nl * m {
            let c = cache.c_coeff(k - 2, ln, (n - 1) * ln);
            if c.is_zero() {
                continue;
            }
            inner = &inner + &phis.phi(k)?.shift_hbar(-(k as i32)).scale_rat(&c);
        }
        coeffs[nl * m] = inner.scale_rat(&outer);
        m += 1;
    }
    Ok(AlgSeries::new(order, coeffs))
}

pub fn verify_solvable_case(n: usize, l: usize, order: usize) -> Result<VerificationReport> {
    verify_solvable_case_with(n, l, order, &PhiSource::default())
}

/// `1/(1 + h^{-NL} e_N^{oL} X^{NL}) = exp_*(solvable exponent)`, together with the
/// agreement of the multisection and `C`-coefficient forms of the exponent.
pub fn verify_solvable_case_with(n: usize, l: usize, order: usize, phis: &PhiSource) -> Result<VerificationReport> {
    check_nl(n, l)?;
    let nl = n * l;
    let u = circ_power(&make_e(n)?, l)?.shift_hbar(-(nl as i32));
    let lhs = geometric_inverse(&u, nl, 1, order)?;
    let exponent = solvable_exponent(n, l, order, phis)?;
    let rhs = exponent.exp_star()?;
    let sides = compare_series(
        VerificationReport::new("solvable-sides", "1/(1+h^{-NL} e_N^{oL} X^{NL}) = exp_*(exponent)", order),
        &lhs,
        &rhs,
    );
    let explicit = explicit_exponent(n, l, order, phis)?;
    let forms = compare_series(
        VerificationReport::new("solvable-exponent-forms", "multisection form = C-coefficient form", order),
        &exponent,
        &explicit,
    );
    Ok(VerificationReport::new(
        "solvable-case",
        "1/(1+h^{-NL}e_N^{oL}X^{NL}) = exp_*(-sum_{k>=2} h^{-k}/k! phi_k sum_m varphi(1/N; eps_{NL}^m X)^k)",
        order,
    )
    .param("N", n)
    .param("L", l)
    .merge(&[sides, forms]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::{alpha_power_sums, main_identity_sides, PolynomialSpec};

    #[test]
    fn small_cases_verify() {
        for (n, l, order) in [(2, 1, 6), (3, 1, 6), (2, 2, 8)] {
            let r = verify_solvable_case(n, l, order).unwrap();
            assert!(r.is_verified(), "N={n} L={l}: {:?}", r.first_mismatch);
        }
    }

    // The general identity at P = z^{N-1}(z-1) turns into this one under X -> -X.
    #[test]
    fn agrees_with_general_identity_under_sign_flip() {
        let order = 8;
        let (lhs1, rhs1) = main_identity_sides(&PolynomialSpec::z_pow_minus(2), 1, order, &PhiSource::default()).unwrap();
        let u = make_e(2).unwrap().shift_hbar(-2);
        let lhs2 = geometric_inverse(&u, 2, 1, order).unwrap();
        let rhs2 = solvable_exponent(2, 1, order, &PhiSource::default()).unwrap().exp_star().unwrap();
        for d in 0..=order {
            let s = sign_pow(d as i64);
            assert_eq!(lhs1.coeff(d).scale_rat(&s), *lhs2.coeff(d), "degree {d}");
            assert_eq!(rhs1.coeff(d).scale_rat(&s), *rhs2.coeff(d), "degree {d}");
        }
    }

    // alpha(x) = 1 - exp(varphi(1/N; -x)) reproduces the power sums of
    // 1 - X^{NL} (z^{N-1}(z-1))^L.
    #[test]
    fn alpha_from_varphi_matches_power_sums() {
        for (n, l) in [(2, 1), (3, 1), (2, 2), (4, 1)] {
            let order = 9;
            let p = PolynomialSpec::z_pow_minus(n);
            let sums = alpha_power_sums(&p, l, order, order).unwrap();
            let e = varphi(&rat(1, n as i64), order).rescale(&int(-1)).exp().unwrap();
            let alpha = RatSeries::one(order).sub(&e).unwrap();
            for s in 1..=order {
                assert_eq!(alpha.pow(s).multisection(n * l), *sums.p(s), "N={n} L={l} s={s}");
            }
        }
    }

    #[test]
    fn perturbed_phi_fails_at_first_multiple() {
        let bad = PhiSource::default().perturb(2, AlgebraElement::g(1));
        let r = verify_solvable_case_with(3, 1, 6, &bad).unwrap();
        assert_eq!(r.mismatch_degree(), Some(3));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(verify_solvable_case(1, 1, 4).is_err());
        assert!(verify_solvable_case(2, 0, 4).is_err());
    }
}
