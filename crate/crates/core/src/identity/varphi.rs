use num_traits::Zero;

use crate::arith::{big, binomial, factorial, int, rat, sign_pow, Param, Poly, RatSeries, Rational};
use crate::combinatorics::identities::{check_difference_quotient_identity, check_shifted_power_sum};
use crate::combinatorics::{s1, StirlingKind, StirlingTable};
use crate::error::Result;
use crate::report::VerificationReport;

/// Adds `delta` to the `x^degree` coefficient of `varphi` (negative controls).
#[derive(Clone, Debug, PartialEq)]
pub struct VarphiPerturbation {
    pub degree: usize,
    pub delta: Rational,
}

/// `prod_{a=1}^{k-1} (k t - a) / k!` as a polynomial in `t`.
fn varphi_coeff(k: usize) -> Poly {
    let mut p = Poly::one();
    for a in 1..k {
        p = &p * &Poly::new(vec![int(-(a as i64)), int(k as i64)]);
    }
    p.scale(&big(&factorial(k)).recip())
}

/// `varphi(t; x) = sum_{k>=1} x^k/k! prod_{a=1}^{k-1}(k t - a)` with `t` kept symbolic.
pub fn varphi_symbolic(order: usize) -> RatSeries {
    varphi_symbolic_with(order, None)
}

fn varphi_symbolic_with(order: usize, perturb: Option<&VarphiPerturbation>) -> RatSeries {
    let mut coeffs: Vec<Poly> = (0..=order).map(|k| if k == 0 { Poly::zero() } else { varphi_coeff(k) }).collect();
    if let Some(p) = perturb.filter(|p| p.degree <= order) {
        coeffs[p.degree] = &coeffs[p.degree] + &Poly::constant(p.delta.clone());
    }
    RatSeries::new(order, Some(Param::Theta), coeffs)
}

/// `varphi(theta; x)` at a rational `theta`.
pub fn varphi(theta: &Rational, order: usize) -> RatSeries {
    varphi_symbolic(order).eval_param(theta)
}

fn poly_pairs(lhs: &RatSeries, rhs: &RatSeries) -> Vec<(usize, String, String)> {
    let order = lhs.order().min(rhs.order());
    (0..=order).map(|n| (n, lhs.coeff(n).render("t"), rhs.coeff(n).render("t"))).collect()
}

/// `e^{varphi} - x e^{t varphi} = 1`.
fn check_rel(phi: &RatSeries, theta: Option<&Rational>) -> Result<VerificationReport> {
    let order = phi.order();
    let scaled = match theta {
        Some(t) => phi.scale(t),
        None => phi.scale_poly(&Poly::var(), Param::Theta)?,
    };
    let lhs = phi.exp()?.sub(&RatSeries::monomial(order, 1, int(1)).mul(&scaled.exp()?)?)?;
    let rhs = RatSeries::one(order);
    let label = theta.map_or("t".to_string(), ToString::to_string);
    Ok(VerificationReport::new("varphi-rel", "e^{varphi(t;x)} - x e^{t varphi(t;x)} = 1", order)
        .param("theta", label)
        .compare_exact(poly_pairs(&lhs, &rhs)))
}

/// `varphi^k / k! = sum_n x^n/n! sum_{j>=k} (-1)^{n-j} [n j] binom(j-1,k-1) (n t)^{j-k}`.
fn check_power(phi: &RatSeries, k: usize) -> Result<VerificationReport> {
    let order = phi.order();
    let lhs = phi.pow(k).scale(&big(&factorial(k)).recip());
    let mut coeffs = vec![Poly::zero(); order + 1];
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let mut c = vec![Rational::zero(); n + 1];
        for j in k..=n {
            let n_pow = num_traits::pow(int(n as i64), j - k);
            c[j - k] = sign_pow((n - j) as i64) * s1(n, j) * big(&binomial(j - 1, k - 1)) * n_pow;
        }
        *slot = Poly::new(c).scale(&big(&factorial(n)).recip());
    }
    let rhs = RatSeries::new(order, Some(Param::Theta), coeffs);
    Ok(VerificationReport::new(
        "varphi-power",
        "varphi^k/k! = sum_n x^n/n! sum_{j>=k} (-1)^{n-j} [n j] binom(j-1,k-1) (n t)^{j-k}",
        order,
    )
    .param("k", k)
    .compare_exact(poly_pairs(&lhs, &rhs)))
}

/// `e^{l varphi} = 1 + l sum_n x^n/n! prod_{a=1}^{n-1} (l + n t - a)` at rational `l`.
fn check_exp_strange(phi: &RatSeries, lambda: &Rational) -> Result<VerificationReport> {
    let order = phi.order();
    let lhs = phi.scale(lambda).exp()?;
    let mut coeffs = vec![Poly::zero(); order + 1];
    coeffs[0] = Poly::one();
    for (n, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let mut p = Poly::constant(lambda.clone());
        for a in 1..n {
            p = &p * &Poly::new(vec![lambda - int(a as i64), int(n as i64)]);
        }
        *slot = p.scale(&big(&factorial(n)).recip());
    }
    let rhs = RatSeries::new(order, Some(Param::Theta), coeffs);
    Ok(VerificationReport::new("exp-strange", "e^{l varphi(t;x)} = 1 + l sum_n x^n/n! prod_{a=1}^{n-1}(l + n t - a)", order)
        .param("lambda", lambda)
        .compare_exact(poly_pairs(&lhs, &rhs)))
}

pub fn verify_appendix_b(order: usize) -> Result<VerificationReport> {
    verify_appendix_b_with(order, None)
}

/// The relation `e^{varphi} - x e^{t varphi} = 1` at three rational `t` and
/// symbolically, the power expansion for `k = 1..=4`, the exponential lemma at
/// sampled `l`, and the two auxiliary lemmas.
pub fn verify_appendix_b_with(order: usize, perturb: Option<&VarphiPerturbation>) -> Result<VerificationReport> {
    let sym = varphi_symbolic_with(order, perturb);
    let mut parts = Vec::new();
    for theta in [rat(1, 2), rat(1, 3), rat(2, 5)] {
        parts.push(check_rel(&sym.eval_param(&theta), Some(&theta))?);
    }
    parts.push(check_rel(&sym, None)?);
    for k in 1..=4 {
        parts.push(check_power(&sym, k)?);
    }
    for lambda in [int(1), rat(1, 2), rat(-3, 2), int(2)] {
        parts.push(check_exp_strange(&sym, &lambda)?);
    }
    let second = StirlingTable::build(StirlingKind::Second, 12);
    parts.push(check_shifted_power_sum(&second, 10));
    parts.push(check_difference_quotient_identity(6));
    Ok(VerificationReport::new("appendix-b", "properties of varphi(t;x)", order).merge(&parts))
}
