use crate::error::{Error, Result};

use super::{QContext, TAIL_SAFETY};

/// `sum_{d | n, n/d in S} eps^d d^{k-1}` (all `d` and `eps = 1` without residue data).
fn divisor_coeff(n: usize, k: usize, ctx: &QContext) -> f64 {
    let eps = ctx.sign();
    let mut total = 0.0;
    let mut add = |d: usize| {
        if ctx.allowed(n / d) {
            let s = if d % 2 == 1 { eps } else { 1.0 };
            total += s * (d as f64).powi(k as i32 - 1);
        }
    };
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            add(d);
            if d * d != n {
                add(n / d);
            }
        }
        d += 1;
    }
    total
}

/// `G_k(q) = sum_n sigma_{k-1}(n) q^n`, or `G_{S,N,eps,k}(q)` when `ctx.kms` is set.
/// The tail uses `|coefficient of q^n| <= n^k`.
pub fn g_k_q(k: usize, ctx: &QContext) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let target = ctx.tol * TAIL_SAFETY;
    let q = ctx.q;
    let kf = k as i32;
    let mut total = 0.0;
    let mut qn = 1.0;
    let mut tail = f64::INFINITY;
    for n in 1..=ctx.cap {
        qn *= q;
        total += divisor_coeff(n, k, ctx) * qn;
        let next = (n + 1) as f64;
        let rho = ((next + 1.0) / next).powi(kf) * q;
        if rho < 1.0 {
            tail = next.powi(kf) * qn * q / (1.0 - rho);
            if tail < target {
                return Ok(total);
            }
        }
    }
    Err(Error::TailNotReached { tolerance: ctx.tol, cap: ctx.cap, tail })
}

/// `e_r` of the sequence `f(m)` over allowed `m`, as the `t^r` coefficient of
/// `prod_m (1 + f(m) t)`. `tail_abs(M)` bounds `sum_{m>M} |f(m)|`.
fn elementary(
    r: usize,
    ctx: &QContext,
    f: impl Fn(usize, f64) -> f64,
    tail_abs: impl Fn(usize) -> f64,
) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be >= 1".into()));
    }
    let target = ctx.tol * TAIL_SAFETY;
    let mut e = vec![0.0; r + 1];
    e[0] = 1.0;
    let mut abs_sum = 0.0;
    let mut qm = 1.0;
    let mut bound = f64::INFINITY;
    for m in 1..=ctx.cap {
        qm *= ctx.q;
        if ctx.allowed(m) {
            let x = f(m, qm);
            abs_sum += x.abs();
            for j in (1..=r).rev() {
                e[j] += x * e[j - 1];
            }
        }
        // e_r(inf) - e_r(M) <= tail * (sum |f|)^{r-1} / (r-1)!
        let t = tail_abs(m);
        let total = abs_sum + t;
        let fact: f64 = (1..r).map(|i| i as f64).product();
        bound = t * total.powi(r as i32 - 1) / fact;
        if bound < target {
            return Ok(e[r]);
        }
    }
    Err(Error::TailNotReached { tolerance: ctx.tol, cap: ctx.cap, tail: bound })
}

/// `A_r(q) = sum_{0<m_1<...<m_r} prod q^{m_a}/(1-q^{m_a})^2`, or
/// `A_{S,N,eps,r}(q)` when `ctx.kms` is set.
pub fn a_r_q(r: usize, ctx: &QContext) -> Result<f64> {
    let eps = ctx.sign();
    let q = ctx.q;
    elementary(
        r,
        ctx,
        |_, qm| eps * qm / (1.0 - eps * qm).powi(2),
        |m| q.powi(m as i32 + 1) / (1.0 - q).powi(3),
    )
}

/// `A_r^{(N,L)}(q) = sum_{0<m_1<...<m_r} prod (q^{(N-1)m_a}/(1-q^{m_a})^N)^L`.
/// Residue data in `ctx` is ignored.
pub fn a_r_nl_q(n: usize, l: usize, r: usize, ctx: &QContext) -> Result<f64> {
    if n < 2 || l < 1 {
        return Err(Error::InvalidParameter(format!("need N >= 2 and L >= 1, got N={n}, L={l}")));
    }
    let plain = QContext { kms: None, ..ctx.clone() };
    let q = ctx.q;
    let (n, l) = (n as i32, l as i32);
    let decay = q.powi((n - 1) * l);
    elementary(
        r,
        &plain,
        |_, qm| (qm.powi(n - 1) / (1.0 - qm).powi(n)).powi(l),
        |m| decay.powi(m as i32 + 1) / ((1.0 - q).powi(n * l) * (1.0 - decay)),
    )
}
