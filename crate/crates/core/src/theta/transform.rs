//! Numerical checks of the Poisson identity, the `α`/`γ` transformation table
//! and weak modularity under `Γ_p`.

use num_complex::Complex64;
use serde::Serialize;

use super::function::TestFunction;
use super::series::{theta_eval_detailed, theta_j_eval, ThetaIndex, ThetaValue};
use super::UpperHalfPoint;
use crate::arith::{is_prime, j_prime_k};
use crate::error::{domain, Result};

/// One side-by-side comparison of a transformation identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformResidual {
    pub label: String,
    #[serde(skip)]
    pub lhs: Complex64,
    #[serde(skip)]
    pub rhs: Complex64,
    /// `|lhs − rhs| / max(1, |rhs|)`.
    pub residual: f64,
    /// Sum of the truncation bounds of both sides.
    pub tail: f64,
}

impl TransformResidual {
    fn new(label: impl Into<String>, lhs: Complex64, rhs: Complex64, tail: f64) -> Self {
        TransformResidual {
            label: label.into(),
            lhs,
            rhs,
            residual: (lhs - rhs).norm() / rhs.norm().max(1.0),
            tail,
        }
    }
}

/// `z^{d/2}` as `(√z)^d` with the principal square root.
pub fn principal_half_power(z: Complex64, d: usize) -> Complex64 {
    z.sqrt().powu(d as u32)
}

fn require_even_odd_p(f: &TestFunction) -> Result<()> {
    if f.p() == 2 {
        return domain("transformation checks need an odd prime");
    }
    if !f.is_even() {
        return domain("transformation checks need an even test function");
    }
    Ok(())
}

fn upper(z: Complex64) -> Result<UpperHalfPoint> {
    UpperHalfPoint::new(z)
}

/// `−1/(4τ)`.
fn inversion(tau: Complex64) -> Complex64 {
    -1.0 / (4.0 * tau)
}

fn scaled(factor: Complex64, v: ThetaValue) -> (Complex64, f64) {
    (factor * v.value, factor.norm() * v.tail)
}

/// `θ_f^∞(τ) = (i/2τ)^{d/2} θ_f^0(−1/4τ)`.
pub fn verify_poisson(f: &TestFunction, tau: UpperHalfPoint, eps: f64) -> Result<TransformResidual> {
    require_even_odd_p(f)?;
    let t = tau.get();
    let lhs = theta_j_eval(f, ThetaIndex::Infinity, tau, eps)?;
    let factor = principal_half_power(Complex64::i() / (2.0 * t), f.d());
    let (rhs, rt) = scaled(factor, theta_j_eval(f, ThetaIndex::Finite(0), upper(inversion(t))?, eps)?);
    Ok(TransformResidual::new("poisson", lhs.value, rhs, lhs.tail + rt))
}

/// Every row of the `α` (translation) and `γ` (inversion) table.
///
/// `α` rows: `θ^j(τ−1) = θ^{j+1}(τ)` for `j ≤ p−2`, `θ^{p−1}(τ−1) = θ^0_{Lf}(τ)`,
/// `θ^∞(τ−1) = θ^∞(τ)`.
/// `γ` rows: `θ^j_f(τ) = (i/2τ)^{d/2} θ^{j′}_g(−1/4τ)` with
/// `g = L^{k_j j′} S_{2j′} f` for `1 ≤ j ≤ p−1`, and the pair
/// `θ^∞(τ) = (i/2τ)^{d/2} θ^0(−1/4τ)`, `θ^∞(−1/4τ) = (2τ/i)^{d/2} θ^0(τ)`.
pub fn verify_table1(f: &TestFunction, tau: UpperHalfPoint, eps: f64) -> Result<Vec<TransformResidual>> {
    require_even_odd_p(f)?;
    let p = f.p();
    let d = f.d();
    let t = tau.get();
    let shifted = upper(t - 1.0)?;
    let inv = upper(inversion(t))?;
    let mut rows = Vec::new();

    for j in 0..p - 1 {
        let lhs = theta_j_eval(f, ThetaIndex::Finite(j), shifted, eps)?;
        let rhs = theta_j_eval(f, ThetaIndex::Finite(j + 1), tau, eps)?;
        rows.push(TransformResidual::new(
            format!("alpha j={j}"),
            lhs.value,
            rhs.value,
            lhs.tail + rhs.tail,
        ));
    }
    let lhs = theta_j_eval(f, ThetaIndex::Finite(p - 1), shifted, eps)?;
    let rhs = theta_j_eval(&f.op_l(1), ThetaIndex::Finite(0), tau, eps)?;
    rows.push(TransformResidual::new(
        format!("alpha j={}", p - 1),
        lhs.value,
        rhs.value,
        lhs.tail + rhs.tail,
    ));
    let lhs = theta_j_eval(f, ThetaIndex::Infinity, shifted, eps)?;
    let rhs = theta_j_eval(f, ThetaIndex::Infinity, tau, eps)?;
    rows.push(TransformResidual::new("alpha j=inf", lhs.value, rhs.value, lhs.tail + rhs.tail));

    let factor = principal_half_power(Complex64::i() / (2.0 * t), d);
    for j in 1..p {
        let (jp, k) = j_prime_k(j, p)?;
        let g = f.op_s(2 * jp % p)?.op_l((k * jp % p) as i64);
        let lhs = theta_j_eval(f, ThetaIndex::Finite(j), tau, eps)?;
        let (rhs, rt) = scaled(factor, theta_j_eval(&g, ThetaIndex::Finite(jp), inv, eps)?);
        rows.push(TransformResidual::new(format!("gamma j={j}"), lhs.value, rhs, lhs.tail + rt));
    }
    rows.push(verify_poisson(f, tau, eps).map(|mut r| {
        r.label = "gamma j=0".into();
        r
    })?);
    let lhs = theta_j_eval(f, ThetaIndex::Infinity, inv, eps)?;
    let back = principal_half_power(2.0 * t / Complex64::i(), d);
    let (rhs, rt) = scaled(back, theta_j_eval(f, ThetaIndex::Finite(0), tau, eps)?);
    rows.push(TransformResidual::new("gamma j=inf", lhs.value, rhs, lhs.tail + rt));
    Ok(rows)
}

/// An integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SL2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        SL2 { a, b, c, d }
    }

    pub fn det(&self) -> i128 {
        self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128
    }

    pub fn act(&self, tau: Complex64) -> Complex64 {
        (self.a as f64 * tau + self.b as f64) / (self.c as f64 * tau + self.d as f64)
    }
}

/// Membership in `Γ_p` (`a, d ≡ 1 mod 4p`, `c ≡ 0 mod 4p²`) or, for `p = 2`,
/// in `Γ_2` (`a, d ≡ 1 mod 4`, `c ≡ 0 mod 16`).
pub fn is_in_gamma(g: &SL2, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if g.det() != 1 {
        return domain(format!("determinant {} is not 1", g.det()));
    }
    let p = p as i128;
    let (m_ad, m_c) = if p == 2 { (4, 16) } else { (4 * p, 4 * p * p) };
    Ok((g.a as i128).rem_euclid(m_ad) == 1
        && (g.d as i128).rem_euclid(m_ad) == 1
        && (g.c as i128).rem_euclid(m_c) == 0)
}

/// `θ_f(gτ) = (cτ+d)^{d/2} θ_f(τ)` for even `d`; for odd `d` only the moduli
/// are compared, since the sign of the half-integral factor is not tracked.
pub fn verify_weak_modularity(f: &TestFunction, g: &SL2, tau: UpperHalfPoint, eps: f64) -> Result<TransformResidual> {
    if !is_in_gamma(g, f.p())? {
        return domain("matrix is not in the congruence subgroup");
    }
    if !f.is_even() {
        return domain("weak modularity needs an even test function");
    }
    let t = tau.get();
    let lhs = theta_eval_detailed(f, upper(g.act(t))?, eps)?;
    let rhs = theta_eval_detailed(f, tau, eps)?;
    let j = g.c as f64 * t + g.d as f64;
    let d = f.d();
    if d % 2 == 0 {
        let factor = j.powu(d as u32 / 2);
        Ok(TransformResidual::new(
            "weak modularity",
            lhs.value,
            factor * rhs.value,
            lhs.tail + factor.norm() * rhs.tail,
        ))
    } else {
        let factor = j.norm().powf(d as f64 / 2.0);
        Ok(TransformResidual::new(
            "weak modularity (modulus)",
            Complex64::new(lhs.value.norm(), 0.0),
            Complex64::new(factor * rhs.value.norm(), 0.0),
            lhs.tail + factor * rhs.tail,
        ))
    }
}
