//! Weighted theta series: coefficients `c_n = Σ_{x ∈ X_d(n)} f(x mod p)` and
//! truncated evaluation of `θ_f(τ) = Σ_{x ∈ Z^d} f(x mod p) e^{2πi Q(x,x) τ}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::function::{root, TestFunction};
use super::UpperHalfPoint;
use crate::error::{check_cap, domain, Result};
use crate::lattice::{residue_count_table, square_classes, Limits};

/// `c_0, …, c_N` of `θ_f`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    pub p: u64,
    pub d: usize,
    pub nmax: u64,
    pub c: Vec<Complex64>,
}

/// Coefficients by contracting one coordinate at a time against the
/// one-dimensional square classes; peak memory `p^{d−1}(N+1)`.
pub fn theta_coeffs(f: &TestFunction, nmax: u64, limits: &Limits) -> Result<CoefficientSeries> {
    let (p, d) = (f.p(), f.d());
    let len = nmax as usize + 1;
    let pu = p as usize;
    let rest = f.len() / pu;
    check_cap("theta coefficient state", rest as u128 * len as u128, limits.max_entries.max(1 << 26))?;
    let pieces = square_classes(p, nmax);
    // state[r * len + m]: sum over the contracted coordinates with Σ x² = m,
    // r indexing the remaining coordinates.
    let mut state = vec![Complex64::new(0.0, 0.0); rest * len];
    for r in 0..rest {
        for (a, piece) in pieces.iter().enumerate() {
            let v = f.at_index(a + pu * r);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            for &(sq, w) in piece {
                state[r * len + sq] += v * w as f64;
            }
        }
    }
    let mut width = rest;
    for _ in 1..d {
        width /= pu;
        let mut next = vec![Complex64::new(0.0, 0.0); width * len];
        for r in 0..width {
            let dst = &mut next[r * len..(r + 1) * len];
            for (a, piece) in pieces.iter().enumerate() {
                let src = &state[(a + pu * r) * len..(a + pu * r + 1) * len];
                for &(sq, w) in piece {
                    let w = w as f64;
                    for m in 0..len - sq {
                        dst[m + sq] += src[m] * w;
                    }
                }
            }
        }
        state = next;
    }
    Ok(CoefficientSeries {
        p,
        d,
        nmax,
        c: state,
    })
}

/// Coefficients from the per-class count table: `c_n = Σ_r f(r) #{x ∈ X_d(n) : x ≡ r}`.
pub fn theta_coeffs_by_classes(f: &TestFunction, nmax: u64, limits: &Limits) -> Result<CoefficientSeries> {
    let table = residue_count_table(f.d(), f.p(), nmax, limits)?;
    let c = (0..=nmax)
        .map(|n| {
            table
                .row(n)
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(r, &k)| f.at_index(r) * k as f64)
                .sum()
        })
        .collect();
    Ok(CoefficientSeries {
        p: f.p(),
        d: f.d(),
        nmax,
        c,
    })
}

/// A truncated theta value with the bound on what was discarded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaValue {
    pub value: Complex64,
    /// Upper bound on `|θ − value|` from the discarded terms.
    pub tail: f64,
    /// Coordinates were summed over `|x| ≤ radius`.
    pub radius: u64,
}

/// Evaluate `Σ_x f(x mod p) e^{2πi Q(x,x) τ / scale} · ζ_{modulus}^{−j Q(x,x)}`.
///
/// The sum factorises over coordinates: it equals `Σ_r f(r) Π_i G_{r_i}`
/// with `G_a = Σ_{x ≡ a mod p} e^{2πi x² τ/scale} ζ^{−j x²}`. Each `G_a` is
/// truncated at `|x| ≤ X`, with `X` the smallest radius for which
/// `‖f‖_1 ((B + T)^d − B^d) ≤ eps/2`, where `B` bounds the truncated
/// one-dimensional sums and `T` their tails.
fn theta_general(
    f: &TestFunction,
    tau: Complex64,
    scale: f64,
    twist: Option<(u64, u64)>,
    eps: f64,
) -> Result<ThetaValue> {
    if eps.is_nan() || eps <= 0.0 {
        return domain("eps must be positive");
    }
    let y = tau.im / scale;
    if y.is_nan() || y <= 0.0 {
        return domain("Im(τ) must be positive");
    }
    let d = f.d() as i32;
    let norm = f.l1_norm();
    if norm == 0.0 {
        return Ok(ThetaValue {
            value: Complex64::new(0.0, 0.0),
            tail: 0.0,
            radius: 0,
        });
    }
    let decay = |x: f64| (-2.0 * PI * x * x * y).exp();
    let mut radius = 0u64;
    let mut b = 1.0;
    let (tail, radius) = loop {
        let xn = radius as f64 + 1.0;
        let t = 2.0 * decay(xn) / (1.0 - (-2.0 * PI * (2.0 * xn + 1.0) * y).exp());
        let bound = norm * ((b + t).powi(d) - b.powi(d));
        if bound <= eps / 2.0 {
            break (bound, radius);
        }
        radius += 1;
        if radius > 50_000_000 {
            return domain("Im(τ) too small for the requested accuracy");
        }
        b += 2.0 * decay(radius as f64);
    };
    let p = f.p();
    let mut g = vec![Complex64::new(0.0, 0.0); p as usize];
    let r = radius as i64;
    for x in -r..=r {
        let sq = (x * x) as f64;
        let mut term = Complex64::from_polar(decay(x as f64), 2.0 * PI * sq * tau.re / scale);
        if let Some((j, m)) = twist {
            let k = (x as i128 * x as i128 * j as i128).rem_euclid(m as i128) as u64;
            term *= root((m - k) % m, m);
        }
        g[x.rem_euclid(p as i64) as usize] += term;
    }
    Ok(ThetaValue {
        value: contract(f, &g),
        tail,
        radius,
    })
}

/// `Σ_r f(r) Π_i g[r_i]`, one coordinate at a time.
pub(crate) fn contract(f: &TestFunction, g: &[Complex64]) -> Complex64 {
    let p = f.p() as usize;
    let mut cur: Vec<Complex64> = f.values().to_vec();
    while cur.len() > 1 {
        cur = cur
            .chunks(p)
            .map(|chunk| chunk.iter().zip(g).map(|(a, b)| a * b).sum())
            .collect();
    }
    cur[0]
}

/// `θ_f(τ)` with absolute truncation error at most `eps/2`.
pub fn theta_eval(f: &TestFunction, tau: UpperHalfPoint, eps: f64) -> Result<Complex64> {
    Ok(theta_eval_detailed(f, tau, eps)?.value)
}

pub fn theta_eval_detailed(f: &TestFunction, tau: UpperHalfPoint, eps: f64) -> Result<ThetaValue> {
    theta_general(f, tau.get(), 1.0, None, eps)
}

/// Index of the theta components `θ_f^j`, `j ∈ {0, …, p−1, ∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaIndex {
    Finite(u64),
    Infinity,
}

/// `θ_f^j(τ) = Σ_x f(x) e^{2πi Q(x,x)(τ − j)/p²}`; `θ_f^∞(τ) = θ_{F(f)}(τ)`.
pub fn theta_j_eval(f: &TestFunction, j: ThetaIndex, tau: UpperHalfPoint, eps: f64) -> Result<ThetaValue> {
    let p = f.p();
    if p == 2 {
        return domain("θ^j is defined for odd p");
    }
    if !f.is_even() {
        return domain("θ^j requires an even test function");
    }
    match j {
        ThetaIndex::Infinity => theta_general(&f.fourier(), tau.get(), 1.0, None, eps),
        ThetaIndex::Finite(j) if j < p => {
            let twist = if j == 0 { None } else { Some((j, p * p)) };
            theta_general(f, tau.get(), (p * p) as f64, twist, eps)
        }
        ThetaIndex::Finite(j) => domain(format!("j = {j} outside [0, {}]", p - 1)),
    }
}
