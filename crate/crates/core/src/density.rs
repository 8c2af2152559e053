//! Gauss sums, the coefficients `A_d(q, n)`, local densities and the
//! singular series of the sum of `d` squares.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;

use crate::arith::{epsilon, factorize, is_prime, jacobi_symbol, p_adic_split, primes_up_to, OddInt};
use crate::error::{check_cap, domain, Error, Result};
use crate::lattice::{count_range, r4_jacobi, Limits};

/// `e^{2πi k/q}` with `k` already reduced mod `q`.
fn unit_root(k: u128, q: u128) -> Complex64 {
    let angle = 2.0 * PI * (k as f64) / (q as f64);
    Complex64::new(angle.cos(), angle.sin())
}

fn reduce(a: i128, q: u128) -> u128 {
    a.rem_euclid(q as i128) as u128
}

/// `S(q, a) = Σ_{t=1}^{q} e^{2πi a t²/q}` by direct summation.
pub fn gauss_sum(q: u64, a: i64) -> Complex64 {
    let q = q as u128;
    let a = reduce(a as i128, q);
    (1..=q).map(|t| unit_root(a * (t * t % q) % q, q)).sum()
}

/// `S(p^h, a)` for `p ∤ a`: `ε_p (a/p) p^{h/2}` for odd `h`, `p^{h/2}` for even `h`.
pub fn gauss_sum_closed(p: u64, h: u32, a: i64) -> Result<Complex64> {
    if p < 3 || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    if h == 0 {
        return domain("h must be at least 1");
    }
    if a.rem_euclid(p as i64) == 0 {
        return domain(format!("{a} is not coprime to {p}"));
    }
    let size = (p as f64).powf(h as f64 / 2.0);
    if h % 2 == 0 {
        return Ok(Complex64::new(size, 0.0));
    }
    let pi = OddInt::new(p as i128)?;
    Ok(epsilon(pi) * jacobi_symbol(a as i128, pi) as f64 * size)
}

/// All Gauss sums `S(q, a)` for `a ∈ [0, q)`.
#[derive(Debug, Clone)]
pub struct GaussTable {
    q: u64,
    sums: Vec<Complex64>,
}

impl GaussTable {
    /// `O(q²)` construction; `q` is capped by `cap`.
    pub fn new(q: u64, cap: u128) -> Result<Self> {
        if q == 0 {
            return domain("q must be at least 1");
        }
        check_cap("Gauss sum modulus", q as u128, cap)?;
        let sums = (0..q).map(|a| gauss_sum(q, a as i64)).collect();
        Ok(GaussTable { q, sums })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn sum(&self, a: i64) -> Complex64 {
        self.sums[a.rem_euclid(self.q as i64) as usize]
    }

    /// `A_d(q, n) = Σ_{a mod q, (a,q)=1} (S(q,a)/q)^d e^{−2πi na/q}`.
    pub fn a_coefficient(&self, d: u32, n: u64) -> Complex64 {
        let q = self.q as u128;
        let nq = n as u128 % q;
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 1..=self.q {
            if a.gcd(&self.q) != 1 {
                continue;
            }
            let s = self.sums[(a % self.q) as usize] / self.q as f64;
            let phase = unit_root(reduce(-((nq * a as u128 % q) as i128), q), q);
            acc += s.powu(d) * phase;
        }
        acc
    }
}

/// Default cap on the modulus of a brute-force `A_d(q, n)`.
pub const DEFAULT_Q_CAP: u128 = 1 << 14;

/// `A_d(q, n)` by direct summation; `A_d(1, n) = 1`.
pub fn a_bruteforce(d: u32, q: u64, n: u64, q_cap: u128) -> Result<Complex64> {
    Ok(GaussTable::new(q, q_cap)?.a_coefficient(d, n))
}

/// `ε_p^k` for even `k`: `−1` iff `p ≡ 3 mod 4` and `k ≡ 2 mod 4`.
fn eps_even_power(p: u64, k: u32) -> f64 {
    debug_assert!(k % 2 == 0);
    if p % 4 == 3 && k % 4 == 2 {
        -1.0
    } else {
        1.0
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return domain("no closed form for p = 2");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    Ok(())
}

/// `(−unit/p)` for the `p`-free part of `n`.
fn unit_symbol(p: u64, unit: u128) -> Result<f64> {
    let unit = i128::try_from(unit).map_err(|_| Error::Range("unit exceeds i128".into()))?;
    Ok(jacobi_symbol(-unit, OddInt::new(p as i128)?) as f64)
}

/// Closed form of `A_d(p^h, n)` for odd `p`, branching on `h` against `ord_p(n)`.
pub fn a_closed(d: u32, p: u64, h: u32, n: u64) -> Result<Complex64> {
    check_odd_prime(p)?;
    if h == 0 {
        return domain("h must be at least 1");
    }
    if d == 0 {
        return domain("d must be at least 1");
    }
    let split = p_adic_split(n as u128, p)?;
    let o = split.ord;
    let pf = p as f64;
    let df = d as f64;
    let value = if d % 2 == 0 {
        let x = |k: u32| eps_even_power(p, d * k) * pf.powf((1.0 - df / 2.0) * k as f64);
        if h <= o {
            (pf - 1.0) / pf * x(h)
        } else if h == o + 1 {
            -x(o + 1) / pf
        } else {
            0.0
        }
    } else if h <= o {
        if h % 2 == 1 {
            0.0
        } else {
            (pf - 1.0) / pf * pf.powf((1.0 - df / 2.0) * h as f64)
        }
    } else if h == o + 1 {
        if h % 2 == 1 {
            pf.powf((1.0 - df / 2.0) * o as f64 + (1.0 - df) / 2.0)
                * eps_even_power(p, d + 1)
                * unit_symbol(p, split.unit)?
        } else {
            -pf.powf((1.0 - df / 2.0) * o as f64 - df / 2.0)
        }
    } else {
        0.0
    };
    Ok(Complex64::new(value, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityMethod {
    ClosedForm,
    BruteForce,
}

/// `δ_{p,d}(n)` together with the terms `A_d(p^h, n)`, `h = 0..=H`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub p: u64,
    pub d: u32,
    pub n: u64,
    pub terms: Vec<f64>,
    pub delta: f64,
    pub method: DensityMethod,
    /// `|A(2^{H+1})| + |A(2^{H+2})|` for the 2-adic partial sum; zero otherwise.
    pub tail: f64,
}

/// The constants of the odd-prime closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityConstants {
    pub c: f64,
    pub e: f64,
    pub f: f64,
}

/// `C_{p,d}` (meaningful for even `d`), `E_{p,d}` and `F_{p,d}` (odd `d`).
///
/// `E_{p,d} = −p^{1−d/2} F_{p,d}` is what summing the odd-`d` coefficients
/// over `h ≤ ord_p(n) + 1` gives when `ord_p(n)` is odd; the variant
/// `p^{1−d/2}(p−1)/(1−p^{2−d})` does not match the brute-force sums.
pub fn density_constants(p: u64, d: u32) -> DensityConstants {
    let pf = p as f64;
    let df = d as f64;
    let eps_d = if d % 2 == 0 { eps_even_power(p, d) } else { 0.0 };
    let c = (1.0 - eps_d * pf.powf(-df / 2.0)) / (1.0 - eps_d * pf.powf(1.0 - df / 2.0));
    let f = (1.0 - pf.powf(1.0 - df)) / (1.0 - pf.powf(2.0 - df));
    let e = -pf.powf(1.0 - df / 2.0) * f;
    DensityConstants { c, e, f }
}

fn closed_delta(p: u64, d: u32, n: u64) -> Result<f64> {
    let split = p_adic_split(n as u128, p)?;
    let o = split.ord;
    let pf = p as f64;
    let df = d as f64;
    let k = density_constants(p, d);
    if d % 2 == 0 {
        let x = eps_even_power(p, d * (o + 1)) * pf.powf((1.0 - df / 2.0) * (o + 1) as f64);
        return Ok(k.c * (1.0 - x));
    }
    let scale = pf.powf((1.0 - df / 2.0) * o as f64);
    if o % 2 == 1 {
        Ok(scale * k.e + k.f)
    } else {
        let g = pf.powf(1.0 - df) * (1.0 - pf) / (1.0 - pf.powf(2.0 - df))
            + pf.powf((1.0 - df) / 2.0) * eps_even_power(p, d + 1) * unit_symbol(p, split.unit)?;
        Ok(scale * g + k.f)
    }
}

/// `S(2^h, a)` for odd `a`, using that it depends only on `a mod 8`.
fn dyadic_gauss_classes(h: u32) -> [Complex64; 8] {
    let q = 1u64 << h;
    let mut out = [Complex64::new(0.0, 0.0); 8];
    for c in (1..8).step_by(2) {
        out[c] = gauss_sum(q, c as i64);
    }
    out
}

/// `A_d(2^h, n)` in `O(2^h)` time.
pub fn a_dyadic(d: u32, h: u32, n: u64) -> Result<Complex64> {
    if h == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if h > 40 {
        return Err(Error::Range(format!("2^{h} is too large a modulus")));
    }
    if h < 3 {
        return a_bruteforce(d, 1 << h, n, u128::MAX);
    }
    let q = 1u128 << h;
    let classes = dyadic_gauss_classes(h);
    let nq = n as u128 % q;
    let mut acc = Complex64::new(0.0, 0.0);
    for a in (1..q).step_by(2) {
        let s = classes[(a % 8) as usize] / q as f64;
        acc += s.powu(d) * unit_root(reduce(-((nq * a % q) as i128), q), q);
    }
    Ok(acc)
}

/// Tail threshold for the 2-adic partial sum.
pub const DYADIC_TAIL_TOL: f64 = 1e-9;

/// `δ_{p,d}(n)`: closed form for odd `p`, checked partial sum for `p = 2`.
pub fn local_density(p: u64, d: u32, n: u64) -> Result<DensityReport> {
    if d < 3 {
        return domain(format!("local density requires d >= 3, got {d}"));
    }
    if n == 0 {
        return domain("local density requires n >= 1");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let split = p_adic_split(n as u128, p)?;
    if p == 2 {
        let mut terms = vec![1.0];
        let mut h_max = split.ord + 4;
        for h in 1..=h_max {
            terms.push(a_dyadic(d, h, n)?.re);
        }
        let tail = loop {
            let t = a_dyadic(d, h_max + 1, n)?.norm() + a_dyadic(d, h_max + 2, n)?.norm();
            if t < DYADIC_TAIL_TOL {
                break t;
            }
            h_max += 1;
            terms.push(a_dyadic(d, h_max, n)?.re);
        };
        let delta = terms.iter().sum();
        return Ok(DensityReport {
            p,
            d,
            n,
            terms,
            delta,
            method: DensityMethod::BruteForce,
            tail,
        });
    }
    let mut terms = vec![1.0];
    for h in 1..=split.ord + 1 {
        terms.push(a_closed(d, p, h, n)?.re);
    }
    Ok(DensityReport {
        p,
        d,
        n,
        terms,
        delta: closed_delta(p, d, n)?,
        method: DensityMethod::ClosedForm,
        tail: 0.0,
    })
}

/// Truncated Euler product `𝔖_d(n) = Π_p δ_{p,d}(n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSeriesValue {
    pub d: u32,
    pub n: u64,
    pub prime_cutoff: u64,
    pub value: f64,
    pub factors: BTreeMap<u64, f64>,
}

pub const DEFAULT_PRIME_CUTOFF: u64 = 101;

/// Product of `δ_{p,d}(n)` over primes up to `max(cutoff, largest prime factor of n)`.
pub fn singular_series(d: u32, n: u64, prime_cutoff: u64) -> Result<SingularSeriesValue> {
    if d < 5 {
        return domain(format!("singular series requires d >= 5, got {d}"));
    }
    if n == 0 {
        return domain("singular series requires n >= 1");
    }
    let largest = factorize(n as u128).last().map_or(1, |&(q, _)| q);
    let bound = prime_cutoff.max(largest);
    let mut factors = BTreeMap::new();
    let mut value = 1.0;
    for p in primes_up_to(bound) {
        let delta = local_density(p, d, n)?.delta;
        factors.insert(p, delta);
        value *= delta;
    }
    Ok(SingularSeriesValue {
        d,
        n,
        prime_cutoff,
        value,
        factors,
    })
}

/// `Γ(d/2)` by the half-integer recurrence.
pub fn gamma_half(d: u32) -> f64 {
    if d % 2 == 0 {
        (1..d / 2).map(|k| k as f64).product()
    } else {
        let mut g = PI.sqrt();
        let mut s = 0.5;
        while s < d as f64 / 2.0 - 0.25 {
            g *= s;
            s += 1.0;
        }
        g
    }
}

/// `δ_{∞,d}(n) = π^{d/2} n^{d/2−1} / Γ(d/2)`.
pub fn archimedean_density(d: u32, n: u64) -> f64 {
    let df = d as f64;
    PI.powf(df / 2.0) / gamma_half(d) * (n as f64).powf(df / 2.0 - 1.0)
}

/// `δ_{∞,d}(n)·𝔖_d(n)`.
pub fn main_term(d: u32, n: u64, prime_cutoff: u64) -> Result<f64> {
    let s = singular_series(d, n, prime_cutoff)?;
    Ok(archimedean_density(d, n) * s.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceRecord {
    pub d: u32,
    pub p: u64,
    pub n: u64,
    /// `r_d(p²n) − r_d(n)`.
    pub lhs: i128,
    pub bound: f64,
    pub pass: bool,
}

/// Compare `r_d(p²n) − r_d(n)` against `8(p + p²)n` (`d = 4`, odd `n`) or
/// against `C·n^{d/2−1}` with a caller-supplied `C` (`d ≥ 5`).
pub fn difference_check(
    d: u32,
    p: u64,
    n: u64,
    constant: Option<f64>,
    limits: &Limits,
) -> Result<DifferenceRecord> {
    if p < 3 || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    if n == 0 {
        return domain("difference check requires n >= 1");
    }
    let big = n
        .checked_mul(p * p)
        .ok_or_else(|| Error::Range(format!("{p}²·{n} overflows")))?;
    let (lhs, bound) = match d {
        4 => {
            if n % 2 == 0 {
                return domain("the d = 4 difference bound needs odd n");
            }
            let lhs = r4_jacobi(big)? as i128 - r4_jacobi(n)? as i128;
            (lhs, 8.0 * (p + p * p) as f64 * n as f64)
        }
        d if d >= 5 => {
            let c = constant.ok_or_else(|| {
                Error::Domain("d >= 5 needs an explicit constant C".into())
            })?;
            let r = count_range(d as usize, big, limits)?;
            let lhs = r[big as usize] as i128 - r[n as usize] as i128;
            (lhs, c * (n as f64).powf(d as f64 / 2.0 - 1.0))
        }
        _ => return domain(format!("difference check requires d >= 4, got {d}")),
    };
    Ok(DifferenceRecord {
        d,
        p,
        n,
        lhs,
        bound,
        pass: lhs as f64 >= bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaRecord {
    pub value: Complex64,
    pub expected: Complex64,
    pub pass: bool,
}

fn record(value: Complex64, expected: Complex64, tol: f64) -> LemmaRecord {
    LemmaRecord {
        value,
        expected,
        pass: (value - expected).norm() <= tol * expected.norm().max(1.0),
    }
}

/// `p^{d−2} δ_{p,d}(p²n) − δ_{p,d}(n)` against `(p^{d−2}−1)·C_{p,d}` (even `d`)
/// or `(p^{d−2}−1)·F_{p,d}` (odd `d`).
pub fn lemma316_check(p: u64, d: u32, n: u64) -> Result<LemmaRecord> {
    check_odd_prime(p)?;
    if d < 3 {
        return domain(format!("requires d >= 3, got {d}"));
    }
    let big = n
        .checked_mul(p * p)
        .ok_or_else(|| Error::Range(format!("{p}²·{n} overflows")))?;
    let scale = (p as f64).powi(d as i32 - 2);
    let value = scale * local_density(p, d, big)?.delta - local_density(p, d, n)?.delta;
    let k = density_constants(p, d);
    let expected = (scale - 1.0) * if d % 2 == 0 { k.c } else { k.f };
    Ok(record(Complex64::new(value, 0.0), Complex64::new(expected, 0.0), 1e-9))
}

/// `Σ_{a ∈ (Z/p^hZ)*} e^{−2πi na/p^h}` at `h = ord_p(n) + 1`, against `−p^{ord_p(n)}`.
pub fn unit_character_sum_check(p: u64, n: u64, cap: u128) -> Result<LemmaRecord> {
    check_odd_prime(p)?;
    let split = p_adic_split(n as u128, p)?;
    let q = crate::arith::checked_pow(p, split.ord + 1)?;
    check_cap("character sum modulus", q, cap)?;
    let nq = n as u128 % q;
    let value: Complex64 = (1..q)
        .filter(|a| a % p as u128 != 0)
        .map(|a| unit_root(reduce(-((nq * a % q) as i128), q), q))
        .sum();
    let expected = -((p as f64).powi(split.ord as i32));
    Ok(record(value, Complex64::new(expected, 0.0), 1e-9))
}

/// The `(a/p)`-twisted sum at `h ≥ 2`, `h ≥ ord_p(n) + 1`: it equals
/// `p^{ord+1/2} ε_p (−n'/p)` when `h = ord + 1` and vanishes beyond.
pub fn twisted_character_sum_check(p: u64, h: u32, n: u64, cap: u128) -> Result<LemmaRecord> {
    check_odd_prime(p)?;
    let split = p_adic_split(n as u128, p)?;
    if h < 2 || h < split.ord + 1 {
        return domain(format!("need h >= 2 and h >= ord_p(n) + 1 = {}", split.ord + 1));
    }
    let q = crate::arith::checked_pow(p, h)?;
    check_cap("character sum modulus", q, cap)?;
    let pi = OddInt::new(p as i128)?;
    let nq = n as u128 % q;
    let value: Complex64 = (1..q)
        .filter(|a| a % p as u128 != 0)
        .map(|a| {
            jacobi_symbol(a as i128, pi) as f64 * unit_root(reduce(-((nq * a % q) as i128), q), q)
        })
        .sum();
    let expected = if h == split.ord + 1 {
        epsilon(pi)
            * (p as f64).powf(split.ord as f64 + 0.5)
            * unit_symbol(p, split.unit)?
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(record(value, expected, 1e-9))
}
