//! Distribution of sphere points mod `p` over the finite quadric they land on.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{domain, Error, Result};
use crate::lattice::{quadric_indices, residue_count_table, residue_histogram, Limits, ResidueVector};
use crate::theta::{cusp_check, theta_coeffs, TestFunction};

/// Normalised counts of `X_d(n) mod p` on `X_{p,d}(n mod p)`.
///
/// When `p | n` the points of `(pZ)^d` are dropped and the origin is removed
/// from the support.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalMeasure {
    pub p: u64,
    pub d: usize,
    pub a: u64,
    pub n: u64,
    /// Encoded residue vectors, ascending.
    pub support: Vec<usize>,
    /// Masses aligned with `support`; all zero when the measure is empty.
    pub masses: Vec<f64>,
    pub points_counted: u64,
}

impl EmpiricalMeasure {
    /// Build from per-class counts of `X_d(n)` (indexed by encoded residue).
    pub fn from_counts(p: u64, d: usize, n: u64, counts: &[u64], limits: &Limits) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return domain(format!("{p} is not an odd prime"));
        }
        if n == 0 {
            return domain("n must be at least 1");
        }
        let a = n % p;
        let mut support = quadric_indices(p, d, a, limits)?;
        if a == 0 {
            support.retain(|&i| i != 0);
        }
        let points_counted: u64 = support.iter().map(|&i| counts[i]).sum();
        let masses = if points_counted == 0 {
            vec![0.0; support.len()]
        } else {
            support.iter().map(|&i| counts[i] as f64 / points_counted as f64).collect()
        };
        Ok(EmpiricalMeasure {
            p,
            d,
            a,
            n,
            support,
            masses,
            points_counted,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.points_counted == 0
    }

    pub fn mass_of(&self, x: &ResidueVector) -> f64 {
        self.support
            .binary_search(&x.encode())
            .map_or(0.0, |k| self.masses[k])
    }

    /// The measure pushed forward by `x ↦ −x`.
    pub fn negated(&self) -> Self {
        let mut pairs: Vec<(usize, f64)> = self
            .support
            .iter()
            .zip(&self.masses)
            .map(|(&i, &m)| (crate::lattice::negate_index(i, self.d, self.p), m))
            .collect();
        pairs.sort_by_key(|&(i, _)| i);
        EmpiricalMeasure {
            support: pairs.iter().map(|&(i, _)| i).collect(),
            masses: pairs.iter().map(|&(_, m)| m).collect(),
            ..self.clone()
        }
    }
}

/// Empirical measure of `X_d(n)` reduced mod `p`, by enumeration.
pub fn empirical_measure(d: usize, n: u64, p: u64, limits: &Limits) -> Result<EmpiricalMeasure> {
    if p < 3 || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    let hist = residue_histogram(d, n, p, n % p == 0, limits)?;
    EmpiricalMeasure::from_counts(p, d, n, &hist.counts, limits)
}

fn deviations(mu: &EmpiricalMeasure) -> Result<impl Iterator<Item = f64> + '_> {
    if mu.is_empty() {
        return Err(Error::Empty(format!("no lattice points for n = {}", mu.n)));
    }
    let u = 1.0 / mu.support.len() as f64;
    Ok(mu.masses.iter().map(move |&m| (m - u).abs()))
}

/// `½ Σ_x |μ(x) − 1/|support||`.
pub fn tv_to_uniform(mu: &EmpiricalMeasure) -> Result<f64> {
    Ok(0.5 * deviations(mu)?.sum::<f64>())
}

/// `max_x |μ(x) − 1/|support||`.
pub fn sup_deviation(mu: &EmpiricalMeasure) -> Result<f64> {
    Ok(deviations(mu)?.fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiscrepancyRecord {
    pub d: usize,
    pub p: u64,
    pub a: u64,
    pub n: u64,
    pub points_counted: u64,
    pub tv: f64,
    pub sup_dev: f64,
}

pub fn discrepancy(mu: &EmpiricalMeasure) -> Result<DiscrepancyRecord> {
    Ok(DiscrepancyRecord {
        d: mu.d,
        p: mu.p,
        a: mu.a,
        n: mu.n,
        points_counted: mu.points_counted,
        tv: tv_to_uniform(mu)?,
        sup_dev: sup_deviation(mu)?,
    })
}

/// `c_n(f) / r_d(n)`; when `p | n` both sides drop the points of `(pZ)^d`.
pub fn weyl_sum(f: &TestFunction, n: u64, limits: &Limits) -> Result<Complex64> {
    let p = f.p();
    if p < 3 {
        return domain("Weyl sums are taken for odd p");
    }
    let hist = residue_histogram(f.d(), n, p, n > 0 && n % p == 0, limits)?;
    let total = hist.total();
    if total == 0 {
        return Err(Error::Empty(format!("no lattice points for n = {n}")));
    }
    let c: Complex64 = hist
        .counts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| f.at_index(i) * k as f64)
        .sum();
    Ok(c / total as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Any,
    Odd,
    Even,
}

impl Parity {
    fn admits(self, n: u64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => n % 2 == 1,
            Parity::Even => n % 2 == 0,
        }
    }
}

/// Summary of one window `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowSummary {
    pub lo: u64,
    pub hi: u64,
    pub admissible: usize,
    pub median_tv: f64,
    pub max_tv: f64,
    pub median_sup_dev: f64,
    pub undersampled: bool,
}

/// Windows with fewer admissible `n` are flagged.
pub const MIN_WINDOW_SAMPLES: usize = 30;

/// `[2^k, 2^{k+1})` for `k` in `ks`.
pub fn dyadic_windows(ks: std::ops::RangeInclusive<u32>) -> Vec<(u64, u64)> {
    ks.map(|k| (1u64 << k, 1u64 << (k + 1))).collect()
}

fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(|a, b| a.total_cmp(b));
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        0.5 * (values[m - 1] + values[m])
    }
}

/// Discrepancy of every admissible `n` (`n ≡ a mod p`, parity filter) in the
/// windows, in ascending `n`.
pub fn decay_records(
    d: usize,
    p: u64,
    a: u64,
    windows: &[(u64, u64)],
    parity: Parity,
    limits: &Limits,
) -> Result<Vec<Vec<DiscrepancyRecord>>> {
    if d < 4 {
        return domain(format!("decay studies need d >= 4, got {d}"));
    }
    if d == 4 && parity != Parity::Odd {
        return domain("d = 4 requires the odd parity filter");
    }
    if p < 3 || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    if a >= p {
        return domain(format!("level {a} out of range for p = {p}"));
    }
    if windows.iter().any(|&(lo, hi)| lo == 0 || hi < lo) {
        return domain("windows must be non-empty ranges of positive n");
    }
    let top = windows.iter().map(|&(_, hi)| hi).max().unwrap_or(1);
    let table = residue_count_table(d, p, top.saturating_sub(1), limits)?;
    windows
        .iter()
        .map(|&(lo, hi)| {
            let ns: Vec<u64> = (lo..hi).filter(|&n| n % p == a && parity.admits(n)).collect();
            ns.par_iter()
                .map(|&n| {
                    let mut counts = table.row(n).to_vec();
                    if a == 0 {
                        counts[0] = 0;
                    }
                    let mu = EmpiricalMeasure::from_counts(p, d, n, &counts, limits)?;
                    discrepancy(&mu)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Median and maximum discrepancy per window.
pub fn decay_study(
    d: usize,
    p: u64,
    a: u64,
    windows: &[(u64, u64)],
    parity: Parity,
    limits: &Limits,
) -> Result<Vec<WindowSummary>> {
    let records = decay_records(d, p, a, windows, parity, limits)?;
    Ok(windows
        .iter()
        .zip(records)
        .map(|(&(lo, hi), rows)| {
            let mut tv: Vec<f64> = rows.iter().map(|r| r.tv).collect();
            let mut sup: Vec<f64> = rows.iter().map(|r| r.sup_dev).collect();
            WindowSummary {
                lo,
                hi,
                admissible: rows.len(),
                median_tv: median(&mut tv),
                max_tv: tv.iter().copied().fold(f64::NAN, f64::max),
                median_sup_dev: median(&mut sup),
                undersampled: rows.len() < MIN_WINDOW_SAMPLES,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: u64,
    pub abs_c: f64,
    /// `|c_n| / n^{d/4}`.
    pub hecke_ratio: f64,
    /// `|c_n| / n^{3/4}`.
    pub kloosterman_ratio: f64,
}

/// Scaling table of the coefficients of a cusp-form theta series, `1 ≤ n ≤ N`.
pub fn coeff_growth_scan(f: &TestFunction, nmax: u64, limits: &Limits) -> Result<Vec<GrowthRow>> {
    let report = cusp_check(f);
    if !report.is_cusp {
        return domain(format!(
            "test function is not a cusp function ({})",
            report.failing_condition.unwrap_or_default()
        ));
    }
    let series = theta_coeffs(f, nmax, limits)?;
    let dq = f.d() as f64 / 4.0;
    Ok((1..=nmax)
        .map(|n| {
            let abs_c = series.c[n as usize].norm();
            let nf = n as f64;
            GrowthRow {
                n,
                abs_c,
                hecke_ratio: abs_c / nf.powf(dq),
                kloosterman_ratio: abs_c / nf.powf(0.75),
            }
        })
        .collect())
}
