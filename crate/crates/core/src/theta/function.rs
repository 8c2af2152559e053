//! Test functions `f : (Z/pZ)^d → C` and the operators acting on them.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::is_prime;
use crate::error::{domain, Result};
use crate::lattice::{level_modulus, negate_index, quadric_level, table_size, Limits};

/// A dense complex function on `(Z/pZ)^d`, indexed base `p` with coordinate 0
/// least significant.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    p: u64,
    d: usize,
    values: Vec<Complex64>,
    even: bool,
}

/// `e^{2πi k/m}` for `k` reduced mod `m`.
pub(crate) fn root(k: u64, m: u64) -> Complex64 {
    let angle = 2.0 * PI * k as f64 / m as f64;
    Complex64::new(angle.cos(), angle.sin())
}

impl TestFunction {
    /// Wrap `values`; the even flag is set only if `f(−x) = f(x)` holds exactly.
    pub fn new(p: u64, d: usize, values: Vec<Complex64>, limits: &Limits) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        if d == 0 {
            return domain("dimension must be at least 1");
        }
        let size = table_size(p, d, limits.max_entries, "test function entries")?;
        if values.len() != size {
            return domain(format!("expected {size} values, got {}", values.len()));
        }
        let mut f = TestFunction {
            p,
            d,
            values,
            even: false,
        };
        f.even = f.is_symmetric();
        Ok(f)
    }

    pub fn zeros(p: u64, d: usize, limits: &Limits) -> Result<Self> {
        let size = table_size(p, d, limits.max_entries, "test function entries")?;
        Self::new(p, d, vec![Complex64::new(0.0, 0.0); size], limits)
    }

    pub fn constant(p: u64, d: usize, c: Complex64, limits: &Limits) -> Result<Self> {
        let size = table_size(p, d, limits.max_entries, "test function entries")?;
        Self::new(p, d, vec![c; size], limits)
    }

    pub fn from_fn<F: FnMut(&[u64]) -> Complex64>(
        p: u64,
        d: usize,
        limits: &Limits,
        mut g: F,
    ) -> Result<Self> {
        let size = table_size(p, d, limits.max_entries, "test function entries")?;
        let mut coords = vec![0u64; d];
        let values = (0..size)
            .map(|i| {
                decode_into(i, p, &mut coords);
                g(&coords)
            })
            .collect();
        Self::new(p, d, values, limits)
    }

    /// Indicator of a single residue vector.
    pub fn indicator(p: u64, d: usize, x: &[u64], limits: &Limits) -> Result<Self> {
        if x.len() != d || x.iter().any(|&c| c >= p) {
            return domain("indicator point is not in (Z/pZ)^d");
        }
        Self::from_fn(p, d, limits, |y| {
            if y == x {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Seeded entries uniform in `[0, 1) + [0, 1)i`.
    pub fn random(p: u64, d: usize, seed: u64, limits: &Limits) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::from_fn(p, d, limits, |_| Complex64::new(rng.gen(), rng.gen()))
    }

    /// `random(...)` followed by the even projection.
    pub fn random_even(p: u64, d: usize, seed: u64, limits: &Limits) -> Result<Self> {
        Ok(Self::random(p, d, seed, limits)?.even_part())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn at(&self, x: &[u64]) -> Complex64 {
        self.values[crate::lattice::encode(x, self.p)]
    }

    pub fn at_index(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    fn is_symmetric(&self) -> bool {
        (0..self.values.len()).all(|i| self.values[i] == self.values[negate_index(i, self.d, self.p)])
    }

    fn map_indexed<F: FnMut(usize, Complex64) -> Complex64>(&self, mut g: F) -> Self {
        let values: Vec<Complex64> = self.values.iter().enumerate().map(|(i, &v)| g(i, v)).collect();
        let mut out = TestFunction {
            p: self.p,
            d: self.d,
            values,
            even: false,
        };
        out.even = out.is_symmetric();
        out
    }

    /// `(f(x) + f(−x)) / 2`.
    pub fn even_part(&self) -> Self {
        self.map_indexed(|i, v| (v + self.values[negate_index(i, self.d, self.p)]) * 0.5)
    }

    /// `(f(x) − f(−x)) / 2`.
    pub fn odd_part(&self) -> Self {
        self.map_indexed(|i, v| (v - self.values[negate_index(i, self.d, self.p)]) * 0.5)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_indexed(|_, v| v * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.p != other.p || self.d != other.d {
            return domain("test functions live on different spaces");
        }
        Ok(self.map_indexed(|i, v| v + other.values[i]))
    }

    /// `Σ |f(x)|`.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    pub fn max_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `Q(x, x) mod p` (mod 4 for `p = 2`) for the point with index `i`.
    pub fn level_of(&self, i: usize) -> u64 {
        quadric_level(i, self.d, self.p)
    }

    /// `Σ_{x ∈ X_{p,d}(a)} f(x)` for every level `a`.
    pub fn level_sums(&self) -> Vec<Complex64> {
        let mut sums = vec![Complex64::new(0.0, 0.0); level_modulus(self.p) as usize];
        for (i, &v) in self.values.iter().enumerate() {
            sums[self.level_of(i) as usize] += v;
        }
        sums
    }

    /// `L^k f (x) = e^{−2πi k Q(x,x)/p} f(x)`.
    pub fn op_l(&self, k: i64) -> Self {
        let p = self.p;
        let k = k.rem_euclid(p as i64) as u64;
        self.map_indexed(|i, v| {
            let q = quadric_level(i, self.d, p) % p;
            v * root((p - q * k % p) % p, p)
        })
    }

    /// `S_j f (x) = f(jx)` for `1 ≤ j ≤ p − 1`.
    pub fn op_s(&self, j: u64) -> Result<Self> {
        if j == 0 || j >= self.p {
            return domain(format!("j = {j} outside [1, {}]", self.p - 1));
        }
        let mut coords = vec![0u64; self.d];
        Ok(self.map_indexed(|i, _| {
            decode_into(i, self.p, &mut coords);
            for c in coords.iter_mut() {
                *c = *c * j % self.p;
            }
            self.values[crate::lattice::encode(&coords, self.p)]
        }))
    }

    /// `M f (x) = e^{−2πi Q(x,x)/4} f(x)` on `(Z/2Z)^d`.
    pub fn op_m(&self) -> Result<Self> {
        if self.p != 2 {
            return domain("the operator M is defined for p = 2 only");
        }
        Ok(self.map_indexed(|i, v| {
            let q = quadric_level(i, self.d, 2);
            v * root((4 - q) % 4, 4)
        }))
    }

    /// `F(f)(ξ) = Σ_x f(x) e^{−2πi Q(x,ξ)/p}`, one axis at a time.
    pub fn fourier(&self) -> Self {
        let p = self.p as usize;
        let roots: Vec<Complex64> = (0..p).map(|k| root(((p - k) % p) as u64, p as u64)).collect();
        let mut cur = self.values.clone();
        let mut buf = vec![Complex64::new(0.0, 0.0); p];
        let mut stride = 1usize;
        for _ in 0..self.d {
            let block = stride * p;
            for base in (0..cur.len()).step_by(block) {
                for off in 0..stride {
                    for (xi, slot) in buf.iter_mut().enumerate() {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for x in 0..p {
                            acc += cur[base + off + x * stride] * roots[x * xi % p];
                        }
                        *slot = acc;
                    }
                    for (xi, &v) in buf.iter().enumerate() {
                        cur[base + off + xi * stride] = v;
                    }
                }
            }
            stride = block;
        }
        let mut out = TestFunction {
            p: self.p,
            d: self.d,
            values: cur,
            even: false,
        };
        // The transform of an even function is even up to rounding; symmetrise
        // so the flag survives.
        if self.even {
            out = out.even_part();
        }
        out.even = out.is_symmetric();
        out
    }
}

pub(crate) fn decode_into(mut i: usize, p: u64, coords: &mut [u64]) {
    for c in coords.iter_mut() {
        *c = (i % p as usize) as u64;
        i /= p as usize;
    }
}

/// Grid used for exactly representable cusp test functions.
const DYADIC_BITS: i32 = 24;

fn dyadic(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0..1i64 << DYADIC_BITS) as f64 * (-DYADIC_BITS as f64).exp2()
}

fn round_dyadic(x: f64) -> f64 {
    let s = (DYADIC_BITS as f64).exp2();
    (x * s).round() / s
}

/// A seeded even function satisfying the cusp vanishing conditions exactly in
/// floating point: every level sum is `0.0`, `f(0) = 0` and, for `p = 2`,
/// `f(1, …, 1) = 0`.
///
/// Entries start on a dyadic grid, are even-projected, and each level has its
/// (grid-rounded) mean removed; the rounding remainder is taken off one
/// negation orbit so the level sums cancel with no rounding at all.
pub fn random_cusp(p: u64, d: usize, seed: u64, limits: &Limits) -> Result<TestFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = table_size(p, d, limits.max_entries, "test function entries")?;
    let mut re: Vec<f64> = (0..size).map(|_| dyadic(&mut rng)).collect();
    let mut im: Vec<f64> = (0..size).map(|_| dyadic(&mut rng)).collect();
    let pinned = |i: usize| i == 0 || (p == 2 && i == size - 1);
    for part in [&mut re, &mut im] {
        let snapshot = part.clone();
        for (i, v) in part.iter_mut().enumerate() {
            *v = (snapshot[i] + snapshot[negate_index(i, d, p)]) * 0.5;
        }
        for (i, v) in part.iter_mut().enumerate() {
            if pinned(i) {
                *v = 0.0;
            }
        }
        let levels = level_modulus(p) as usize;
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); levels];
        for i in (0..size).filter(|&i| !pinned(i)) {
            members[quadric_level(i, d, p) as usize].push(i);
        }
        for group in members.iter().filter(|g| !g.is_empty()) {
            let sum: f64 = group.iter().map(|&i| part[i]).sum();
            let mean = round_dyadic(sum / group.len() as f64);
            for &i in group {
                part[i] -= mean;
            }
            let rest: f64 = group.iter().map(|&i| part[i]).sum();
            let anchor = group[0];
            let partner = negate_index(anchor, d, p);
            if partner == anchor {
                part[anchor] -= rest;
            } else {
                part[anchor] -= rest * 0.5;
                part[partner] -= rest * 0.5;
            }
        }
    }
    let values = re
        .into_iter()
        .zip(im)
        .map(|(a, b)| Complex64::new(a, b))
        .collect();
    TestFunction::new(p, d, values, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn max_diff(a: &TestFunction, b: &TestFunction) -> f64 {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    // Oracle: the defining double sum, no axis splitting.
    fn fourier_direct(f: &TestFunction) -> Vec<Complex64> {
        let (p, d) = (f.p(), f.d());
        let mut x = vec![0u64; d];
        let mut xi = vec![0u64; d];
        (0..f.len())
            .map(|j| {
                decode_into(j, p, &mut xi);
                (0..f.len())
                    .map(|i| {
                        decode_into(i, p, &mut x);
                        let dot: u64 = x.iter().zip(&xi).map(|(a, b)| a * b).sum::<u64>() % p;
                        f.at_index(i) * root((p - dot) % p, p)
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn fourier_examples() {
        let delta = TestFunction::indicator(3, 2, &[0, 0], &lim()).unwrap();
        let one = TestFunction::constant(3, 2, Complex64::new(1.0, 0.0), &lim()).unwrap();
        assert!(max_diff(&delta.fourier(), &one) < 1e-12);
        assert!(max_diff(&one.fourier(), &delta.scale(Complex64::new(9.0, 0.0))) < 1e-12);
        for p in [2u64, 3, 5, 7] {
            for d in 1..=3 {
                let f = TestFunction::random(p, d, 11 + p + d as u64, &lim()).unwrap();
                let direct = fourier_direct(&f);
                let fast = f.fourier();
                for (a, b) in fast.values().iter().zip(&direct) {
                    assert!((a - b).norm() < 1e-9);
                }
                let twice = fast.fourier();
                let pd = (p as f64).powi(d as i32);
                for i in 0..f.len() {
                    let want = f.at_index(negate_index(i, d, p)) * pd;
                    assert!((twice.at_index(i) - want).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn operator_algebra() {
        for p in [3u64, 5, 7] {
            let f = TestFunction::random(p, 2, p, &lim()).unwrap();
            let mut g = f.clone();
            for _ in 0..p {
                g = g.op_l(1);
            }
            assert!(max_diff(&g, &f) < 1e-12);
            assert_eq!(f.op_s(1).unwrap(), f);
            for j1 in 1..p {
                for j2 in 1..p {
                    let lhs = f.op_s(j2).unwrap().op_s(j1).unwrap();
                    let rhs = f.op_s(j1 * j2 % p).unwrap();
                    assert!(max_diff(&lhs, &rhs) < 1e-15);
                }
            }
        }
        let f = TestFunction::random(5, 2, 3, &lim()).unwrap();
        let jinv = 3;
        let lhs = f.op_s(jinv).unwrap().op_l(1).op_s(2).unwrap();
        assert!(max_diff(&lhs, &f.op_l(4)) < 1e-12);
        assert!(f.op_s(0).is_err() && f.op_s(5).is_err());
        assert!(f.op_m().is_err());
        let g = TestFunction::random(2, 3, 1, &lim()).unwrap();
        let mut h = g.clone();
        for _ in 0..4 {
            h = h.op_m().unwrap();
        }
        assert!(max_diff(&h, &g) < 1e-12);
    }

    #[test]
    fn evenness_flags() {
        let f = TestFunction::random(5, 3, 9, &lim()).unwrap();
        assert!(!f.is_even());
        let e = f.even_part();
        assert!(e.is_even());
        assert!(e.op_l(2).is_even());
        assert!(e.op_s(3).unwrap().is_even());
        assert!(e.fourier().is_even());
        let o = f.odd_part();
        assert!(max_diff(&e.add(&o).unwrap(), &f) < 1e-15);
        assert!(TestFunction::random(2, 4, 1, &lim()).unwrap().is_even());
    }

    #[test]
    fn cusp_functions_are_exact() {
        for p in [2u64, 3, 5] {
            for d in 1..=5 {
                let f = random_cusp(p, d, 40 + d as u64, &lim()).unwrap();
                assert!(f.is_even());
                assert!(f.level_sums().iter().all(|s| *s == Complex64::new(0.0, 0.0)));
                assert_eq!(f.at_index(0), Complex64::new(0.0, 0.0));
                if p == 2 {
                    assert_eq!(f.at_index(f.len() - 1), Complex64::new(0.0, 0.0));
                }
            }
        }
        let a = random_cusp(5, 3, 1, &lim()).unwrap();
        let b = random_cusp(5, 3, 1, &lim()).unwrap();
        assert_eq!(a, b);
        assert!(a.max_norm() > 0.1);
    }

    #[test]
    fn construction_errors() {
        assert!(TestFunction::new(4, 2, vec![Complex64::new(0.0, 0.0); 16], &lim()).is_err());
        assert!(TestFunction::new(3, 2, vec![Complex64::new(0.0, 0.0); 8], &lim()).is_err());
        let tiny = Limits {
            max_points: 10,
            max_entries: 10,
        };
        assert!(TestFunction::zeros(3, 3, &tiny).is_err());
        assert!(TestFunction::indicator(3, 2, &[3, 0], &lim()).is_err());
    }
}
