//! Integer points on spheres `Σ x_i² = n` and points of finite quadrics.

use crate::arith::{is_prime, isqrt};
use crate::error::{check_cap, domain, Error, Result};

/// Resource caps shared by enumeration and dense tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of lattice points visited by one enumeration.
    pub max_points: u128,
    /// Maximum number of entries in a dense table.
    pub max_entries: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 100_000_000,
            max_entries: 10_000_000,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            max_points: u128::MAX,
            max_entries: u128::MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub coords: Vec<i64>,
}

impl LatticePoint {
    pub fn norm(&self) -> u128 {
        self.coords.iter().map(|&x| (x as i128 * x as i128) as u128).sum()
    }

    pub fn reduce(&self, m: u64) -> ResidueVector {
        ResidueVector {
            coords: self
                .coords
                .iter()
                .map(|&x| x.rem_euclid(m as i64) as u64)
                .collect(),
            modulus: m,
        }
    }
}

/// A vector of residues mod `modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueVector {
    pub coords: Vec<u64>,
    pub modulus: u64,
}

impl ResidueVector {
    /// Base-`m` index, coordinate 0 least significant.
    pub fn encode(&self) -> usize {
        encode(&self.coords, self.modulus)
    }

    pub fn decode(index: usize, d: usize, modulus: u64) -> Self {
        let mut coords = Vec::with_capacity(d);
        let mut rest = index;
        for _ in 0..d {
            coords.push((rest % modulus as usize) as u64);
            rest /= modulus as usize;
        }
        ResidueVector { coords, modulus }
    }
}

pub(crate) fn encode(coords: &[u64], m: u64) -> usize {
    coords
        .iter()
        .rev()
        .fold(0usize, |acc, &c| acc * m as usize + c as usize)
}

/// Index of `−x` given the index of `x`, in `(Z/mZ)^d`.
pub fn negate_index(index: usize, d: usize, m: u64) -> usize {
    let m = m as usize;
    let mut rest = index;
    let mut out = 0;
    let mut place = 1;
    for _ in 0..d {
        let c = rest % m;
        rest /= m;
        out += ((m - c) % m) * place;
        place *= m;
    }
    out
}

/// `m^d` as a table size, checked against `cap`.
pub(crate) fn table_size(m: u64, d: usize, cap: u128, what: &'static str) -> Result<usize> {
    let size = (m as u128)
        .checked_pow(d as u32)
        .ok_or_else(|| Error::Range(format!("{m}^{d} overflows")))?;
    check_cap(what, size, cap)?;
    Ok(size as usize)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereCount {
    pub d: usize,
    pub n: u64,
    pub count: u64,
}

/// Visit every `x ∈ Z^d` with `Σ x_i² = n` once, in lexicographic order.
///
/// Fails with a resource error as soon as the number of points would exceed
/// `limits.max_points`; points visited before that are not rolled back.
pub fn enumerate_sphere<F>(d: usize, n: u64, limits: &Limits, mut visit: F) -> Result<SphereCount>
where
    F: FnMut(&[i64]),
{
    if d == 0 {
        return domain("dimension must be at least 1");
    }
    let mut coords = vec![0i64; d];
    let mut count: u64 = 0;
    descend(&mut coords, 0, n, &mut count, limits.max_points, &mut visit)?;
    Ok(SphereCount { d, n, count })
}

/// Floor square root for budgets well inside `u64`.
#[inline]
fn isqrt_u64(n: u64) -> u64 {
    if n >= 1 << 52 {
        return isqrt(n as u128) as u64;
    }
    let mut s = (n as f64).sqrt() as u64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

fn descend<F: FnMut(&[i64])>(
    coords: &mut [i64],
    i: usize,
    budget: u64,
    count: &mut u64,
    cap: u128,
    visit: &mut F,
) -> Result<()> {
    let d = coords.len();
    if i + 1 == d {
        let s = isqrt_u64(budget);
        if s * s != budget {
            return Ok(());
        }
        let emitted = if s == 0 { 1 } else { 2 };
        check_cap("enumerated points", *count as u128 + emitted, cap)?;
        *count += emitted as u64;
        if s == 0 {
            coords[i] = 0;
            visit(coords);
        } else {
            coords[i] = -(s as i64);
            visit(coords);
            coords[i] = s as i64;
            visit(coords);
        }
        return Ok(());
    }
    if i + 2 == d {
        return tail_pair(coords, budget, count, cap, visit);
    }
    let m = isqrt_u64(budget) as i64;
    for x in -m..=m {
        coords[i] = x;
        descend(coords, i + 1, budget - (x * x) as u64, count, cap, visit)?;
    }
    Ok(())
}

/// The last two coordinates: solve `x² + y² = budget` for `x ≥ 0` once and
/// emit the signed solutions in lexicographic order.
fn tail_pair<F: FnMut(&[i64])>(
    coords: &mut [i64],
    budget: u64,
    count: &mut u64,
    cap: u128,
    visit: &mut F,
) -> Result<()> {
    let d = coords.len();
    let mut sols: Vec<(i64, i64)> = Vec::new();
    for x in 0..=isqrt_u64(budget) {
        let rest = budget - x * x;
        let y = isqrt_u64(rest);
        if y * y == rest {
            sols.push((x as i64, y as i64));
        }
    }
    let emitted: u64 = sols
        .iter()
        .map(|&(x, y)| (if x == 0 { 1 } else { 2 }) * (if y == 0 { 1 } else { 2 }))
        .sum();
    check_cap("enumerated points", *count as u128 + emitted as u128, cap)?;
    *count += emitted;
    let ordered = sols
        .iter()
        .rev()
        .filter(|&&(x, _)| x > 0)
        .map(|&(x, y)| (-x, y))
        .chain(sols.iter().copied());
    for (x, y) in ordered {
        coords[d - 2] = x;
        if y == 0 {
            coords[d - 1] = 0;
            visit(coords);
        } else {
            coords[d - 1] = -y;
            visit(coords);
            coords[d - 1] = y;
            visit(coords);
        }
    }
    Ok(())
}

/// All points of `X_d(n)` in enumeration order.
pub fn sphere_points(d: usize, n: u64, limits: &Limits) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    enumerate_sphere(d, n, limits, |x| {
        out.push(LatticePoint { coords: x.to_vec() })
    })?;
    Ok(out)
}

/// `r_d(0), …, r_d(N)` by repeated convolution with the series of squares.
pub fn count_range(d: usize, nmax: u64, limits: &Limits) -> Result<Vec<u64>> {
    if d == 0 {
        return domain("dimension must be at least 1");
    }
    check_cap("count table entries", nmax as u128 + 1, limits.max_entries)?;
    let len = nmax as usize + 1;
    let mut squares = vec![0u64; len];
    let mut x = 0u64;
    while x * x <= nmax {
        squares[(x * x) as usize] = if x == 0 { 1 } else { 2 };
        x += 1;
    }
    let roots: Vec<usize> = (0..len).filter(|&m| squares[m] != 0).collect();
    let mut acc = squares.clone();
    for _ in 1..d {
        let mut next = vec![0u64; len];
        for &s in &roots {
            let w = squares[s];
            for (m, &v) in acc[..len - s].iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let add = v
                    .checked_mul(w)
                    .and_then(|t| t.checked_add(next[m + s]))
                    .ok_or_else(|| Error::Range(format!("r_{d}({}) overflows u64", m + s)))?;
                next[m + s] = add;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `r_4(n) = 8(2 + (−1)^n) Σ_{d | n, d odd} d`.
pub fn r4_jacobi(n: u64) -> Result<u64> {
    if n == 0 {
        return domain("r4_jacobi requires n >= 1");
    }
    let odd = n >> n.trailing_zeros();
    let sigma: u128 = crate::arith::factorize(odd as u128)
        .into_iter()
        .map(|(q, e)| {
            let q = q as u128;
            (q.pow(e + 1) - 1) / (q - 1)
        })
        .product();
    let factor: u128 = if n % 2 == 0 { 24 } else { 8 };
    u64::try_from(factor * sigma).map_err(|_| Error::Range(format!("r_4({n}) overflows u64")))
}

/// Modulus of the level of a quadric: `p` for odd `p`, `4` for `p = 2`.
pub fn level_modulus(p: u64) -> u64 {
    if p == 2 {
        4
    } else {
        p
    }
}

/// `Q(x, x)` of the residue vector with the given index, reduced to its level.
///
/// For `p = 2` the coordinates are lifted to `{0, 1}` and the level is the
/// number of ones mod 4.
pub fn quadric_level(index: usize, d: usize, p: u64) -> u64 {
    let m = level_modulus(p);
    let mut rest = index;
    let mut q = 0u64;
    for _ in 0..d {
        let c = (rest % p as usize) as u64;
        rest /= p as usize;
        q = (q + c * c) % m;
    }
    q
}

fn check_quadric_args(p: u64, a: u64) -> Result<()> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let m = level_modulus(p);
    if a >= m {
        return domain(format!("level {a} out of range for modulus {m}"));
    }
    Ok(())
}

/// Encoded indices of `X_{p,d}(a)`, ascending.
pub fn quadric_indices(p: u64, d: usize, a: u64, limits: &Limits) -> Result<Vec<usize>> {
    check_quadric_args(p, a)?;
    let size = table_size(p, d, limits.max_entries, "quadric ambient space")?;
    Ok((0..size).filter(|&i| quadric_level(i, d, p) == a).collect())
}

/// `X_{p,d}(a) = {x ∈ (Z/pZ)^d : Q(x,x) = a}` (level mod 4 when `p = 2`).
pub fn quadric_points(p: u64, d: usize, a: u64, limits: &Limits) -> Result<Vec<ResidueVector>> {
    Ok(quadric_indices(p, d, a, limits)?
        .into_iter()
        .map(|i| ResidueVector::decode(i, d, p))
        .collect())
}

/// `|X_{p,d}(a)|` for every level `a`, by a per-coordinate convolution.
pub fn quadric_sizes(p: u64, d: usize) -> Result<Vec<u128>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let m = level_modulus(p) as usize;
    let mut one = vec![0u128; m];
    for x in 0..p {
        one[((x * x) % m as u64) as usize] += 1;
    }
    let mut acc = vec![0u128; m];
    acc[0] = 1;
    for _ in 0..d {
        let mut next = vec![0u128; m];
        for (a, &u) in acc.iter().enumerate() {
            for (b, &v) in one.iter().enumerate() {
                next[(a + b) % m] = next[(a + b) % m]
                    .checked_add(u.checked_mul(v).ok_or_else(|| Error::Range("quadric size".into()))?)
                    .ok_or_else(|| Error::Range("quadric size".into()))?;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Counts of sphere points by residue class mod `p`, indexed densely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueHistogram {
    pub p: u64,
    pub d: usize,
    pub counts: Vec<u64>,
}

impl ResidueHistogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn get(&self, x: &ResidueVector) -> u64 {
        self.counts[x.encode()]
    }

    /// Nonzero entries as `(class, count)`, ascending by encoded index.
    pub fn entries(&self) -> Vec<(ResidueVector, u64)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (ResidueVector::decode(i, self.d, self.p), c))
            .collect()
    }
}

/// Histogram of `X_d(n) mod p`, optionally dropping points of `(pZ)^d`.
pub fn residue_histogram(
    d: usize,
    n: u64,
    p: u64,
    exclude_pzd: bool,
    limits: &Limits,
) -> Result<ResidueHistogram> {
    if p < 3 || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    let size = table_size(p, d, limits.max_entries, "residue histogram")?;
    let mut counts = vec![0u64; size];
    let pi = p as i64;
    enumerate_sphere(d, n, limits, |x| {
        let idx = x
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * p as usize + c.rem_euclid(pi) as usize);
        counts[idx] += 1;
    })?;
    if exclude_pzd {
        counts[0] = 0;
    }
    Ok(ResidueHistogram { p, d, counts })
}

/// Counts `#{x ∈ X_d(n) : x ≡ r mod p}` for all `n ≤ N` and all classes `r`.
#[derive(Debug, Clone)]
pub struct ResidueCountTable {
    pub p: u64,
    pub d: usize,
    pub nmax: u64,
    classes: usize,
    counts: Vec<u64>,
}

impl ResidueCountTable {
    /// Per-class counts for radius `n`, indexed by encoded residue vector.
    pub fn row(&self, n: u64) -> &[u64] {
        let start = n as usize * self.classes;
        &self.counts[start..start + self.classes]
    }

    pub fn histogram(&self, n: u64) -> ResidueHistogram {
        ResidueHistogram {
            p: self.p,
            d: self.d,
            counts: self.row(n).to_vec(),
        }
    }
}

/// One-dimensional pieces: for each residue `a` the list of `(x², weight)`
/// with `x ≡ a mod p`, `x² ≤ N`.
pub(crate) fn square_classes(p: u64, nmax: u64) -> Vec<Vec<(usize, u64)>> {
    let mut out = vec![Vec::new(); p as usize];
    let m = isqrt(nmax as u128) as i64;
    for x in -m..=m {
        let a = x.rem_euclid(p as i64) as usize;
        let sq = (x * x) as usize;
        match out[a].iter_mut().find(|(s, _)| *s == sq) {
            Some((_, w)) => *w += 1,
            None => out[a].push((sq, 1)),
        }
    }
    out
}

/// Build the table coordinate by coordinate, never enumerating points.
pub fn residue_count_table(d: usize, p: u64, nmax: u64, limits: &Limits) -> Result<ResidueCountTable> {
    if d == 0 {
        return domain("dimension must be at least 1");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let classes = table_size(p, d, limits.max_entries, "residue classes")?;
    let len = nmax as usize + 1;
    check_cap("residue count table", classes as u128 * len as u128, limits.max_entries)?;
    let pieces = square_classes(p, nmax);
    // state[r * len + m] over the first k coordinates
    let mut state = vec![0u64; len];
    state[0] = 1;
    let mut width = 1usize;
    for _ in 0..d {
        let mut next = vec![0u64; width * p as usize * len];
        for (a, piece) in pieces.iter().enumerate() {
            for r in 0..width {
                let src = &state[r * len..(r + 1) * len];
                let dst_row = r + a * width;
                let dst = &mut next[dst_row * len..(dst_row + 1) * len];
                for &(sq, w) in piece {
                    for m in 0..len - sq {
                        let v = src[m];
                        if v != 0 {
                            dst[m + sq] = dst[m + sq]
                                .checked_add(v * w)
                                .ok_or_else(|| Error::Range("residue count overflow".into()))?;
                        }
                    }
                }
            }
        }
        state = next;
        width *= p as usize;
    }
    // transpose to n-major
    let mut counts = vec![0u64; classes * len];
    for r in 0..classes {
        for m in 0..len {
            counts[m * classes + r] = state[r * len + m];
        }
    }
    Ok(ResidueCountTable {
        p,
        d,
        nmax,
        classes,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn enumeration_examples() {
        let pts = sphere_points(3, 1, &lim()).unwrap();
        assert_eq!(pts.len(), 6);
        let mut expect = vec![
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
            vec![0, 0, 1],
            vec![0, 1, 0],
            vec![1, 0, 0],
        ];
        expect.sort();
        let got: Vec<_> = pts.iter().map(|p| p.coords.clone()).collect();
        assert_eq!(got, expect, "lexicographic order");
        assert_eq!(enumerate_sphere(4, 3, &lim(), |_| {}).unwrap().count, 32);
        for d in 1..6 {
            let pts = sphere_points(d, 0, &lim()).unwrap();
            assert_eq!(pts, vec![LatticePoint { coords: vec![0; d] }]);
        }
        assert!(enumerate_sphere(0, 3, &lim(), |_| {}).is_err());
    }

    #[test]
    fn enumeration_cap() {
        let small = Limits {
            max_points: 24,
            max_entries: 100,
        };
        let err = enumerate_sphere(4, 3, &small, |_| {}).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
        assert_eq!(enumerate_sphere(4, 2, &small, |_| {}).unwrap().count, 24);
    }

    #[test]
    fn enumerated_points_lie_on_sphere() {
        for d in 1..5 {
            for n in 0..40 {
                let mut seen = std::collections::HashSet::new();
                let c = enumerate_sphere(d, n, &lim(), |x| {
                    assert_eq!(x.iter().map(|v| v * v).sum::<i64>(), n as i64);
                    assert!(seen.insert(x.to_vec()));
                })
                .unwrap();
                assert_eq!(c.count as usize, seen.len());
            }
        }
    }

    #[test]
    fn enumeration_is_lexicographic() {
        for d in 1..6 {
            for n in [0u64, 1, 2, 5, 25, 50, 65] {
                let pts = sphere_points(d, n, &lim()).unwrap();
                assert!(pts.windows(2).all(|w| w[0].coords < w[1].coords), "d={d} n={n}");
            }
        }
    }

    // Oracle: brute force over the box [−√n, √n]^d.
    fn r_by_box(d: usize, n: u64) -> u64 {
        let m = isqrt(n as u128) as i64;
        let side = (2 * m + 1) as usize;
        let mut count = 0;
        for idx in 0..side.pow(d as u32) {
            let mut rest = idx;
            let mut s = 0i64;
            for _ in 0..d {
                let x = (rest % side) as i64 - m;
                rest /= side;
                s += x * x;
            }
            if s == n as i64 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn count_range_examples() {
        let r4 = count_range(4, 16, &lim()).unwrap();
        for n in [2, 4, 8, 16] {
            assert_eq!(r4[n], 24);
        }
        assert_eq!(count_range(1, 9, &lim()).unwrap(), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        let r5 = count_range(5, 100, &lim()).unwrap();
        for n in 0..=100u64 {
            assert_eq!(r5[n as usize], enumerate_sphere(5, n, &lim(), |_| {}).unwrap().count);
        }
        for d in 1..4 {
            let r = count_range(d, 30, &lim()).unwrap();
            for n in 0..=30u64 {
                assert_eq!(r[n as usize], r_by_box(d, n));
            }
        }
    }

    #[test]
    fn count_range_overflow_is_range_error() {
        let err = count_range(40, 2000, &lim()).unwrap_err();
        assert!(matches!(err, Error::Range(_)), "{err:?}");
        let capped = Limits {
            max_points: 10,
            max_entries: 10,
        };
        assert!(matches!(count_range(4, 100, &capped), Err(Error::Resource { .. })));
    }

    #[test]
    fn jacobi_four_squares() {
        assert_eq!(r4_jacobi(1).unwrap(), 8);
        assert_eq!(r4_jacobi(2).unwrap(), 24);
        assert_eq!(r4_jacobi(3).unwrap(), 32);
        assert!(r4_jacobi(0).is_err());
        let table = count_range(4, 5000, &lim()).unwrap();
        for n in 1..=5000u64 {
            assert_eq!(table[n as usize], r4_jacobi(n).unwrap(), "n = {n}");
        }
        for n in (1..=400u64).step_by(7) {
            assert_eq!(enumerate_sphere(4, n, &lim(), |_| {}).unwrap().count, r4_jacobi(n).unwrap());
        }
    }

    #[test]
    fn quadric_examples() {
        let pts = quadric_points(3, 2, 1, &lim()).unwrap();
        let mut got: Vec<Vec<u64>> = pts.iter().map(|v| v.coords.clone()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![2, 0]]);
        let zero = quadric_points(3, 2, 0, &lim()).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].coords, vec![0, 0]);
        let sizes: Vec<usize> = (0..4)
            .map(|a| quadric_points(2, 3, a, &lim()).unwrap().len())
            .collect();
        assert_eq!(sizes, vec![1, 3, 3, 1]);
        assert!(quadric_points(3, 2, 3, &lim()).is_err());
        assert!(quadric_points(2, 2, 4, &lim()).is_err());
        assert!(quadric_points(4, 2, 0, &lim()).is_err());
    }

    #[test]
    fn quadric_partition() {
        for p in [2u64, 3, 5, 7] {
            for d in 1..=5 {
                let m = level_modulus(p);
                let total: usize = (0..m)
                    .map(|a| quadric_points(p, d, a, &lim()).unwrap().len())
                    .sum();
                assert_eq!(total as u64, p.pow(d as u32));
                let sizes = quadric_sizes(p, d).unwrap();
                for a in 0..m {
                    assert_eq!(
                        sizes[a as usize],
                        quadric_indices(p, d, a, &lim()).unwrap().len() as u128
                    );
                }
            }
        }
    }

    #[test]
    fn histogram_examples() {
        let h = residue_histogram(2, 1, 3, false, &lim()).unwrap();
        let e: Vec<(Vec<u64>, u64)> = h.entries().into_iter().map(|(v, c)| (v.coords, c)).collect();
        assert_eq!(e.len(), 4);
        for (v, c) in &e {
            assert_eq!(*c, 1);
            assert!([vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]].contains(v));
        }
        for d in 1..5 {
            let h = residue_histogram(d, 0, 5, false, &lim()).unwrap();
            assert_eq!(h.total(), 1);
            assert_eq!(h.counts[0], 1);
        }
        let h = residue_histogram(4, 9, 3, true, &lim()).unwrap();
        assert_eq!(h.total(), r4_jacobi(9).unwrap() - r4_jacobi(1).unwrap());
        assert!(residue_histogram(2, 5, 2, false, &lim()).is_err());
    }

    #[test]
    fn table_matches_histograms() {
        for p in [3u64, 5] {
            for d in 1..=4 {
                let t = residue_count_table(d, p, 60, &lim()).unwrap();
                for n in 0..=60 {
                    let h = residue_histogram(d, n, p, false, &lim()).unwrap();
                    assert_eq!(t.row(n), &h.counts[..], "p={p} d={d} n={n}");
                }
            }
        }
    }

    #[test]
    fn negation_index() {
        for i in 0..125 {
            let v = ResidueVector::decode(i, 3, 5);
            let neg = ResidueVector {
                coords: v.coords.iter().map(|&c| (5 - c) % 5).collect(),
                modulus: 5,
            };
            assert_eq!(negate_index(i, 3, 5), neg.encode());
            assert_eq!(v.encode(), i);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]
        #[test]
        fn histogram_total_and_symmetry(d in 1usize..=5, n in 0u64..=500, pi in 0usize..2) {
            let p = [3u64, 5][pi];
            let h = residue_histogram(d, n, p, false, &lim()).unwrap();
            let r = count_range(d, n, &lim()).unwrap()[n as usize];
            prop_assert_eq!(h.total(), r);
            for (i, &c) in h.counts.iter().enumerate() {
                prop_assert_eq!(c, h.counts[negate_index(i, d, p)]);
            }
            let ex = residue_histogram(d, n, p, true, &lim()).unwrap();
            let drop = if n % (p * p) == 0 {
                count_range(d, n / (p * p), &lim()).unwrap()[(n / (p * p)) as usize]
            } else {
                0
            };
            prop_assert_eq!(ex.total(), r - drop);
        }
    }
}
