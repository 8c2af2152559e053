//! Exact integer and symbol arithmetic.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// A nonzero odd integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OddInt(i128);

impl OddInt {
    pub fn new(value: i128) -> Result<Self> {
        if value % 2 == 0 {
            return domain(format!("{value} is not odd"));
        }
        Ok(OddInt(value))
    }

    pub fn get(self) -> i128 {
        self.0
    }
}

impl TryFrom<i128> for OddInt {
    type Error = Error;
    fn try_from(value: i128) -> Result<Self> {
        OddInt::new(value)
    }
}

impl TryFrom<i64> for OddInt {
    type Error = Error;
    fn try_from(value: i64) -> Result<Self> {
        OddInt::new(value as i128)
    }
}

/// `n = p^ord · unit` with `p ∤ unit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PAdicSplit {
    pub p: u64,
    pub n: u128,
    pub ord: u32,
    pub unit: u128,
}

/// Extended Jacobi symbol `(c/d)`.
///
/// For `d > 0` this is the usual Jacobi symbol, with `(0/1) = 1`. For `d < 0`
/// and `c ≠ 0` it is `sign(c)·(c/−d)`, and `(0/−1) = 1`.
pub fn jacobi_symbol(c: i128, d: OddInt) -> i32 {
    let d = d.get();
    if d < 0 {
        if c == 0 {
            return if d == -1 { 1 } else { 0 };
        }
        let s = if c < 0 { -1 } else { 1 };
        return s * jacobi_positive(c, d.unsigned_abs());
    }
    jacobi_positive(c, d as u128)
}

fn jacobi_positive(c: i128, d: u128) -> i32 {
    debug_assert!(d % 2 == 1);
    let mut a = c.rem_euclid(d as i128) as u128;
    let mut n = d;
    let mut t = 1;
    while a != 0 {
        let z = a.trailing_zeros();
        a >>= z;
        if z % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            t = -t;
        }
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// `ε_d`: `1` if `d ≡ 1 mod 4`, `i` if `d ≡ 3 mod 4`.
pub fn epsilon(d: OddInt) -> Complex64 {
    if d.get().rem_euclid(4) == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    }
}

/// Split off the largest power of `p` dividing `n`.
pub fn p_adic_split(n: u128, p: u64) -> Result<PAdicSplit> {
    if n == 0 {
        return domain("ord_p(0) is undefined");
    }
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let pp = p as u128;
    let mut unit = n;
    let mut ord = 0;
    while unit % pp == 0 {
        unit /= pp;
        ord += 1;
    }
    Ok(PAdicSplit { p, n, ord, unit })
}

/// The partner `j′ ∈ [1, p−1]` with `4jj′ + 1 ≡ 0 mod p`, and `k_j = (4jj′+1)/p`.
pub fn j_prime_k(j: u64, p: u64) -> Result<(u64, u64)> {
    if p < 3 || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    if j == 0 || j >= p {
        return domain(format!("j = {j} outside [1, {}]", p - 1));
    }
    // j′ ≡ −(4j)^{-1} mod p
    let inv = mod_inverse((4 * j as u128 % p as u128) as u64, p).expect("p odd, j unit");
    let jp = (p - inv) % p;
    let k = (4 * j as u128 * jp as u128 + 1) / p as u128;
    Ok((jp, k as u64))
}

/// `a^e mod m`.
pub fn mod_pow(a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m = m as u128;
    let mut base = a as u128 % m;
    let mut acc: u128 = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller–Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes `≤ n`.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut k = i * i;
            while k <= n {
                sieve[k] = false;
                k += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Prime factorisation by trial division, as `(prime, exponent)` pairs.
pub fn factorize(mut n: u128) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut q: u128 = 2;
    while q * q <= n {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q as u64, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n as u64, 1));
    }
    out
}

/// `⌊√n⌋`.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x.checked_mul(x).map_or(true, |s| s > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|s| s <= n) {
        x += 1;
    }
    x
}

/// `p^e` as `u128`, or a range error.
pub fn checked_pow(p: u64, e: u32) -> Result<u128> {
    (p as u128)
        .checked_pow(e)
        .ok_or_else(|| Error::Range(format!("{p}^{e} overflows 128 bits")))
}
