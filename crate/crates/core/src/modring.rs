//! Residues and 2x2 matrices over Z/nZ.
//!
//! Entries are always stored as canonical representatives in `[0, n)`, so
//! structural equality is equality in the ring and the derived ordering gives
//! a canonical sort order for element lists.

use std::fmt;
use std::str::FromStr;

use num::integer::{gcd, Integer};

use crate::error::{Error, Result};

/// Largest supported modulus. Products of two residues fit in a `u64`.
pub const MAX_MODULUS: u32 = 1 << 16;

fn check_modulus(n: u32) -> Result<()> {
    if n == 0 || n > MAX_MODULUS {
        return Err(Error::input(format!("modulus {n} outside 1..={MAX_MODULUS}")));
    }
    Ok(())
}

#[inline]
fn reduce(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

/// Multiplicative inverse of `x` modulo `n`, if it exists.
pub fn inv_mod(x: u32, n: u32) -> Option<u32> {
    if n == 1 {
        return Some(0);
    }
    let e = (x as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| reduce(e.x, n))
}

/// The unit group (Z/nZ)^x in increasing order.
pub fn units(n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&x| gcd(x, n) == 1).collect()
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n) == vec![(n, 1)]
}

/// |GL2(Z/nZ)| = n^4 * prod_{p | n} (1 - 1/p)(1 - 1/p^2).
pub fn gl2_order(n: u32) -> u64 {
    let mut order = (n as u64).pow(4);
    for (p, _) in factor(n as u64) {
        order = order / p * (p - 1);
        order = order / (p * p) * (p * p - 1);
    }
    order
}

/// A 2x2 matrix `[[a, b], [c, d]]` over Z/nZ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    n: u32,
    e: [u32; 4],
}

impl Mat2 {
    /// Builds a matrix from arbitrary integers, reducing each entry mod `n`.
    pub fn new(n: u32, entries: [i64; 4]) -> Result<Self> {
        check_modulus(n)?;
        Ok(Self::from_i64(n, entries))
    }

    fn from_i64(n: u32, [a, b, c, d]: [i64; 4]) -> Self {
        Mat2 {
            n,
            e: [reduce(a, n), reduce(b, n), reduce(c, n), reduce(d, n)],
        }
    }

    /// Entries already reduced into `[0, n)`.
    pub(crate) fn from_reduced(n: u32, e: [u32; 4]) -> Self {
        debug_assert!(e.iter().all(|&x| x < n));
        Mat2 { n, e }
    }

    pub fn identity(n: u32) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: u32, s: i64) -> Self {
        Self::from_i64(n, [s, 0, 0, s])
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// Entries in row-major order `[a, b, c, d]`.
    pub fn entries(&self) -> [u32; 4] {
        self.e
    }

    pub fn mul(&self, rhs: &Mat2) -> Result<Mat2> {
        if self.n != rhs.n {
            return Err(Error::input(format!("modulus mismatch: {} vs {}", self.n, rhs.n)));
        }
        Ok(self.mul_unchecked(rhs))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, rhs: &Mat2) -> Mat2 {
        let n = self.n as u64;
        let [a, b, c, d] = self.e.map(|x| x as u64);
        let [p, q, r, s] = rhs.e.map(|x| x as u64);
        Mat2 {
            n: self.n,
            e: [
                ((a * p + b * r) % n) as u32,
                ((a * q + b * s) % n) as u32,
                ((c * p + d * r) % n) as u32,
                ((c * q + d * s) % n) as u32,
            ],
        }
    }

    pub fn det(&self) -> u32 {
        let n = self.n as u64;
        let [a, b, c, d] = self.e.map(|x| x as u64);
        ((a * d % n + n - b * c % n) % n) as u32
    }

    pub fn trace(&self) -> u32 {
        ((self.e[0] as u64 + self.e[3] as u64) % self.n as u64) as u32
    }

    pub fn is_invertible(&self) -> bool {
        self.n == 1 || gcd(self.det(), self.n) == 1
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let dinv = inv_mod(self.det(), self.n)? as i64;
        let [a, b, c, d] = self.e.map(|x| x as i64);
        Some(Self::from_i64(self.n, [d * dinv, -b * dinv, -c * dinv, a * dinv]))
    }

    /// `(det, trace, inverse)` in one call.
    pub fn det_trace_inv(&self) -> (u32, u32, Option<Mat2>) {
        (self.det(), self.trace(), self.inverse())
    }

    pub fn is_scalar(&self) -> bool {
        self.e[1] == 0 && self.e[2] == 0 && self.e[0] == self.e[3]
    }

    /// Reduction to level `d`, which must divide the modulus.
    pub fn project(&self, d: u32) -> Result<Mat2> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::input(format!("{d} does not divide {}", self.n)));
        }
        Ok(Mat2 {
            n: d,
            e: self.e.map(|x| x % d),
        })
    }

    /// Splits along a coprime factorization `n = n1 * n2`.
    pub fn crt_split(&self, n1: u32, n2: u32) -> Result<(Mat2, Mat2)> {
        if n1 as u64 * n2 as u64 != self.n as u64 || gcd(n1, n2) != 1 {
            return Err(Error::input(format!(
                "{n1} * {n2} is not a coprime factorization of {}",
                self.n
            )));
        }
        Ok((self.project(n1)?, self.project(n2)?))
    }

    /// Inverse of [`Mat2::crt_split`]: the unique matrix mod `n1 * n2`
    /// reducing to `m1` and `m2`.
    pub fn crt_join(m1: &Mat2, m2: &Mat2) -> Result<Mat2> {
        let (n1, n2) = (m1.n, m2.n);
        if gcd(n1, n2) != 1 {
            return Err(Error::input(format!("moduli {n1} and {n2} are not coprime")));
        }
        let n = n1 as u64 * n2 as u64;
        if n > MAX_MODULUS as u64 {
            return Err(Error::input(format!("joined modulus {n} too large")));
        }
        // x = x1 + n1 * ((x2 - x1) * n1^{-1} mod n2)
        let n1_inv = inv_mod(n1 % n2, n2).expect("coprime moduli") as i64;
        let e = std::array::from_fn(|i| {
            let (x1, x2) = (m1.e[i] as i64, m2.e[i] as i64);
            let k = ((x2 - x1) * n1_inv).rem_euclid(n2 as i64);
            (x1 + n1 as i64 * k) as u32
        });
        Ok(Mat2 { n: n as u32, e })
    }

    /// Some matrix mod `n` reducing to `self` mod `self.modulus()`, invertible
    /// whenever `self` is. Primes of `n` not dividing the current level get the
    /// identity component.
    pub fn lift(&self, n: u32) -> Result<Mat2> {
        let d = self.n;
        if !n.is_multiple_of(d) {
            return Err(Error::input(format!("{d} does not divide {n}")));
        }
        check_modulus(n)?;
        let mut acc = Mat2::identity(1);
        for (p, k) in factor(n as u64) {
            let pk = (p as u32).pow(k);
            let local_level = gcd(pk, d);
            let local = if local_level == 1 {
                Mat2::identity(pk)
            } else {
                let r = self.project(local_level)?;
                Mat2::from_reduced(pk, r.e)
            };
            acc = Mat2::crt_join(&acc, &local)?;
        }
        Ok(acc)
    }

    /// Parses the row-major literal `a,b;c,d`, reducing entries mod `n`.
    pub fn parse(s: &str, n: u32) -> Result<Mat2> {
        let rows: Vec<&str> = s.trim().split(';').collect();
        if rows.len() != 2 {
            return Err(Error::input(format!(
                "matrix literal '{s}': expected 2 rows separated by ';', found {}",
                rows.len()
            )));
        }
        let mut entries = [0i64; 4];
        for (r, row) in rows.iter().enumerate() {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(Error::input(format!(
                    "matrix literal '{s}': row {} has {} entries, expected 2",
                    r + 1,
                    cols.len()
                )));
            }
            for (c, col) in cols.iter().enumerate() {
                entries[2 * r + c] = col.trim().parse::<i64>().map_err(|_| {
                    Error::input(format!(
                        "matrix literal '{s}': entry ({},{}) '{}' is not an integer",
                        r + 1,
                        c + 1,
                        col.trim()
                    ))
                })?;
            }
        }
        Mat2::new(n, entries)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.e;
        write!(f, "{a},{b};{c},{d}")
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}] mod {}", self.n)
    }
}

/// `n` as a level for [`FromStr`]-style parsing helpers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Level(pub u32);

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n: u32 = s
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("'{s}' is not a positive integer level")))?;
        check_modulus(n)?;
        Ok(Level(n))
    }
}

/// Every element of GL2(Z/nZ) in canonical order, by direct enumeration.
pub fn gl2_elements(n: u32) -> Vec<Mat2> {
    let mut out = Vec::with_capacity(gl2_order(n) as usize);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let m = Mat2::from_reduced(n, [a, b, c, d]);
                    if m.is_invertible() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// The subgroup of (Z/nZ)^x generated by `gens`.
pub fn unit_span(gens: &[u32], n: u32) -> Vec<u32> {
    let mut seen = vec![false; n as usize];
    let mut span = vec![1 % n];
    seen[(1 % n) as usize] = true;
    let mut i = 0;
    while i < span.len() {
        for &g in gens {
            let y = (span[i] as u64 * g as u64 % n as u64) as u32;
            if !seen[y as usize] {
                seen[y as usize] = true;
                span.push(y);
            }
        }
        i += 1;
    }
    span.sort_unstable();
    span
}

/// A generating set for GL2(Z/nZ): the two elementary unipotents (which
/// generate SL2) together with `diag(u, 1)` for a generating set of units.
pub fn gl2_generators(n: u32) -> Vec<Mat2> {
    if n == 1 {
        return vec![];
    }
    let mut gens = vec![Mat2::from_i64(n, [1, 1, 0, 1]), Mat2::from_i64(n, [1, 0, 1, 1])];
    let mut unit_gens: Vec<u32> = Vec::new();
    let mut span = vec![1 % n];
    for u in units(n) {
        if span.contains(&u) {
            continue;
        }
        unit_gens.push(u);
        span = unit_span(&unit_gens, n);
        gens.push(Mat2::from_i64(n, [u as i64, 0, 0, 1]));
    }
    gens
}
