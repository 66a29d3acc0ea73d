//! Cyclicity density and the entanglement correction factor from a
//! finite-level image specification.

use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::catalog::epsilon;
use crate::curves::primes_up_to;
use crate::error::{Error, Result};
use crate::funcfield::{format_rat, Rat};
use crate::groups::{gl2, FinGroup};
use crate::modring::{factor, gl2_order, Mat2};

/// An adelic image given as the full preimage of `group` at level `level`.
#[derive(Clone, Debug)]
pub struct ImageSpec {
    level: u32,
    group: FinGroup<Mat2>,
}

impl ImageSpec {
    pub fn new(group: FinGroup<Mat2>) -> Result<Self> {
        if !group.det_surjective() {
            return Err(Error::input(format!(
                "determinant of the level-{} group is not surjective",
                group.modulus()
            )));
        }
        Ok(ImageSpec {
            level: group.modulus(),
            group,
        })
    }

    /// The full image at level `m`.
    pub fn full(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::input("level must be positive"));
        }
        Self::new(gl2(m))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn group(&self) -> &FinGroup<Mat2> {
        &self.group
    }

    fn level_primes(&self) -> Vec<u32> {
        factor(self.level.into()).into_iter().map(|(p, _)| p as u32).collect()
    }
}

/// `{(a, b) in GL2(Z/2Z) x GL2(Z/3Z) : sign(a) = det(b)}` at level 6, the
/// index-2 fibered product over Z/2Z.
pub fn index2_fiber_6() -> FinGroup<Mat2> {
    let mut elems = Vec::new();
    for a in gl2(2).elements() {
        for b in gl2(3).elements() {
            let det_sign = if b.det() == 1 { 1 } else { -1 };
            if epsilon(a) == det_sign {
                elems.push(Mat2::crt_join(a, b).expect("coprime"));
            }
        }
    }
    FinGroup::from_elements(Mat2::identity(6), &elems)
}

fn squarefree_primes(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::input("n must be positive"));
    }
    let mut primes = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return Err(Error::input(format!("{n} is not squarefree")));
            }
            primes.push(d);
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    Ok(primes)
}

/// `[Q(E[n]) : Q]` for squarefree `n`.
pub fn division_degree(spec: &ImageSpec, n: u64) -> Result<BigInt> {
    let primes = squarefree_primes(n)?;
    let level_primes = spec.level_primes();
    let mut inside = 1u32;
    let mut degree = BigInt::one();
    for p in primes {
        if level_primes.iter().any(|&q| q as u64 == p) {
            inside *= p as u32;
        } else {
            if p > u32::MAX as u64 {
                return Err(Error::input(format!("prime {p} too large")));
            }
            degree *= BigInt::from(gl2_order(p as u32));
        }
    }
    if inside > 1 {
        degree *= BigInt::from(spec.group.project(inside)?.order());
    }
    Ok(degree)
}

/// `sum over n | rad(M) of mu(n) / [Q(E[n]) : Q]`.
pub fn entangled_part(spec: &ImageSpec) -> Result<Rat> {
    let primes = spec.level_primes();
    let mut sum = Rat::zero();
    for mask in 0u32..(1 << primes.len()) {
        let n: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p as u64)
            .product();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        sum += Rat::new(BigInt::from(sign), division_degree(spec, n)?);
    }
    Ok(sum)
}

/// A density with a rigorous enclosing interval. Conditional on GRH.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityResult {
    /// Exact value of the truncated expression.
    pub value: Rat,
    pub lower: Rat,
    pub upper: Rat,
    pub cutoff: u32,
}

impl DensityResult {
    pub fn contains(&self, x: &Rat) -> bool {
        &self.lower <= x && x <= &self.upper
    }

    pub fn width(&self) -> Rat {
        &self.upper - &self.lower
    }
}

const DIGITS: usize = 10;

fn decimal(x: &Rat, round_up: bool) -> String {
    let scale = BigInt::from(10).pow(DIGITS as u32);
    let scaled = x * Rat::from_integer(scale.clone());
    let n = if round_up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let digits = n.abs().to_string();
    let digits = format!("{digits:0>width$}", width = DIGITS + 1);
    let (int, frac) = digits.split_at(digits.len() - DIGITS);
    format!("{sign}{int}.{frac}")
}

impl fmt::Display for DensityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "value={} in [{}, {}] (L={}, GRH)",
            format_rat(&self.value),
            decimal(&self.lower, false),
            decimal(&self.upper, true),
            self.cutoff
        )
    }
}

fn euler_factor(l: u32) -> Rat {
    Rat::one() - Rat::new(BigInt::one(), BigInt::from(gl2_order(l)))
}

/// Upper bound for `sum over primes l > L of 1/|GL2(Z/lZ)|`:
/// `|GL2(Z/lZ)| >= (l-1)^4`, and `sum_{k >= L} k^-4 <= L^-4 + L^-3 / 3`.
pub fn tail_bound(cutoff: u32) -> Rat {
    let l = BigInt::from(cutoff);
    Rat::new(BigInt::one(), l.pow(4)) + Rat::new(BigInt::one(), BigInt::from(3) * l.pow(3))
}

fn check_cutoff(spec: &ImageSpec, cutoff: u32) -> Result<()> {
    if cutoff < 2 {
        return Err(Error::input("cutoff must be at least 2"));
    }
    if let Some(&p) = spec.level_primes().iter().find(|&&p| p > cutoff) {
        return Err(Error::input(format!("cutoff {cutoff} is below the level prime {p}")));
    }
    Ok(())
}

/// `entangled_part * prod over l <= L, l not dividing M of (1 - 1/|GL2(Z/lZ)|)`,
/// enclosed with the tail over `l > L`.
pub fn hooley_delta(spec: &ImageSpec, cutoff: u32) -> Result<DensityResult> {
    check_cutoff(spec, cutoff)?;
    let level_primes = spec.level_primes();
    let mut value = entangled_part(spec)?;
    for l in primes_up_to(cutoff as u64) {
        let l = l as u32;
        if !level_primes.contains(&l) {
            value *= euler_factor(l);
        }
    }
    let shrunk = &value * (Rat::one() - tail_bound(cutoff));
    let (lower, upper) = if value.is_negative() {
        (value.clone(), shrunk)
    } else {
        (shrunk, value.clone())
    };
    Ok(DensityResult {
        value,
        lower,
        upper,
        cutoff,
    })
}

/// `entangled_part / prod over l | M of (1 - 1/[Q(E[l]) : Q])`. Exact.
pub fn correction_factor(spec: &ImageSpec, cutoff: u32) -> Result<DensityResult> {
    check_cutoff(spec, cutoff)?;
    let mut independent = Rat::one();
    for l in spec.level_primes() {
        independent *= Rat::one() - Rat::new(BigInt::one(), division_degree(spec, l as u64)?);
    }
    if independent.is_zero() {
        return Err(Error::input(
            "a prime of the level splits completely; the correction factor is undefined",
        ));
    }
    let value = entangled_part(spec)? / independent;
    Ok(DensityResult {
        lower: value.clone(),
        upper: value.clone(),
        value,
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{h6p, Theta};
    use crate::funcfield::rat;

    fn h6_spec() -> ImageSpec {
        ImageSpec::new(h6p(&Theta::new().unwrap())).unwrap()
    }

    #[test]
    fn degrees() {
        let full = ImageSpec::full(1).unwrap();
        assert_eq!(division_degree(&full, 2).unwrap(), 6.into());
        assert_eq!(division_degree(&full, 1).unwrap(), 1.into());
        let h6 = h6_spec();
        assert_eq!(division_degree(&h6, 6).unwrap(), 48.into());
        assert_eq!(division_degree(&h6, 2).unwrap(), 6.into());
        assert_eq!(division_degree(&h6, 3).unwrap(), 48.into());
        assert_eq!(division_degree(&h6, 30).unwrap(), (48 * 480).into());
        assert!(division_degree(&h6, 12).is_err());
    }

    #[test]
    fn correction_factors() {
        assert_eq!(
            correction_factor(&ImageSpec::full(6).unwrap(), 5).unwrap().value,
            rat(1, 1)
        );
        assert_eq!(entangled_part(&h6_spec()).unwrap(), rat(5, 6));
        assert_eq!(correction_factor(&h6_spec(), 5).unwrap().value, rat(48, 47));
        let fiber = ImageSpec::new(index2_fiber_6()).unwrap();
        assert_eq!(fiber.group().order(), 144);
        assert_eq!(correction_factor(&fiber, 5).unwrap().value, rat(236, 235));
    }

    #[test]
    fn degenerate_trivial_image() {
        let spec = ImageSpec::new(FinGroup::trivial(Mat2::identity(2))).unwrap();
        assert_eq!(hooley_delta(&spec, 10).unwrap().value, rat(0, 1));
    }

    #[test]
    fn full_density_interval() {
        let d = hooley_delta(&ImageSpec::full(1).unwrap(), 100).unwrap();
        assert!(d.width() < rat(1, 100_000));
        assert!(d.contains(&rat(8137519061, 10_000_000_000)));
        assert!(d.to_string().ends_with("(L=100, GRH)"));
    }

    #[test]
    fn cutoff_checks() {
        assert!(hooley_delta(&h6_spec(), 2).is_err());
        assert!(ImageSpec::new(FinGroup::trivial(Mat2::identity(5))).is_err());
    }

    #[test]
    fn decimals_round_outward() {
        assert_eq!(decimal(&rat(1, 3), false), "0.3333333333");
        assert_eq!(decimal(&rat(1, 3), true), "0.3333333334");
        assert_eq!(decimal(&rat(48, 47), false), "1.0212765957");
    }
}
