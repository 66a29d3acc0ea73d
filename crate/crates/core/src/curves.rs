//! Elliptic curves `y^2 = x^3 + ax + b` over Q, their reductions mod p, and
//! Frobenius sampling of the containment Q(E[2]) in Q(E[3]).

use std::fmt;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::funcfield::{family_model, format_rat, j_of_t, parse_rat, rational_roots, Poly, Rat};
use crate::par::{self, Exec};

pub const MAX_SCAN_PRIME: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveQ {
    a: Rat,
    b: Rat,
    disc: Rat,
    j: Rat,
}

impl CurveQ {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        let four_a3 = Rat::from_integer(4.into()) * &a * &a * &a;
        let inner = &four_a3 + Rat::from_integer(27.into()) * &b * &b;
        if inner.is_zero() {
            return Err(Error::input(format!("singular curve: a={a}, b={b}")));
        }
        let disc = Rat::from_integer((-16).into()) * &inner;
        let j = Rat::from_integer(1728.into()) * four_a3 / inner;
        Ok(CurveQ { a, b, disc, j })
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        Self::new(Rat::from_integer(a.into()), Rat::from_integer(b.into()))
    }

    /// Parses `a,b` with each coefficient `p/q` or `p`.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| Error::input(format!("expected \"a,b\", got {s:?}")))?;
        Self::new(parse_rat(a)?, parse_rat(b)?)
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// `-16(4a^3 + 27b^2)`.
    pub fn discriminant(&self) -> &Rat {
        &self.disc
    }

    pub fn j_invariant(&self) -> &Rat {
        &self.j
    }

    /// `x^3 + ax + b`.
    pub fn two_division_poly(&self) -> Poly {
        Poly::from_coeffs(vec![self.b.clone(), self.a.clone(), Rat::zero(), Rat::one()])
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }
}

impl fmt::Display for CurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", format_rat(&self.a), format_rat(&self.b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub t: Rat,
    /// Integral model.
    pub curve: CurveQ,
    /// Least `s` with `s^4 a(t)` and `s^6 b(t)` integral.
    pub scale: BigInt,
    /// j = 0 or 1728.
    pub cm: bool,
}

fn prime_factors(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let mut n: u64 = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::Resource(format!("cannot factor {n} by trial division")))?;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// Least `s` with `s^4 a` and `s^6 b` integral.
fn clearing_scale(a: &Rat, b: &Rat) -> Result<BigInt> {
    let mut s = BigInt::one();
    let mut primes: Vec<u64> = prime_factors(a.denom())?.into_iter().map(|f| f.0).collect();
    primes.extend(prime_factors(b.denom())?.into_iter().map(|f| f.0));
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        let val = |x: &BigInt| {
            let mut x = x.clone();
            let mut e = 0u32;
            while (&x % p).is_zero() {
                x /= p;
                e += 1;
            }
            e
        };
        let e = val(a.denom()).div_ceil(4).max(val(b.denom()).div_ceil(6));
        s *= BigInt::from(p).pow(e);
    }
    Ok(s)
}

/// The family member at `t`, rescaled `(x, y) -> (s^2 x, s^3 y)` to an
/// integral model.
pub fn specialize_integral(t: &Rat) -> Result<Specialization> {
    let (fa, fb) = family_model();
    let a = fa.eval(t).expect("polynomial");
    let b = fb.eval(t).expect("polynomial");
    let s = clearing_scale(&a, &b)?;
    let s = Rat::from_integer(s);
    let curve = CurveQ::new(a * s.pow(4), b * s.pow(6))?;
    debug_assert_eq!(curve.j_invariant(), &j_of_t(t));
    let cm = curve.j.is_zero() || curve.j == Rat::from_integer(1728.into());
    Ok(Specialization {
        t: t.clone(),
        curve,
        scale: s.to_integer(),
        cm,
    })
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Primes up to `n` inclusive.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut k = i * i;
            while k <= n {
                sieve[k] = false;
                k += i;
            }
        }
    }
    out
}

fn residue(x: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&pb).to_u64().expect("below p");
    let den = den.to_u64().expect("below p");
    Some(num * pow_mod(den, p - 2, p) % p)
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduction of a curve at a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFp {
    pub p: u64,
    pub a: u64,
    pub b: u64,
    /// `p > 3` and `p` divides neither the discriminant nor a denominator.
    pub good: bool,
}

impl CurveFp {
    pub fn reduce(e: &CurveQ, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        if p > MAX_SCAN_PRIME {
            return Err(Error::input(format!("p = {p} exceeds {MAX_SCAN_PRIME}")));
        }
        match (residue(&e.a, p), residue(&e.b, p), residue(&e.disc, p)) {
            (Some(a), Some(b), Some(d)) => Ok(CurveFp {
                p,
                a,
                b,
                good: p > 3 && d != 0,
            }),
            _ => Ok(CurveFp {
                p,
                a: 0,
                b: 0,
                good: false,
            }),
        }
    }

    fn rhs(&self, x: u64) -> u64 {
        let p = self.p;
        (x * x % p * x + self.a * x + self.b) % p
    }

    fn require_good(&self) -> Result<()> {
        if self.good {
            Ok(())
        } else {
            Err(Error::input(format!("bad reduction at p = {}", self.p)))
        }
    }
}

fn square_table(p: u64) -> Vec<bool> {
    let mut sq = vec![false; p as usize];
    for y in 0..p {
        sq[(y * y % p) as usize] = true;
    }
    sq
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub count: u64,
    pub ap: i64,
}

/// Naive count `1 + sum_x (1 + chi(x^3 + ax + b))`, with the Hasse bound
/// checked.
pub fn count_points(e: &CurveFp) -> Result<PointCount> {
    e.require_good()?;
    count_with(e, &square_table(e.p))
}

fn count_with(e: &CurveFp, sq: &[bool]) -> Result<PointCount> {
    let p = e.p;
    let mut count = 1u64;
    for x in 0..p {
        let v = e.rhs(x);
        count += if v == 0 {
            1
        } else if sq[v as usize] {
            2
        } else {
            0
        };
    }
    let ap = (p + 1) as i64 - count as i64;
    if (ap * ap) as u64 > 4 * p {
        return Err(Error::verification(
            "hasse",
            format!("#E(F_{p}) = {count} violates the Hasse bound"),
        ));
    }
    Ok(PointCount { count, ap })
}

/// Factorization type of the 2-division cubic mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SplitType {
    /// `(1,1,1)`
    Split,
    /// `(1,2)`
    Linear,
    /// `(3)`
    Irreducible,
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitType::Split => "(1,1,1)",
            SplitType::Linear => "(1,2)",
            SplitType::Irreducible => "(3)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusRecord {
    pub p: u64,
    pub count: u64,
    pub ap: i64,
    pub two_split: SplitType,
    pub three_full: bool,
}

impl FrobeniusRecord {
    /// Full 3-torsion without full 2-torsion.
    pub fn is_violation(&self) -> bool {
        self.three_full && self.two_split != SplitType::Split
    }
}

impl fmt::Display for FrobeniusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} split={} full3={} violation={}",
            self.p,
            self.two_split,
            self.three_full,
            self.is_violation()
        )
    }
}

fn signature_with(e: &CurveFp, sq: &[bool]) -> Result<FrobeniusRecord> {
    let p = e.p;
    let count = count_with(e, sq)?;
    let roots = (0..p).filter(|&x| e.rhs(x) == 0).count();
    let two_split = match roots {
        3 => SplitType::Split,
        1 => SplitType::Linear,
        0 => SplitType::Irreducible,
        _ => return Err(Error::verification("split", format!("repeated root at good prime {p}"))),
    };
    let three_full = p % 3 == 1 && {
        // psi3 = 3x^4 + 6ax^2 + 12bx - a^2
        let (a, b) = (e.a, e.b);
        let psi3 = |x: u64| {
            let x2 = x * x % p;
            (3 * x2 % p * x2 + 6 * a % p * x2 + 12 * b % p * x + p * p - a * a % p) % p
        };
        let xs: Vec<u64> = (0..p).filter(|&x| psi3(x) == 0).collect();
        xs.len() == 4 && xs.iter().all(|&x| sq[e.rhs(x) as usize])
    };
    Ok(FrobeniusRecord {
        p,
        count: count.count,
        ap: count.ap,
        two_split,
        three_full,
    })
}

pub fn frobenius_signature(e: &CurveQ, p: u64) -> Result<FrobeniusRecord> {
    let fp = CurveFp::reduce(e, p)?;
    fp.require_good()?;
    signature_with(&fp, &square_table(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntanglementScan {
    pub p_max: u64,
    /// Good primes in increasing order.
    pub records: Vec<FrobeniusRecord>,
    /// Primes skipped for bad reduction or `p <= 3`.
    pub skipped: usize,
}

impl EntanglementScan {
    pub fn violations(&self) -> impl Iterator<Item = &FrobeniusRecord> {
        self.records.iter().filter(|r| r.is_violation())
    }

    pub fn smallest_violation(&self) -> Option<u64> {
        self.violations().next().map(|r| r.p)
    }

    pub fn summary(&self) -> String {
        let v = self.violations().count();
        if v == 0 {
            format!(
                "primes={} skipped={} violations=0; consistent with containment up to {}",
                self.records.len(),
                self.skipped,
                self.p_max
            )
        } else {
            format!(
                "primes={} skipped={} violations={v}; containment fails, smallest violation p={}",
                self.records.len(),
                self.skipped,
                self.smallest_violation().expect("nonempty")
            )
        }
    }
}

/// Samples Frobenius at every good prime up to `p_max`.
pub fn entanglement_scan(e: &CurveQ, p_max: u64, exec: Exec) -> Result<EntanglementScan> {
    if p_max > MAX_SCAN_PRIME {
        return Err(Error::input(format!("p_max = {p_max} exceeds {MAX_SCAN_PRIME}")));
    }
    let primes = primes_up_to(p_max);
    let results: Vec<Option<Result<FrobeniusRecord>>> = par::map(exec, &primes, |&p| {
        let fp = CurveFp::reduce(e, p).ok()?;
        fp.good.then(|| signature_with(&fp, &square_table(p)))
    });
    let mut records = Vec::new();
    let mut skipped = 0;
    for r in results {
        match r {
            Some(rec) => records.push(rec?),
            None => skipped += 1,
        }
    }
    Ok(EntanglementScan {
        p_max,
        records,
        skipped,
    })
}

/// Galois group of `x^3 + ax + b` over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GaloisType {
    Trivial,
    C2,
    C3,
    S3,
}

impl fmt::Display for GaloisType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GaloisType::Trivial => "trivial",
            GaloisType::C2 => "C2",
            GaloisType::C3 => "C3",
            GaloisType::S3 => "S3",
        })
    }
}

/// `x` is the square of a rational.
pub fn is_rational_square(x: &Rat) -> bool {
    let sq = |n: &BigInt| !n.is_negative() && n.sqrt().pow(2) == *n;
    sq(x.numer()) && sq(x.denom())
}

pub fn two_division_field_analysis(e: &CurveQ) -> Result<GaloisType> {
    let roots = rational_roots(&e.two_division_poly())?.len();
    let cubic_disc = Rat::from_integer((-4).into()) * e.a.pow(3) - Rat::from_integer(27.into()) * e.b.pow(2);
    Ok(match roots {
        3 => GaloisType::Trivial,
        1 => GaloisType::C2,
        0 if is_rational_square(&cubic_disc) => GaloisType::C3,
        0 => GaloisType::S3,
        _ => {
            return Err(Error::verification(
                "two-division",
                "repeated root on a nonsingular curve",
            ))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::rat;

    #[test]
    fn specializations() {
        let s = specialize_integral(&rat(1, 1)).unwrap();
        assert_eq!(s.curve, CurveQ::from_ints(-144, 672).unwrap());
        assert_eq!(s.curve.discriminant(), &rat(-3981312, 1));
        assert_eq!(s.curve.j_invariant(), &rat(-82944, 1));
        assert_eq!(s.scale, 2.into());
        let s0 = specialize_integral(&rat(0, 1)).unwrap();
        assert_eq!(s0.curve, CurveQ::from_ints(0, 32).unwrap());
        assert!(s0.cm);
        let s2 = specialize_integral(&rat(1, 2)).unwrap();
        assert_eq!(s2.curve, CurveQ::from_ints(12, 0).unwrap());
        assert!(s2.cm);
    }

    #[test]
    fn point_counts() {
        let e = CurveQ::from_ints(1, 1).unwrap();
        let c = count_points(&CurveFp::reduce(&e, 5).unwrap()).unwrap();
        assert_eq!(c, PointCount { count: 9, ap: -3 });
        let e = CurveQ::from_ints(0, 32).unwrap();
        let c = count_points(&CurveFp::reduce(&e, 5).unwrap()).unwrap();
        assert_eq!(c, PointCount { count: 6, ap: 0 });
    }

    #[test]
    fn bad_reduction_is_an_error() {
        let e = CurveQ::from_ints(1, 1).unwrap();
        // disc = -16 * 31
        assert!(frobenius_signature(&e, 31).is_err());
        assert!(frobenius_signature(&e, 3).is_err());
        assert!(CurveFp::reduce(&e, 9).is_err());
    }

    #[test]
    fn signature_at_seven() {
        let e = CurveQ::from_ints(-144, 672).unwrap();
        let r = frobenius_signature(&e, 7).unwrap();
        assert_eq!(r.two_split, SplitType::Split);
        assert!(!r.three_full);
        assert_eq!(r.to_string(), "p=7 split=(1,1,1) full3=false violation=false");
    }

    #[test]
    fn galois_types() {
        let t = |a, b| two_division_field_analysis(&CurveQ::from_ints(a, b).unwrap()).unwrap();
        assert_eq!(t(-1, 0), GaloisType::Trivial);
        assert_eq!(t(1, 1), GaloisType::S3);
        assert_eq!(t(-3, 1), GaloisType::C3);
        assert_eq!(t(1, 0), GaloisType::C2);
        assert_eq!(t(0, 32), GaloisType::S3);
    }

    #[test]
    fn parse_and_reject() {
        assert_eq!(CurveQ::parse("1/2, -3").unwrap().b(), &rat(-3, 1));
        assert!(CurveQ::parse("0,0").is_err());
        assert!(CurveQ::parse("1").is_err());
    }

    #[test]
    fn scan_limits() {
        let e = CurveQ::from_ints(1, 1).unwrap();
        assert!(entanglement_scan(&e, MAX_SCAN_PRIME + 1, Exec::Sequential).is_err());
    }
}
