//! Exact arithmetic over Q, Q[t], Q(t) and `Q(t)(w, d)`, the symbolic
//! identities of the degree-6 family, and inversion of its j-map.

mod poly;
mod ratfunc;
mod tower;

use std::collections::BTreeSet;

use num::{BigInt, Integer, One, Signed, Zero};

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use tower::{Tower, TowerElem};

use crate::error::{Error, Result};
use crate::report::Report;

pub type Rat = num::BigRational;

/// Parses `p/q` or `p`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let r: Rat = s
        .parse()
        .map_err(|_| Error::input(format!("not a rational number: {s:?}")))?;
    Ok(r)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// `1 - 4t^3`.
fn u() -> Poly {
    Poly::from_ints(&[1, 0, 0, -4])
}

/// `(a, b)` of `y^2 = x^3 + a x + b` with `a = 3t(1-4t^3)` and
/// `b = (1-4t^3)(1/2-4t^3)`.
pub fn family_model() -> (RatFunc, RatFunc) {
    let a = &Poly::from_ints(&[0, 3]) * &u();
    let b = &u() * &Poly::from_coeffs(vec![rat(1, 2), int(0), int(0), int(-4)]);
    (RatFunc::from_poly(a), RatFunc::from_poly(b))
}

/// `-16(4a^3 + 27b^2)`.
pub fn discriminant(a: &RatFunc, b: &RatFunc) -> RatFunc {
    let inner = &(&RatFunc::int(4) * &a.pow(3)) + &(&RatFunc::int(27) * &b.pow(2));
    &RatFunc::int(-16) * &inner
}

/// `-110592 a^3 / disc`; `None` for a singular model.
pub fn j_invariant(a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
    let disc = discriminant(a, b);
    Some(&(&RatFunc::int(-110592) * &a.pow(3)) * &disc.inv()?)
}

/// `27648 t^3 (1 - 4t^3)`.
pub fn j_of_t(t: &Rat) -> Rat {
    let t3 = t * t * t;
    int(27648) * &t3 * (int(1) - int(4) * &t3)
}

/// The sextic `110592 t^6 - 27648 t^3 + j0`, whose rational roots are the
/// parameters with `j(t) = j0`.
pub fn j_fiber_poly(j0: &Rat) -> Poly {
    Poly::from_coeffs(vec![
        j0.clone(),
        int(0),
        int(0),
        int(-27648),
        int(0),
        int(0),
        int(110592),
    ])
}

/// `-108 (1-4t^3)^2`, the expected discriminant of the family.
pub fn expected_discriminant() -> RatFunc {
    RatFunc::from_poly(u().pow(2).scale(&int(-108)))
}

/// Discriminant as printed in the source formula, `-1728 (1-4t^3)^2`.
pub fn stated_discriminant() -> RatFunc {
    RatFunc::from_poly(u().pow(2).scale(&int(-1728)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelIdentities {
    pub discriminant: RatFunc,
    pub j: RatFunc,
    pub c4: RatFunc,
}

pub fn verify_model_identities() -> (Report, ModelIdentities) {
    let mut r = Report::new();
    let (a, b) = family_model();
    let disc = discriminant(&a, &b);
    let j = j_invariant(&a, &b).expect("nonsingular family");
    let c4 = &RatFunc::int(-48) * &a;

    let evals = [
        (a.eval(&int(0)), int(0)),
        (b.eval(&int(0)), rat(1, 2)),
        (a.eval(&int(1)), int(-9)),
        (b.eval(&int(1)), rat(21, 2)),
    ];
    let degrees = (a.as_poly().and_then(Poly::degree), b.as_poly().and_then(Poly::degree));
    r.check(
        "symbolic.model",
        "family y^2 = x^3 + 3t(1-4t^3)x + (1-4t^3)(1/2-4t^3)",
        evals.iter().all(|(got, want)| got.as_ref() == Some(want)) && degrees == (Some(4), Some(6)),
        format!("a={} b={}", a, b),
    );

    let j_expected = RatFunc::from_poly(&Poly::monomial(int(27648), 3) * &u());
    r.check(
        "symbolic.j",
        "j = 27648 t^3 (1-4t^3)",
        (&j - &j_expected).is_zero(),
        format!("j={j}"),
    );

    let expected = expected_discriminant();
    let stated = stated_discriminant();
    let ratio = &stated / &disc;
    r.check(
        "symbolic.discriminant",
        "discriminant of the family",
        disc == expected,
        format!("disc=-108(1-4t^3)^2; stated constant -1728 differs by factor {ratio}"),
    );

    let fiber = &j_fiber_poly(&int(0)) + j_expected.as_poly().expect("polynomial");
    r.check(
        "symbolic.degree6",
        "j-map of degree 6",
        fiber.is_zero() && j_fiber_poly(&int(0)).degree() == Some(6),
        "j(t) - j0 = -(110592 t^6 - 27648 t^3 + j0)",
    );
    r.check(
        "symbolic.c4",
        "c4 = -48a",
        c4.eval(&int(1)) == Some(int(432)),
        format!("c4={c4}"),
    );
    (
        r,
        ModelIdentities {
            discriminant: disc,
            j,
            c4,
        },
    )
}

/// `e1, e2, e3` in the tower over `d^3 = disc`, with `A = d/6` and
/// `B = t d^2 / (18(1-4t^3))`: `e_k = w^k A + w^(2k) B`.
pub fn two_torsion_roots(tower: &Tower) -> [TowerElem; 3] {
    let a_part = TowerElem::term(RatFunc::constant(rat(1, 6)), 0, 1);
    let b_coeff = &RatFunc::t() / &RatFunc::from_poly(u().scale(&int(18)));
    let b_part = TowerElem::term(b_coeff, 0, 2);
    let w = tower.omega();
    let w2 = tower.mul(&w, &w);
    [
        &a_part + &b_part,
        &tower.mul(&w, &a_part) + &tower.mul(&w2, &b_part),
        &tower.mul(&w2, &a_part) + &tower.mul(&w, &b_part),
    ]
}

fn cardano_product(tower: &Tower) -> TowerElem {
    let a_part = TowerElem::term(RatFunc::constant(rat(1, 6)), 0, 1);
    let b_coeff = &RatFunc::t() / &RatFunc::from_poly(u().scale(&int(18)));
    let b_part = TowerElem::term(b_coeff, 0, 2);
    tower.mul(&a_part, &b_part).scale(&RatFunc::int(3))
}

pub fn standard_tower() -> Tower {
    Tower::new(expected_discriminant()).expect("nonzero")
}

/// Vieta identities for `(x-e1)(x-e2)(x-e3) = x^3 + a x + b`.
pub fn verify_factorization() -> Report {
    let mut r = Report::new();
    let anchor = "factorization of the 2-division polynomial";
    let tower = standard_tower();
    let (a, b) = family_model();
    let [e1, e2, e3] = two_torsion_roots(&tower);
    let sum = &(&e1 + &e2) + &e3;
    let pairs = &(&tower.mul(&e1, &e2) + &tower.mul(&e1, &e3)) + &tower.mul(&e2, &e3);
    let product = tower.mul(&tower.mul(&e1, &e2), &e3);
    let lift = TowerElem::from_ratfunc;
    r.check("symbolic.vieta.sum", anchor, sum.is_zero(), format!("e1+e2+e3 = {sum}"));
    r.check(
        "symbolic.vieta.pairs",
        anchor,
        (&pairs - &lift(a.clone())).is_zero(),
        format!("e1e2+e1e3+e2e3 = {pairs}"),
    );
    r.check(
        "symbolic.vieta.product",
        anchor,
        (&product + &lift(b)).is_zero(),
        format!("e1e2e3 = {product}"),
    );
    let cardano = cardano_product(&tower);
    r.check(
        "symbolic.cardano",
        "3AB = -a after d^3 reduction",
        (&cardano + &lift(a.clone())).is_zero(),
        format!("3AB = {cardano}"),
    );
    let stated = Tower::new(stated_discriminant()).expect("nonzero");
    let with_stated = cardano_product(&stated);
    let scaled = with_stated.coeff(0, 0) / &(-&a);
    r.check(
        "symbolic.cardano.stated-constant",
        "the printed discriminant constant does not close the root formulas",
        !(&with_stated + &lift(a.clone())).is_zero(),
        format!("with d^3 = -1728(1-4t^3)^2, 3AB = {scaled} * (-a)"),
    );
    r
}

/// `d -> w d` cycles the roots and `w -> w^2` fixes `e1` and swaps
/// `e2`, `e3`.
pub fn galois_action_check() -> Report {
    let mut r = Report::new();
    let anchor = "2-torsion inside Q(zeta3, disc^(1/3))";
    let tower = standard_tower();
    let [e1, e2, e3] = two_torsion_roots(&tower);
    let rot = |x: &TowerElem| tower.rotate_delta(x);
    r.check(
        "symbolic.galois.rotate",
        anchor,
        rot(&e1) == e2 && rot(&e2) == e3 && rot(&e3) == e1,
        "d -> wd maps e1 -> e2 -> e3 -> e1",
    );
    r.check(
        "symbolic.galois.order3",
        anchor,
        [&e1, &e2, &e3].iter().all(|e| rot(&rot(&rot(e))) == **e),
        "(d -> wd)^3 is the identity on the roots",
    );
    r.check(
        "symbolic.galois.conjugate",
        anchor,
        e1.conjugate_omega() == e1 && e2.conjugate_omega() == e3 && e3.conjugate_omega() == e2,
        "w -> w^2 fixes e1 and swaps e2, e3",
    );
    r
}

/// Model identities, Vieta identities and the Galois action, in order.
pub fn verify_symbolic_suite() -> Report {
    let mut r = verify_model_identities().0;
    r.extend(verify_factorization());
    r.extend(galois_action_check());
    r
}

fn exact_root(x: &BigInt, k: u32) -> Option<BigInt> {
    if k == 2 && x.is_negative() {
        return None;
    }
    let root = x.nth_root(k);
    (root.pow(k) == *x).then_some(root)
}

fn exact_rat_root(x: &Rat, k: u32) -> Option<Rat> {
    Some(Rat::new(exact_root(x.numer(), k)?, exact_root(x.denom(), k)?))
}

/// All rational `t` with `27648 t^3 (1-4t^3) = j0`. Solves the quadratic in
/// `s = t^3` exactly and keeps the rational cube roots.
pub fn invert_j(j0: &Rat) -> BTreeSet<Rat> {
    // 110592 s^2 - 27648 s + j0 = 0
    let (qa, qb) = (int(110592), int(-27648));
    let disc = &qb * &qb - int(4) * &qa * j0;
    let mut out = BTreeSet::new();
    if let Some(root) = exact_rat_root(&disc, 2) {
        for sign in [1, -1] {
            let s = (-&qb + int(sign) * &root) / (int(2) * &qa);
            if let Some(t) = exact_rat_root(&s, 3) {
                out.insert(t);
            }
        }
    }
    out
}

const MAX_DIVISOR_INPUT: u64 = 1 << 50;

fn positive_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n: u64 = n
        .abs()
        .try_into()
        .ok()
        .filter(|&n| n <= MAX_DIVISOR_INPUT)
        .ok_or_else(|| Error::Resource(format!("coefficient {n} too large for divisor enumeration")))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Rational roots of a nonzero polynomial by the rational root theorem on
/// its primitive integer form.
pub fn rational_roots(p: &Poly) -> Result<BTreeSet<Rat>> {
    if p.is_zero() {
        return Err(Error::input("the zero polynomial has every rational as a root"));
    }
    let mut ints = p.primitive_integer_coeffs();
    let mut out = BTreeSet::new();
    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.insert(Rat::zero());
        ints.drain(..zeros);
    }
    if ints.len() <= 1 {
        return Ok(out);
    }
    let stripped = Poly::from_coeffs(ints.iter().map(|c| Rat::from_integer(c.clone())).collect());
    let lead = ints.last().expect("nonempty").clone();
    let constant = ints[0].clone();
    for num in positive_divisors(&constant)? {
        for den in positive_divisors(&lead)? {
            if num.gcd(&den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let x = Rat::new(BigInt::from(num) * sign, BigInt::from(den));
                if stripped.eval(&x).is_zero() {
                    out.insert(x);
                }
            }
        }
    }
    Ok(out)
}

/// `p/q` for non-integers, `p` otherwise.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let r = verify_symbolic_suite();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn discriminant_and_j() {
        let (_, ids) = verify_model_identities();
        assert_eq!(ids.discriminant, expected_discriminant());
        assert_eq!(ids.j.eval(&rat(1, 2)), Some(int(1728)));
    }

    #[test]
    fn inversion_examples() {
        assert_eq!(invert_j(&int(0)), BTreeSet::from([int(0)]));
        assert_eq!(invert_j(&int(1728)), BTreeSet::from([rat(1, 2)]));
        assert_eq!(invert_j(&int(-82944)), BTreeSet::from([int(1)]));
    }

    #[test]
    fn inversion_matches_rational_root_search() {
        for j0 in [-82944, 0, 1728, 5, -1, 27648 * 7] {
            let j0 = int(j0);
            assert_eq!(invert_j(&j0), rational_roots(&j_fiber_poly(&j0)).unwrap());
        }
        let j0 = j_of_t(&rat(-2, 3));
        assert_eq!(invert_j(&j0), rational_roots(&j_fiber_poly(&j0)).unwrap());
    }

    #[test]
    fn rat_parsing() {
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat(" 7 ").unwrap(), int(7));
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/0").is_err());
        assert_eq!(format_rat(&rat(4, -6)), "-2/3");
    }
}
