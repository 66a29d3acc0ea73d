//! Maximal subgroups of GL2(F_l) with surjective determinant, for small primes.
//!
//! Such a subgroup cannot contain SL2 and must contain the scalars, so the
//! search runs in PGL2(F_l) and lifts back.

use std::fmt;

use super::conj::are_conjugate;
use super::{all_subgroups, gl2, FinGroup, GroupElement};
use crate::error::{Error, Result};
use crate::modring::{inv_mod, units, Mat2};

pub const MAX_MAXIMAL_PRIME: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MaximalClass {
    Borel,
    SplitCartanNormalizer,
    NonsplitCartanNormalizer,
    /// An irreducible abelian maximal subgroup (only at l = 2).
    NonsplitCartan,
    ExceptionalA4,
    ExceptionalS4,
    ExceptionalA5,
}

impl fmt::Display for MaximalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MaximalClass::Borel => "borel",
            MaximalClass::SplitCartanNormalizer => "split-cartan-normalizer",
            MaximalClass::NonsplitCartanNormalizer => "nonsplit-cartan-normalizer",
            MaximalClass::NonsplitCartan => "nonsplit-cartan",
            MaximalClass::ExceptionalA4 => "exceptional-A4",
            MaximalClass::ExceptionalS4 => "exceptional-S4",
            MaximalClass::ExceptionalA5 => "exceptional-A5",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct MaximalSubgroup {
    pub class: MaximalClass,
    pub group: FinGroup<Mat2>,
}

/// A matrix up to scalars, normalized so its first nonzero entry is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ProjMat(Mat2);

impl ProjMat {
    fn new(m: Mat2) -> Self {
        let n = m.modulus();
        let e = m.entries();
        let lead = e.iter().copied().find(|&x| x != 0).expect("invertible matrix");
        let s = inv_mod(lead, n).expect("prime modulus");
        ProjMat(m.mul_unchecked(&Mat2::scalar(n, s as i64)))
    }
}

impl GroupElement for ProjMat {
    fn compose(&self, rhs: &Self) -> Self {
        ProjMat::new(self.0.mul_unchecked(&rhs.0))
    }

    fn inverse(&self) -> Self {
        ProjMat::new(GroupElement::inverse(&self.0))
    }

    fn identity_like(&self) -> Self {
        ProjMat(Mat2::identity(self.0.modulus()))
    }
}

/// Representatives, one per GL2-conjugacy class, of the maximal proper
/// subgroups of GL2(F_l) with surjective determinant, for l in {2, 3, 5, 7}.
/// Each is re-verified maximal: adjoining any outside element gives GL2.
pub fn maximal_subgroups_detsurj(l: u32) -> Result<Vec<MaximalSubgroup>> {
    if !matches!(l, 2 | 3 | 5 | 7) {
        return Err(Error::input(format!(
            "maximal subgroups are supported for primes up to {MAX_MAXIMAL_PRIME}, got {l}"
        )));
    }
    let g = gl2(l);
    let pgl = g.image(ProjMat(Mat2::identity(l)), |x| ProjMat::new(*x));
    let subs = all_subgroups(&pgl, 100_000)?;
    let proper: Vec<&FinGroup<ProjMat>> = subs.iter().filter(|h| h.order() < pgl.order()).collect();
    // maximal among proper subgroups: no proper subgroup strictly contains it
    let maximal: Vec<&FinGroup<ProjMat>> = proper
        .iter()
        .filter(|h| {
            !proper
                .iter()
                .any(|k| k.order() > h.order() && k.order() % h.order() == 0 && h.is_subgroup_of(k))
        })
        .copied()
        .collect();

    let scalars: Vec<Mat2> = units(l).iter().map(|&u| Mat2::scalar(l, u as i64)).collect();
    let mut out: Vec<MaximalSubgroup> = Vec::new();
    for h in maximal {
        let mut gens: Vec<Mat2> = h.generators().iter().map(|p| p.0).collect();
        gens.extend(scalars.iter().copied());
        let lifted = FinGroup::generate(Mat2::identity(l), &gens);
        if !lifted.det_surjective() {
            continue;
        }
        let mut dup = false;
        for m in &out {
            if are_conjugate(&lifted, &m.group, &g)?.is_some() {
                dup = true;
                break;
            }
        }
        if dup {
            continue;
        }
        if !is_maximal(&lifted, &g) {
            return Err(Error::verification(
                "maximality",
                format!("subgroup of order {} is not maximal in GL2(F_{l})", lifted.order()),
            ));
        }
        let class = classify_maximal(&lifted);
        out.push(MaximalSubgroup { class, group: lifted });
    }
    out.sort_by(|a, b| (a.class, b.group.order()).cmp(&(b.class, a.group.order())));
    Ok(out)
}

/// `<H, x> = G` for every `x` outside `H`, tested on one element per right coset.
pub fn is_maximal(h: &FinGroup<Mat2>, g: &FinGroup<Mat2>) -> bool {
    if h.order() >= g.order() {
        return false;
    }
    let mut covered: std::collections::HashSet<Mat2> = h.elements().iter().copied().collect();
    for x in g.elements() {
        if covered.contains(x) {
            continue;
        }
        if h.join(std::slice::from_ref(x)).order() != g.order() {
            return false;
        }
        for k in h.elements() {
            covered.insert(k.mul_unchecked(x));
        }
    }
    true
}

fn has_common_eigenvector(h: &FinGroup<Mat2>) -> bool {
    let l = h.modulus();
    // lines spanned by (1, y) and (0, 1)
    let lines = (0..l).map(|y| [1, y]).chain(std::iter::once([0, 1]));
    lines.into_iter().any(|v| {
        h.generators().iter().all(|m| {
            let e = m.entries();
            let w0 = (e[0] * v[0] + e[1] * v[1]) % l;
            let w1 = (e[2] * v[0] + e[3] * v[1]) % l;
            // w is parallel to v
            (w0 * v[1] + l * l - w1 * v[0]).is_multiple_of(l)
        })
    })
}

fn splits_over_prime_field(m: &Mat2) -> bool {
    let l = m.modulus();
    let (t, d) = (m.trace(), m.det());
    (0..l).any(|x| (x * x + l * l - t * x + d).is_multiple_of(l))
}

fn classify_maximal(h: &FinGroup<Mat2>) -> MaximalClass {
    if has_common_eigenvector(h) {
        return MaximalClass::Borel;
    }
    if h.is_abelian() {
        return MaximalClass::NonsplitCartan;
    }
    for x in h.elements().iter().filter(|x| !x.is_scalar()) {
        let centralizer: Vec<Mat2> = h
            .elements()
            .iter()
            .filter(|y| y.mul_unchecked(x) == x.mul_unchecked(y))
            .copied()
            .collect();
        if 2 * centralizer.len() >= h.order() {
            let c = FinGroup::from_elements(*h.identity(), &centralizer);
            if c.is_abelian() {
                return if splits_over_prime_field(x) {
                    MaximalClass::SplitCartanNormalizer
                } else {
                    MaximalClass::NonsplitCartanNormalizer
                };
            }
        }
    }
    let l = h.modulus() as usize;
    match h.order() / (l - 1) {
        12 => MaximalClass::ExceptionalA4,
        24 => MaximalClass::ExceptionalS4,
        60 => MaximalClass::ExceptionalA5,
        other => unreachable!("maximal subgroup with projective order {other} matched no class"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(l: u32) -> Vec<(MaximalClass, usize)> {
        maximal_subgroups_detsurj(l)
            .unwrap()
            .iter()
            .map(|m| (m.class, m.group.order()))
            .collect()
    }

    #[test]
    fn level_two() {
        let s = summary(2);
        assert_eq!(s.len(), 2);
        let mut orders: Vec<usize> = s.iter().map(|x| x.1).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn every_result_is_proper_and_det_surjective() {
        for l in [2, 3, 5] {
            let g = gl2(l);
            for m in maximal_subgroups_detsurj(l).unwrap() {
                assert!(m.group.order() < g.order());
                assert_eq!(g.order() % m.group.order(), 0);
                assert!(m.group.det_surjective());
                assert!(is_maximal(&m.group, &g));
            }
        }
    }

    #[test]
    fn unsupported_prime() {
        assert!(maximal_subgroups_detsurj(11).is_err());
        assert!(maximal_subgroups_detsurj(4).is_err());
    }
}
