//! The named level-2, 3, 4, 6, 9 subgroups and the map theta.

use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{
    closure, gl2, normal_subgroups, preimage, quotient, CayleyTable, FinGroup, GroupHom, DEFAULT_NORMAL_BOUND,
};
use crate::modring::Mat2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    N,
    H6p,
    H4p,
    H4pp,
    H9p,
}

impl Label {
    pub fn level(self) -> u32 {
        match self {
            Label::N => 3,
            Label::H6p => 6,
            Label::H4p | Label::H4pp => 4,
            Label::H9p => 9,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::N => "N",
            Label::H6p => "H6'",
            Label::H4p => "H4'",
            Label::H4pp => "H4''",
            Label::H9p => "H9'",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NamedSubgroup {
    pub label: Label,
    /// Full preimage at level 36 rather than the group at its own level.
    pub level36: bool,
    pub group: FinGroup<Mat2>,
    pub definition: &'static str,
}

impl NamedSubgroup {
    pub fn name(&self) -> String {
        if self.level36 {
            format!("pi36^-1({})", self.label)
        } else {
            self.label.to_string()
        }
    }
}

/// Membership in the index-6 normal subgroup of GL2(Z/3Z): rotations
/// `[[x,-y],[y,x]]` with `x^2+y^2 = 1` and reflections `[[x,y],[y,-x]]` with
/// `x^2+y^2 = -1`.
pub fn in_n(g: &Mat2) -> bool {
    if g.modulus() != 3 {
        return false;
    }
    let [a, b, c, d] = g.entries();
    let norm = (a * a + c * c) % 3;
    let rotation = d == a && (b + c) % 3 == 0 && norm == 1;
    let reflection = b == c && (a + d) % 3 == 0 && norm == 2;
    rotation || reflection
}

/// The subgroup cut out by [`in_n`].
pub fn n_by_equation() -> FinGroup<Mat2> {
    let elems: Vec<Mat2> = gl2(3).elements().iter().filter(|g| in_n(g)).copied().collect();
    FinGroup::from_elements(Mat2::identity(3), &elems)
}

/// Enumerates the normal subgroups of GL2(Z/3Z), checks exactly one has
/// index 6, and checks it equals [`n_by_equation`].
pub fn unique_index6_normal() -> Result<NamedSubgroup> {
    let g = gl2(3);
    let index6: Vec<FinGroup<Mat2>> = normal_subgroups(&g, DEFAULT_NORMAL_BOUND)?
        .into_iter()
        .filter(|n| n.order() * 6 == g.order())
        .collect();
    if index6.len() != 1 {
        return Err(Error::verification(
            "n.unique",
            format!("{} normal subgroups of index 6", index6.len()),
        ));
    }
    let n = index6.into_iter().next().expect("one element");
    let by_eq = n_by_equation();
    if n != by_eq || by_eq.order() != 8 {
        return Err(Error::verification(
            "n.equation",
            format!(
                "index-6 normal subgroup differs from the defining set ({} elements)",
                by_eq.order()
            ),
        ));
    }
    Ok(NamedSubgroup {
        label: Label::N,
        level36: false,
        group: n,
        definition: "unique index-6 normal subgroup of GL2(Z/3Z)",
    })
}

/// The surjection GL2(Z/3Z) -> GL2(Z/2Z) with kernel N. The identification
/// of GL2(Z/3Z)/N with GL2(Z/2Z) is the lexicographically least isomorphism
/// of multiplication tables; other choices differ by an inner automorphism.
#[derive(Clone, Debug)]
pub struct Theta {
    pub hom: GroupHom<Mat2, Mat2>,
}

impl Theta {
    pub fn new() -> Result<Self> {
        let g3 = gl2(3);
        let g2 = gl2(2);
        let n = unique_index6_normal()?.group;
        let (q, proj) = quotient(&g3, &n)?;
        let (t2, elems2) = CayleyTable::from_group(&g2);
        let iso = q
            .isomorphisms(&t2, None)
            .into_iter()
            .min()
            .ok_or_else(|| Error::verification("theta.iso", "GL2(Z/3Z)/N is not isomorphic to GL2(Z/2Z)"))?;
        let hom = GroupHom::from_fn(g3, g2, |x| elems2[iso[proj.apply(x).expect("in domain")] as usize])?;
        if hom.kernel() != n || !hom.is_surjective() {
            return Err(Error::verification("theta.kernel", "kernel or image mismatch"));
        }
        Ok(Theta { hom })
    }

    pub fn apply(&self, g: &Mat2) -> Mat2 {
        *self.hom.apply(g).expect("theta is defined on GL2(Z/3Z)")
    }
}

/// The graph `{(theta(g), g)}` inside GL2(Z/6Z).
pub fn h6p(theta: &Theta) -> FinGroup<Mat2> {
    let elems: Vec<Mat2> = gl2(3)
        .elements()
        .iter()
        .map(|g| Mat2::crt_join(&theta.apply(g), g).expect("coprime"))
        .collect();
    FinGroup::from_elements(Mat2::identity(6), &elems)
}

/// The nontrivial character of GL2(Z/2Z), as a sign.
pub fn epsilon(g: &Mat2) -> i32 {
    let g = g.project(2).expect("even level");
    if g != Mat2::identity(2) && g.trace() == 0 {
        -1
    } else {
        1
    }
}

/// `{g in GL2(Z/4Z) : det g = epsilon(g mod 2)}`, with det read in {1, -1}.
pub fn h4p() -> FinGroup<Mat2> {
    let elems: Vec<Mat2> = gl2(4)
        .elements()
        .iter()
        .filter(|g| (if g.det() == 1 { 1 } else { -1 }) == epsilon(g))
        .copied()
        .collect();
    FinGroup::from_elements(Mat2::identity(4), &elems)
}

fn mats(n: u32, entries: &[[i64; 4]]) -> Vec<Mat2> {
    entries
        .iter()
        .map(|e| Mat2::new(n, *e).expect("valid literal"))
        .collect()
}

pub fn h4pp() -> FinGroup<Mat2> {
    closure(&mats(4, &[[0, 1, 3, 0], [0, 1, 1, 1]]), 4).expect("invertible")
}

pub fn h9p() -> FinGroup<Mat2> {
    closure(&mats(9, &[[0, 2, 4, 0], [4, 1, -3, 4], [2, 0, 0, 2], [-1, 0, 0, 1]]), 9).expect("invertible")
}

fn named(label: Label, level36: bool, group: FinGroup<Mat2>) -> NamedSubgroup {
    let definition = match label {
        Label::N => "unique index-6 normal subgroup of GL2(Z/3Z)",
        Label::H6p => "graph of theta in GL2(Z/2Z) x GL2(Z/3Z)",
        Label::H4p => "det g = epsilon(g mod 2)",
        Label::H4pp => "generated by [[0,1],[3,0]] and [[0,1],[1,1]]",
        Label::H9p => "generated by [[0,2],[4,0]], [[4,1],[-3,4]], 2I, diag(-1,1)",
    };
    NamedSubgroup {
        label,
        level36,
        group,
        definition,
    }
}

/// The four exceptional groups at their own levels, followed by their
/// full preimages at level 36, in the order H6', H4', H4'', H9'. Each is
/// checked for surjective determinant and for containing -I; the level-36
/// preimages are also checked to surject onto GL2(Z/2Z) and GL2(Z/3Z).
pub fn canonical_subgroups() -> Result<Vec<NamedSubgroup>> {
    let theta = Theta::new()?;
    let base = vec![
        named(Label::H6p, false, h6p(&theta)),
        named(Label::H4p, false, h4p()),
        named(Label::H4pp, false, h4pp()),
        named(Label::H9p, false, h9p()),
    ];
    let mut out = base.clone();
    for b in &base {
        out.push(named(b.label, true, preimage(&b.group, 36)?));
    }
    for s in &out {
        let n = s.group.modulus();
        if !s.group.det_surjective() {
            return Err(Error::verification(
                format!("{}.det", s.name()),
                "determinant not surjective",
            ));
        }
        if !s.group.contains(&Mat2::scalar(n, -1)) {
            return Err(Error::verification(format!("{}.minus-one", s.name()), "-I missing"));
        }
        if s.level36 {
            for d in [2, 3] {
                if s.group.project(d)?.order() != gl2(d).order() {
                    return Err(Error::verification(
                        format!("{}.project{d}", s.name()),
                        format!("reduction mod {d} is not onto"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_has_eight_elements_and_contains_minus_one() {
        let n = unique_index6_normal().unwrap();
        assert_eq!(n.group.order(), 8);
        assert!(n.group.contains(&Mat2::scalar(3, -1)));
        assert!(in_n(&Mat2::scalar(3, -1)));
        assert!(!in_n(&Mat2::new(3, [1, 1, 0, 1]).unwrap()));
    }

    #[test]
    fn theta_properties() {
        let t = Theta::new().unwrap();
        assert_eq!(t.apply(&Mat2::scalar(3, -1)), Mat2::identity(2));
        assert_eq!(t.hom.image().order(), 6);
        let n = n_by_equation();
        for g in gl2(3).elements() {
            for k in n.elements() {
                assert_eq!(t.apply(&g.mul(k).unwrap()), t.apply(g));
            }
        }
    }

    #[test]
    fn orders() {
        let t = Theta::new().unwrap();
        let h = h6p(&t);
        assert_eq!(h.order(), 48);
        assert_eq!(gl2(6).order() / h.order(), 6);
        assert_eq!(h4p().order(), 48);
        assert!(h4p().is_subgroup_of(&gl2(4)));
    }

    #[test]
    fn preimages_at_36() {
        let subs = canonical_subgroups().unwrap();
        assert_eq!(subs.len(), 8);
        let p6 = subs.iter().find(|s| s.level36 && s.label == Label::H6p).unwrap();
        assert_eq!(p6.group.order(), 62208);
        assert_eq!(373248 / p6.group.order(), 6);
    }
}
