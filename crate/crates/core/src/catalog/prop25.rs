//! Step-by-step checks of the level-4 and level-9 structure used to pin down
//! the only entangled level-36 fibered product.

use std::collections::BTreeSet;

use super::named::{n_by_equation, Theta};
use crate::error::Result;
use crate::groups::{closure, gl2, preimage, quotient, reduction_kernel, sl2, CayleyTable, FinGroup, GroupElement};
use crate::modring::Mat2;
use crate::par::{self, Exec};
use crate::report::Report;

type IntMat = [i64; 4];

fn int_mul(a: &IntMat, b: &IntMat) -> IntMat {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// The lift of GL2(Z/2Z) into GL2(Z) whose reduction splits GL2(Z/4Z) -> GL2(Z/2Z).
pub fn section_table() -> Vec<([i64; 4], IntMat)> {
    vec![
        ([1, 0, 0, 1], [1, 0, 0, 1]),
        ([1, 1, 1, 0], [-1, -1, 1, 0]),
        ([0, 1, 1, 1], [0, 1, -1, -1]),
        ([0, 1, 1, 0], [0, 1, 1, 0]),
        ([1, 1, 0, 1], [-1, -1, 0, 1]),
        ([1, 0, 1, 1], [1, 0, -1, -1]),
    ]
}

/// A 2x2 matrix over F_2 packed as bits `a b c d` (a is bit 0).
fn to_bits(m: &Mat2) -> u32 {
    let e = m.entries();
    (0..4).map(|i| (e[i] & 1) << i).sum()
}

fn from_bits(n: u32, bits: u32) -> Mat2 {
    Mat2::new(
        n,
        [
            (bits & 1) as i64,
            (bits >> 1 & 1) as i64,
            (bits >> 2 & 1) as i64,
            (bits >> 3 & 1) as i64,
        ],
    )
    .expect("small entries")
}

/// Additive subgroups of M2(F_2) stable under conjugation by GL2(F_2), as
/// sorted sets of packed matrices. Found by testing all 2^16 subsets.
pub fn invariant_subspaces() -> Vec<BTreeSet<u32>> {
    let g2 = gl2(2);
    // perms[g][m] = g m g^{-1}; M2(F_2) is not a group, so conjugate by hand
    let perms: Vec<[u32; 16]> = g2
        .elements()
        .iter()
        .map(|g| {
            let gi = GroupElement::inverse(g);
            let mut p = [0u32; 16];
            for (m, slot) in p.iter_mut().enumerate() {
                *slot = to_bits(&g.mul_unchecked(&from_bits(2, m as u32)).mul_unchecked(&gi));
            }
            p
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << 16 {
        if mask & 1 == 0 {
            continue;
        }
        let members: Vec<u32> = (0..16).filter(|m| mask >> m & 1 == 1).collect();
        let additive = members
            .iter()
            .all(|&x| members.iter().all(|&y| mask >> (x ^ y) & 1 == 1));
        let stable = perms
            .iter()
            .all(|p| members.iter().all(|&x| mask >> p[x as usize] & 1 == 1));
        if additive && stable {
            out.push(members.into_iter().collect());
        }
    }
    out
}

fn bits_of(rows: &[[i64; 4]]) -> BTreeSet<u32> {
    rows.iter()
        .map(|e| to_bits(&Mat2::new(2, *e).expect("literal")))
        .collect()
}

/// The five nonzero subspaces listed for the kernel of the level-4 map,
/// each with the expected quotient.
fn table_rows() -> Vec<(&'static str, BTreeSet<u32>)> {
    let all: BTreeSet<u32> = (0..16).collect();
    let trace_zero: BTreeSet<u32> = (0..16u32).filter(|&m| ((m & 1) ^ (m >> 3 & 1)) == 0).collect();
    vec![
        ("row1", all),
        ("row2", trace_zero),
        (
            "row3",
            bits_of(&[[0, 0, 0, 0], [1, 0, 0, 1], [1, 1, 1, 0], [0, 1, 1, 1]]),
        ),
        (
            "row4",
            bits_of(&[[0, 0, 0, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 0]]),
        ),
        ("row5", bits_of(&[[0, 0, 0, 0], [1, 0, 0, 1]])),
    ]
}

/// `GL2(F_2) x| (F_2)^2` for a given action on packed vectors `x + 2y`.
fn semidirect(act: impl Fn(&Mat2, usize) -> usize) -> Result<CayleyTable> {
    let (t, elems) = CayleyTable::from_group(&gl2(2));
    CayleyTable::from_fn(24, |a, b| {
        let (g1, v1) = (a / 4, a % 4);
        let (g2, v2) = (b / 4, b % 4);
        t.mul(g1, g2) * 4 + (v1 ^ act(&elems[g1], v2))
    })
}

fn column_action(g: &Mat2, v: usize) -> usize {
    let e = g.entries();
    let (x, y) = ((v & 1) as u32, (v >> 1) as u32);
    let x2 = (e[0] * x + e[1] * y) % 2;
    let y2 = (e[2] * x + e[3] * y) % 2;
    (x2 + 2 * y2) as usize
}

fn sign_swap_action(g: &Mat2, v: usize) -> usize {
    if super::named::epsilon(g) == 1 {
        v
    } else {
        (v & 1) << 1 | v >> 1
    }
}

/// `I + 2A` mod 4 for a packed `A`.
fn kernel_elem(bits: u32) -> Mat2 {
    let e = from_bits(2, bits).entries().map(|x| 2 * x as i64);
    Mat2::new(4, [1 + e[0], e[1], e[2], 1 + e[3]]).expect("small entries")
}

/// Multiplicative group `{I + 2A : A in V}`.
fn kernel_part(v: &BTreeSet<u32>) -> FinGroup<Mat2> {
    let elems: Vec<Mat2> = v.iter().map(|&m| kernel_elem(m)).collect();
    FinGroup::from_elements(Mat2::identity(4), &elems)
}

fn step_section(r: &mut Report) {
    let anchor = "splitting of GL2(Z/4Z) -> GL2(Z/2Z) by the six-matrix section";
    let table = section_table();
    let lookup = |m: &Mat2| {
        table
            .iter()
            .find(|(k, _)| Mat2::new(2, *k).expect("literal") == *m)
            .map(|x| x.1)
    };
    let mut integral = true;
    for (x, sx) in &table {
        for (y, sy) in &table {
            let xy = Mat2::new(2, *x)
                .expect("literal")
                .mul_unchecked(&Mat2::new(2, *y).expect("literal"));
            integral &= lookup(&xy) == Some(int_mul(sx, sy));
        }
    }
    r.check(
        "prop.section.integral-hom",
        anchor,
        integral,
        "36 products agree in GL2(Z)",
    );
    let reduces = table
        .iter()
        .all(|(x, sx)| Mat2::new(2, *sx).expect("literal") == Mat2::new(2, *x).expect("literal"));
    let mod4: Vec<Mat2> = table.iter().map(|(_, s)| Mat2::new(4, *s).expect("literal")).collect();
    let image = closure(&mod4, 4).map(|g| g.order()).unwrap_or(0);
    r.check(
        "prop.section.splits",
        anchor,
        reduces && image == 6,
        format!("section reduces to the identity mod 2; image order mod 4 = {image}"),
    );
}

fn step_subspaces(r: &mut Report) {
    let anchor = "invariant-subspace table";
    let kernel = reduction_kernel(4, 2).expect("2 | 4");
    let additive =
        (0u32..16).all(|a| (0u32..16).all(|b| kernel_elem(a).mul_unchecked(&kernel_elem(b)) == kernel_elem(a ^ b)));
    let onto = (0u32..16).all(|a| kernel.contains(&kernel_elem(a)));
    r.check(
        "prop.kernel.additive",
        anchor,
        additive && onto && kernel.order() == 16,
        format!("I+2A -> A is an isomorphism onto M2(F_2); |ker| = {}", kernel.order()),
    );

    let found = invariant_subspaces();
    let mut expected: Vec<BTreeSet<u32>> = table_rows().into_iter().map(|x| x.1).collect();
    expected.push(BTreeSet::from([0]));
    let same = found.len() == expected.len() && expected.iter().all(|e| found.contains(e));
    r.check(
        "prop.subspaces",
        anchor,
        same,
        format!(
            "found={} expected={} (five listed rows plus zero)",
            found.len(),
            expected.len()
        ),
    );
}

fn step_table_quotients(r: &mut Report) -> Result<()> {
    let g4 = gl2(4);
    let (s3, _) = CayleyTable::from_group(&gl2(2));
    let scalars = closure(&[Mat2::scalar(4, 3)], 4)?;
    let (pgl, _) = quotient(&g4, &scalars)?;
    let expected: Vec<(&str, CayleyTable)> = vec![
        ("GL2(Z/2Z)", s3.clone()),
        ("GL2(Z/2Z) x {+-1}", s3.direct_product(&CayleyTable::cyclic(2))),
        ("GL2(Z/2Z) x| (Z/2Z)^2, column action", semidirect(column_action)?),
        ("GL2(Z/2Z) x| (Z/2Z)^2, swap by sign", semidirect(sign_swap_action)?),
        ("PGL2(Z/4Z)", (*pgl).clone()),
    ];
    for ((row, v), (name, want)) in table_rows().into_iter().zip(expected) {
        let n4 = kernel_part(&v);
        let normal = n4.is_normal_in(&g4);
        let ok = normal && {
            let (q, _) = quotient(&g4, &n4)?;
            q.is_isomorphic(&want)
        };
        r.check(
            &format!("prop.table.{row}"),
            &format!("invariant-subspace table, {row}"),
            ok,
            format!("|N4|={} quotient {name} of order {}", n4.order(), want.order()),
        );
    }
    Ok(())
}

/// `eta1` on the order-3 subgroup of GL2(Z/2Z), sending [[1,1],[1,0]] to 1.
fn eta1(m: &Mat2) -> Option<u32> {
    match m.entries() {
        [1, 0, 0, 1] => Some(0),
        [1, 1, 1, 0] => Some(1),
        [0, 1, 1, 1] => Some(2),
        _ => None,
    }
}

/// `eta2` on `1 + 3Z/9Z`, sending 4 to 1.
fn eta2(d: u32) -> Option<u32> {
    match d {
        1 => Some(0),
        4 => Some(1),
        7 => Some(2),
        _ => None,
    }
}

fn step_level9(r: &mut Report, exec: Exec) -> Result<()> {
    let anchor_comm = "commutator calculation at level 9";
    let p = preimage(&sl2(3), 9)?;
    let pp = p.commutator_subgroup();
    let target = preimage(&n_by_equation(), 9)?.intersection(&sl2(9));
    r.check(
        "prop.commutator",
        anchor_comm,
        pp == target,
        format!("|P|={} |[P,P]|={} |target|={}", p.order(), pp.order(), target.order()),
    );
    let (q, _) = quotient(&p, &pp)?;
    let c3c3 = CayleyTable::cyclic(3).direct_product(&CayleyTable::cyclic(3));
    r.check(
        "prop.abelianization",
        "quotient is Z/3Z x Z/3Z",
        q.order() == 9 && q.exponent() == 3 && q.is_isomorphic(&c3c3),
        format!("order={} exponent={}", q.order(), q.exponent()),
    );

    let theta = Theta::new()?;
    let chi1 = |x: &Mat2| eta1(&theta.apply(&x.project(3).expect("3 | 9")));
    let chi2 = |x: &Mat2| eta2(x.det());
    let anchor_chars = "characters chi1 and chi2";
    let defined = p.elements().iter().all(|x| chi1(x).is_some() && chi2(x).is_some());
    let homs = defined
        && p.elements().iter().all(|x| {
            p.generators().iter().all(|g| {
                let xg = x.mul_unchecked(g);
                chi1(&xg) == Some((chi1(x).unwrap() + chi1(g).unwrap()) % 3)
                    && chi2(&xg) == Some((chi2(x).unwrap() + chi2(g).unwrap()) % 3)
            })
        });
    r.check(
        "prop.characters.homs",
        anchor_chars,
        homs,
        "chi1, chi2 are homomorphisms P -> Z/3Z",
    );
    if !homs {
        return Ok(());
    }
    let c1 = |x: &Mat2| chi1(x).expect("checked");
    let c2 = |x: &Mat2| chi2(x).expect("checked");

    let g9 = gl2(9);
    let witness = par::find_map_first(exec, g9.elements(), |g| {
        p.elements()
            .iter()
            .find(|x| c1(&x.conjugate_by(g)) != c1(x))
            .map(|x| (*g, *x))
    });
    r.check(
        "prop.chi1.witness",
        "existence of g, x with chi1(g x g^-1) != chi1(x)",
        witness.is_some(),
        match witness {
            Some((g, x)) => format!("g={g} x={x}"),
            None => "no witness".to_string(),
        },
    );
    let invariant = par::all(exec, g9.elements(), |g| {
        p.elements().iter().all(|x| c2(&x.conjugate_by(g)) == c2(x))
    });
    r.check(
        "prop.chi2.invariant",
        "chi2 is conjugation invariant",
        invariant,
        format!("checked {} pairs", g9.order() * p.order()),
    );

    let values: BTreeSet<(u32, u32)> = p.elements().iter().map(|x| (c1(x), c2(x))).collect();
    let kernel: Vec<Mat2> = p
        .elements()
        .iter()
        .filter(|x| c1(x) == 0 && c2(x) == 0)
        .copied()
        .collect();
    r.check(
        "prop.characters.basis",
        anchor_chars,
        values.len() == 9 && kernel == pp.elements(),
        format!(
            "(chi1, chi2) hits {} values; joint kernel has {} elements",
            values.len(),
            kernel.len()
        ),
    );

    // the branch assumes N9 reduces onto SL2(Z/3Z); kernels reducing to a
    // smaller group belong to the case where psi9 factors through level 3
    let mut normal_pairs = Vec::new();
    let mut outside_branch = Vec::new();
    let mut sl2_ok = true;
    let (s9, s3) = (sl2(9), sl2(3));
    for a1 in 0..3u32 {
        for a2 in 0..3u32 {
            if (a1, a2) == (0, 0) {
                continue;
            }
            let elems: Vec<Mat2> = p
                .elements()
                .iter()
                .filter(|x| (a1 * c1(x) + a2 * c2(x)) % 3 == 0)
                .copied()
                .collect();
            let k = FinGroup::from_elements(Mat2::identity(9), &elems);
            if k.project(3)? != s3 {
                outside_branch.push((a1, a2));
                continue;
            }
            if k.is_normal_in(&g9) {
                normal_pairs.push((a1, a2));
                sl2_ok &= k == s9;
            }
        }
    }
    r.check(
        "prop.kernels",
        "normal kernel forces N9 = SL2(Z/9Z)",
        !normal_pairs.is_empty() && normal_pairs.iter().all(|&(a1, _)| a1 == 0) && sl2_ok,
        format!(
            "normal for (a1,a2) in {normal_pairs:?}; equals SL2(Z/9Z): {sl2_ok}; not onto SL2(Z/3Z): {outside_branch:?}"
        ),
    );
    Ok(())
}

/// Runs every step in order and reports each as a line.
pub fn verify_prop25_steps(exec: Exec) -> Result<Report> {
    let mut r = Report::new();
    step_section(&mut r);
    step_subspaces(&mut r);
    step_table_quotients(&mut r)?;
    step_level9(&mut r, exec)?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_invariant_subspaces() {
        let s = invariant_subspaces();
        assert_eq!(s.len(), 6);
        let sizes: BTreeSet<usize> = s.iter().map(|x| x.len()).collect();
        assert_eq!(sizes, BTreeSet::from([1, 2, 4, 8, 16]));
    }

    #[test]
    fn semidirect_tables_are_groups() {
        let a = semidirect(column_action).unwrap();
        let b = semidirect(sign_swap_action).unwrap();
        assert_eq!(a.order(), 24);
        assert!(!a.is_isomorphic(&b));
    }
}
