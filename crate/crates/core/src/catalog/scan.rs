//! Exhaustive scan of the fibered products GL2(Z/4Z) x_Q GL2(Z/9Z).
//!
//! A fibered product `H` is determined by normal subgroups `N4`, `N9` and an
//! isomorphism `phi: G4/N4 -> G9/N9`; it is generated by the pairs
//! `(g, s(phi(psi4(g))))` for generators `g` of G4 and any section `s`,
//! together with `1 x N9`. Every test below works from these generators, so
//! no `H` is enumerated unless it survives.

use std::sync::Arc;

use super::named::{h6p, Theta};
use crate::error::{Error, Result};
use crate::groups::{
    commutator_of, find_conjugator_into, gl2, normal_subgroups, quotient, CayleyTable, FinGroup, TableHom,
    DEFAULT_NORMAL_BOUND,
};
use crate::modring::{unit_span, units, Mat2};
use crate::par::{self, Exec};

/// One fibered product that passed both filters.
#[derive(Clone, Debug)]
pub struct Survivor {
    pub n4_order: usize,
    pub n9_order: usize,
    pub q_order: usize,
    pub q_cyclic: bool,
    pub order: usize,
    pub commutator_order: usize,
    pub generators: Vec<Mat2>,
    /// `g` in GL2(Z/6Z) with `g pi6(H) g^{-1}` inside H6'.
    pub witness6: Option<Mat2>,
}

#[derive(Clone, Debug, Default)]
pub struct ScanReport {
    pub normal4: usize,
    pub normal9: usize,
    /// Pairs `(N4, N9)` with isomorphic quotients.
    pub matched_pairs: usize,
    /// Fibered products, one per isomorphism.
    pub products: usize,
    pub cyclic_products: usize,
    pub det_surjective: usize,
    /// Cyclic-Q products that still have a proper commutator subgroup.
    pub cyclic_survivors: usize,
    pub survivors: Vec<Survivor>,
    pub full_commutator_order: usize,
}

impl ScanReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &Survivor> {
        self.survivors.iter().filter(|s| s.witness6.is_none())
    }

    pub fn contained(&self) -> usize {
        self.survivors.iter().filter(|s| s.witness6.is_some()).count()
    }
}

struct Side {
    group: FinGroup<Mat2>,
    table: Arc<CayleyTable>,
    proj: TableHom<Mat2>,
}

/// Quotients of `g` of order at most `max_q`, one per normal subgroup.
fn small_quotients(g: &FinGroup<Mat2>, max_q: usize) -> Result<(usize, Vec<Side>)> {
    let normals = normal_subgroups(g, DEFAULT_NORMAL_BOUND)?;
    let count = normals.len();
    let mut out = Vec::new();
    for n in normals {
        if g.order() / n.order() > max_q {
            continue;
        }
        let (table, proj) = quotient(g, &n)?;
        out.push(Side { group: n, table, proj });
    }
    Ok((count, out))
}

struct Candidate {
    n4_order: usize,
    n9_order: usize,
    q_order: usize,
    q_cyclic: bool,
    generators: Vec<Mat2>,
}

/// Runs the scan. Survivors are sorted by `(|Q|, |N4|, |N9|, generators)`.
pub fn goursat_scan_36(exec: Exec) -> Result<ScanReport> {
    let g4 = gl2(4);
    let g9 = gl2(9);
    // common quotients have order dividing gcd(96, 3888) = 48
    let max_q = num::integer::gcd(g4.order(), g9.order());
    let (normal4, side4) = small_quotients(&g4, max_q)?;
    let (normal9, side9) = small_quotients(&g9, max_q)?;

    let mut report = ScanReport {
        normal4,
        normal9,
        full_commutator_order: super::classify::full_commutator_order_36(),
        ..Default::default()
    };
    let mut candidates = Vec::new();
    for a in &side4 {
        for b in &side9 {
            if a.table.order() != b.table.order() {
                continue;
            }
            let isos = a.table.isomorphisms(&b.table, None);
            if isos.is_empty() {
                continue;
            }
            report.matched_pairs += 1;
            let section9 = b.proj.section();
            for phi in isos {
                let mut gens: Vec<Mat2> = g4
                    .generators()
                    .iter()
                    .map(|g| {
                        let q = phi[a.proj.apply(g).expect("in G4")] as usize;
                        let s = section9[q].expect("psi9 is onto");
                        Mat2::crt_join(g, &s).expect("coprime")
                    })
                    .collect();
                gens.extend(
                    b.group
                        .generators()
                        .iter()
                        .map(|n| Mat2::crt_join(&Mat2::identity(4), n).expect("coprime")),
                );
                candidates.push(Candidate {
                    n4_order: a.group.order(),
                    n9_order: b.group.order(),
                    q_order: a.table.order(),
                    q_cyclic: a.table.is_cyclic(),
                    generators: gens,
                });
            }
        }
    }
    report.products = candidates.len();
    report.cyclic_products = candidates.iter().filter(|c| c.q_cyclic).count();

    let unit_count = units(36).len();
    let full = report.full_commutator_order;
    // (det onto, commutator order) for each candidate
    let filtered: Vec<(bool, usize)> = par::map(exec, &candidates, |c| {
        let dets: Vec<u32> = c.generators.iter().map(|g| g.det()).collect();
        let onto = unit_span(&dets, 36).len() == unit_count;
        let comm = if onto {
            commutator_of(Mat2::identity(36), &c.generators).order()
        } else {
            0
        };
        (onto, comm)
    });
    report.det_surjective = filtered.iter().filter(|f| f.0).count();

    let theta = Theta::new()?;
    let target = h6p(&theta);
    let g6 = gl2(6);
    for (c, &(onto, comm)) in candidates.iter().zip(&filtered) {
        if !onto || comm >= full {
            continue;
        }
        if c.q_cyclic {
            report.cyclic_survivors += 1;
        }
        let order = FinGroup::generate(Mat2::identity(36), &c.generators).order();
        if order * c.q_order != g4.order() * g9.order() {
            return Err(Error::verification(
                "goursat36.order",
                format!(
                    "fibered product has order {order}, expected {}",
                    g4.order() * g9.order() / c.q_order
                ),
            ));
        }
        let reduced: Vec<Mat2> = c.generators.iter().map(|g| g.project(6)).collect::<Result<_>>()?;
        let witness6 = find_conjugator_into(&reduced, &target, &g6, exec);
        report.survivors.push(Survivor {
            n4_order: c.n4_order,
            n9_order: c.n9_order,
            q_order: c.q_order,
            q_cyclic: c.q_cyclic,
            order,
            commutator_order: comm,
            generators: c.generators.clone(),
            witness6,
        });
    }
    report.survivors.sort_by(|a, b| {
        (a.q_order, a.n4_order, a.n9_order, &a.generators).cmp(&(b.q_order, b.n4_order, b.n9_order, &b.generators))
    });
    Ok(report)
}

/// The datum with `psi4` = reduction mod 2 and `psi9` = theta after reduction
/// mod 3, as generators at level 36.
pub fn s3_datum_generators(theta: &Theta) -> Vec<Mat2> {
    let g4 = gl2(4);
    let g9 = gl2(9);
    let mut gens = Vec::new();
    // pairs (a, b) with a mod 2 = theta(b mod 3), from a section of theta
    let g3 = gl2(3);
    for a in g4.generators() {
        let want = a.project(2).expect("2 | 4");
        let b3 = g3
            .elements()
            .iter()
            .find(|b| theta.apply(b) == want)
            .expect("theta is onto");
        gens.push(Mat2::crt_join(a, &b3.lift(9).expect("3 | 9")).expect("coprime"));
    }
    // 1 x ker(theta . pi_{9,3})
    for b in g9.elements() {
        if theta.apply(&b.project(3).expect("3 | 9")) == Mat2::identity(2) {
            gens.push(Mat2::crt_join(&Mat2::identity(4), b).expect("coprime"));
        }
    }
    FinGroup::generate(Mat2::identity(36), &gens).generators().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::preimage;

    #[test]
    fn s3_datum_is_the_h6_preimage() {
        let theta = Theta::new().unwrap();
        let gens = s3_datum_generators(&theta);
        let h = FinGroup::generate(Mat2::identity(36), &gens);
        assert_eq!(h, preimage(&h6p(&theta), 36).unwrap());
    }
}
