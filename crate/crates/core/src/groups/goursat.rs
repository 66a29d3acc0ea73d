//! Subgroups of direct products with surjective projections, as fibered
//! products over a common quotient.

use std::collections::HashMap;
use std::sync::Arc;

use super::{quotient, CayleyTable, FinGroup, GroupElement, Pair, TableHom};
use crate::error::{Error, Result};

/// `H = G0 x_Q G1 = {(g0, g1) : psi0(g0) = psi1(g1)}`.
#[derive(Clone, Debug)]
pub struct GoursatDatum<A, B> {
    pub q: Arc<CayleyTable>,
    pub psi0: TableHom<A>,
    pub psi1: TableHom<B>,
}

impl<A: GroupElement, B: GroupElement> GoursatDatum<A, B> {
    /// Checks both maps are surjective onto the same table.
    pub fn new(psi0: TableHom<A>, psi1: TableHom<B>) -> Result<Self> {
        if psi0.codomain() != psi1.codomain() {
            return Err(Error::input("the two maps have different codomains"));
        }
        if !psi0.is_surjective() || !psi1.is_surjective() {
            return Err(Error::input("fibered product maps must be surjective"));
        }
        Ok(GoursatDatum {
            q: psi0.codomain().clone(),
            psi0,
            psi1,
        })
    }

    pub fn fibered_order(&self) -> usize {
        self.psi0.domain().order() * self.psi1.domain().order() / self.q.order()
    }

    /// `(f . psi0, f . psi1)` for a surjective table map `f: Q -> Q1`.
    pub fn compose(&self, target: Arc<CayleyTable>, f: &[u32]) -> Result<Self> {
        GoursatDatum::new(self.psi0.then(target.clone(), f)?, self.psi1.then(target, f)?)
    }
}

/// Decomposes `h <= g0 x g1`. Fails unless both projections are onto.
pub fn goursat_decompose<A: GroupElement, B: GroupElement>(
    h: &FinGroup<Pair<A, B>>,
    g0: &FinGroup<A>,
    g1: &FinGroup<B>,
) -> Result<GoursatDatum<A, B>> {
    let p0 = h.image(g0.identity().clone(), |x| x.0.clone());
    let p1 = h.image(g1.identity().clone(), |x| x.1.clone());
    if p0 != *g0 {
        return Err(Error::input("first projection is not surjective"));
    }
    if p1 != *g1 {
        return Err(Error::input("second projection is not surjective"));
    }
    // N0 = {g0 : (g0, 1) in H}
    let e1 = g1.identity();
    let n0: Vec<A> = h
        .elements()
        .iter()
        .filter(|x| x.1 == *e1)
        .map(|x| x.0.clone())
        .collect();
    let n0 = FinGroup::from_elements(g0.identity().clone(), &n0);
    let (q, psi0) = quotient(g0, &n0)?;
    // psi1(g1) = psi0(g0) for any (g0, g1) in H; well defined because N0 is the fiber over 1
    let mut over: HashMap<&B, usize> = HashMap::with_capacity(g1.order());
    for x in h.elements() {
        over.entry(&x.1)
            .or_insert_with(|| psi0.apply(&x.0).expect("g0 in domain"));
    }
    let images: Vec<usize> = g1.generators().iter().map(|g| over[g]).collect();
    let psi1 = TableHom::from_generator_images(g1.clone(), q.clone(), &images)?;
    GoursatDatum::new(psi0, psi1)
}

/// The fibered product defined by a datum.
pub fn goursat_fiber<A: GroupElement, B: GroupElement>(datum: &GoursatDatum<A, B>) -> FinGroup<Pair<A, B>> {
    let q = datum.q.order();
    let mut fibers1: Vec<Vec<&B>> = vec![Vec::new(); q];
    for x in datum.psi1.domain().elements() {
        fibers1[datum.psi1.apply(x).expect("in domain")].push(x);
    }
    let mut elems = Vec::with_capacity(datum.fibered_order());
    for a in datum.psi0.domain().elements() {
        let k = datum.psi0.apply(a).expect("in domain");
        for &b in &fibers1[k] {
            elems.push(Pair(a.clone(), b.clone()));
        }
    }
    let id = Pair(
        datum.psi0.domain().identity().clone(),
        datum.psi1.domain().identity().clone(),
    );
    FinGroup::from_elements(id, &elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{gl2, quotient, sl2};
    use crate::modring::Mat2;

    fn product<A: GroupElement, B: GroupElement>(g0: &FinGroup<A>, g1: &FinGroup<B>) -> FinGroup<Pair<A, B>> {
        let mut gens: Vec<Pair<A, B>> = g0
            .generators()
            .iter()
            .map(|a| Pair(a.clone(), g1.identity().clone()))
            .collect();
        gens.extend(g1.generators().iter().map(|b| Pair(g0.identity().clone(), b.clone())));
        FinGroup::generate(Pair(g0.identity().clone(), g1.identity().clone()), &gens)
    }

    #[test]
    fn diagonal_gives_q_isomorphic_to_g() {
        let g = gl2(2);
        let diag: Vec<Pair<Mat2, Mat2>> = g.elements().iter().map(|x| Pair(*x, *x)).collect();
        let h = FinGroup::from_elements(Pair(*g.identity(), *g.identity()), &diag);
        let d = goursat_decompose(&h, &g, &g).unwrap();
        let (t, _) = CayleyTable::from_group(&g);
        assert!(d.q.is_isomorphic(&t));
        assert_eq!(goursat_fiber(&d), h);
    }

    #[test]
    fn full_product_has_trivial_q() {
        let (g0, g1) = (gl2(2), gl2(3));
        let h = product(&g0, &g1);
        let d = goursat_decompose(&h, &g0, &g1).unwrap();
        assert_eq!(d.q.order(), 1);
        assert_eq!(goursat_fiber(&d).order(), 288);
    }

    #[test]
    fn decompose_rejects_non_surjective_projection() {
        let g0 = gl2(2);
        let g1 = gl2(3);
        let h = product(&FinGroup::trivial(*g0.identity()), &g1);
        assert!(goursat_decompose(&h, &g0, &g1).is_err());
    }

    #[test]
    fn fiber_grows_under_further_quotients() {
        // sign on GL2(Z/2) and det on GL2(Z/3), both onto Z/2
        let (g0, g1) = (gl2(2), gl2(3));
        let (q, sign) = quotient(&g0, &g0.commutator_subgroup()).unwrap();
        let (_, det) = quotient(&g1, &sl2(3)).unwrap();
        let det = det.then(q.clone(), &[0, 1]).unwrap();
        let d = GoursatDatum::new(sign, det).unwrap();
        assert_eq!(goursat_fiber(&d).order(), 144);
        let trivial = Arc::new(CayleyTable::cyclic(1));
        let coarser = d.compose(trivial, &[0, 0]).unwrap();
        let (small, big) = (goursat_fiber(&d), goursat_fiber(&coarser));
        assert!(small.is_subgroup_of(&big));
        assert_eq!(big.order(), 288);
    }
}
