//! Finite groups stored as fully enumerated, canonically sorted element lists.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::modring::{gl2_generators, Mat2};

pub mod conj;
pub mod file;
pub mod goursat;
pub mod hom;
pub mod maximal;
pub mod normal;
pub mod table;

pub use conj::{are_conjugate, are_conjugate_with, find_conjugator_into};
pub use file::GroupFile;
pub use goursat::{goursat_decompose, goursat_fiber, GoursatDatum};
pub use hom::{quotient, GroupHom, TableHom};
pub use maximal::{is_maximal, maximal_subgroups_detsurj, MaximalClass, MaximalSubgroup};
pub use normal::{all_subgroups, conjugacy_classes, normal_subgroups, DEFAULT_NORMAL_BOUND};
pub use table::CayleyTable;

/// Context-free group arithmetic on an element type.
pub trait GroupElement: Clone + Eq + Ord + Hash + Debug + Send + Sync {
    fn compose(&self, rhs: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// Identity of the ambient group `self` lives in.
    fn identity_like(&self) -> Self;

    fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }

    fn commutator(&self, other: &Self) -> Self {
        self.compose(other).compose(&self.inverse()).compose(&other.inverse())
    }
}

impl GroupElement for Mat2 {
    #[inline]
    fn compose(&self, rhs: &Self) -> Self {
        self.mul_unchecked(rhs)
    }

    fn inverse(&self) -> Self {
        Mat2::inverse(self).expect("group element must be invertible")
    }

    fn identity_like(&self) -> Self {
        Mat2::identity(self.modulus())
    }
}

/// An element of a direct product `G0 x G1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: GroupElement, B: GroupElement> GroupElement for Pair<A, B> {
    fn compose(&self, rhs: &Self) -> Self {
        Pair(self.0.compose(&rhs.0), self.1.compose(&rhs.1))
    }

    fn inverse(&self) -> Self {
        Pair(self.0.inverse(), self.1.inverse())
    }

    fn identity_like(&self) -> Self {
        Pair(self.0.identity_like(), self.1.identity_like())
    }
}

/// `[H, H]` for `H = <gens>`, without enumerating `H`: the closure of the
/// commutators of generators under conjugation by the generators.
pub fn commutator_of<E: GroupElement>(identity: E, gens: &[E]) -> FinGroup<E> {
    let mut b = Builder::trivial(identity);
    let mut queue = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = gens[i].commutator(&gens[j]);
            if b.extend(&c) {
                queue.push(c);
            }
        }
    }
    while let Some(k) = queue.pop() {
        for g in gens {
            let c = k.conjugate_by(g);
            if b.extend(&c) {
                queue.push(c);
            }
        }
    }
    b.finish()
}

/// Order of `x` as a group element.
pub fn element_order<E: GroupElement>(x: &E) -> u64 {
    let e = x.identity_like();
    let mut y = x.clone();
    let mut k = 1;
    while y != e {
        y = y.compose(x);
        k += 1;
    }
    k
}

/// Incremental subgroup construction (Dimino's coset method).
///
/// Invariant: `elems` is always a subgroup, and `gens` is an irredundant
/// generating sequence for it.
#[derive(Clone)]
pub(crate) struct Builder<E> {
    identity: E,
    gens: Vec<E>,
    elems: Vec<E>,
    set: HashSet<E>,
}

impl<E: GroupElement> Builder<E> {
    pub(crate) fn trivial(identity: E) -> Self {
        let mut set = HashSet::new();
        set.insert(identity.clone());
        Builder {
            gens: Vec::new(),
            elems: vec![identity.clone()],
            identity,
            set,
        }
    }

    pub(crate) fn from_group(g: &FinGroup<E>) -> Self {
        Builder {
            identity: g.identity.clone(),
            gens: g.generators.clone(),
            elems: g.elements.clone(),
            set: g.members.clone(),
        }
    }

    /// Replaces the subgroup `K` by `<K, x>`. Returns false if `x` was already in `K`.
    pub(crate) fn extend(&mut self, x: &E) -> bool {
        if self.set.contains(x) {
            return false;
        }
        self.gens.push(x.clone());
        let base = self.elems.clone();
        // right cosets K*r, explored along right multiplication by generators
        let mut reps = vec![self.identity.clone()];
        let mut i = 0;
        while i < reps.len() {
            for s in 0..self.gens.len() {
                let y = reps[i].compose(&self.gens[s]);
                if !self.set.contains(&y) {
                    for k in &base {
                        let z = k.compose(&y);
                        self.set.insert(z.clone());
                        self.elems.push(z);
                    }
                    reps.push(y);
                }
            }
            i += 1;
        }
        true
    }

    pub(crate) fn finish(mut self) -> FinGroup<E> {
        self.elems.sort_unstable();
        FinGroup {
            identity: self.identity,
            generators: self.gens,
            elements: self.elems,
            members: self.set,
        }
    }
}

/// A finite group given by generators and its full sorted element list.
#[derive(Clone, Debug)]
pub struct FinGroup<E> {
    identity: E,
    generators: Vec<E>,
    elements: Vec<E>,
    members: HashSet<E>,
}

impl<E: GroupElement> PartialEq for FinGroup<E> {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl<E: GroupElement> Eq for FinGroup<E> {}

impl<E: GroupElement> FinGroup<E> {
    pub fn trivial(identity: E) -> Self {
        Builder::trivial(identity).finish()
    }

    /// Smallest subgroup containing `gens`.
    pub fn generate(identity: E, gens: &[E]) -> Self {
        let mut b = Builder::trivial(identity);
        for g in gens {
            b.extend(g);
        }
        b.finish()
    }

    /// Wraps a known-closed element set, choosing a small generating set.
    /// Closure is re-established from the chosen generators, so a non-closed
    /// input yields its generated subgroup.
    pub fn from_elements(identity: E, elements: &[E]) -> Self {
        let mut b = Builder::trivial(identity);
        for x in elements {
            b.extend(x);
        }
        b.finish()
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    pub fn generators(&self) -> &[E] {
        &self.generators
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &FinGroup<E>) -> bool {
        self.order() <= other.order() && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_normal_in(&self, ambient: &FinGroup<E>) -> bool {
        self.is_subgroup_of(ambient)
            && ambient
                .generators
                .iter()
                .all(|g| self.generators.iter().all(|k| self.contains(&k.conjugate_by(g))))
    }

    pub fn is_abelian(&self) -> bool {
        let gs = &self.generators;
        gs.iter()
            .enumerate()
            .all(|(i, x)| gs[i + 1..].iter().all(|y| x.compose(y) == y.compose(x)))
    }

    /// `<self, extra>`.
    pub fn join(&self, extra: &[E]) -> FinGroup<E> {
        let mut b = Builder::from_group(self);
        for x in extra {
            b.extend(x);
        }
        b.finish()
    }

    /// `g self g^{-1}`.
    pub fn conjugate(&self, g: &E) -> FinGroup<E> {
        let gens: Vec<E> = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        FinGroup::generate(self.identity.clone(), &gens)
    }

    /// Smallest normal subgroup of `self` containing `base` and `extra`.
    /// `base` must already be a subgroup of `self`.
    pub fn normal_closure_over(&self, base: &FinGroup<E>, extra: &[E]) -> FinGroup<E> {
        let mut b = Builder::from_group(base);
        let mut queue: Vec<E> = base.generators.clone();
        for x in extra {
            if b.extend(x) {
                queue.push(x.clone());
            }
        }
        while let Some(k) = queue.pop() {
            for g in &self.generators {
                let c = k.conjugate_by(g);
                if b.extend(&c) {
                    queue.push(c);
                }
            }
        }
        b.finish()
    }

    pub fn normal_closure(&self, seeds: &[E]) -> FinGroup<E> {
        self.normal_closure_over(&FinGroup::trivial(self.identity.clone()), seeds)
    }

    /// `[self, self]`: the normal closure of the commutators of generators.
    pub fn commutator_subgroup(&self) -> FinGroup<E> {
        commutator_of(self.identity.clone(), &self.generators)
    }

    pub fn intersection(&self, other: &FinGroup<E>) -> FinGroup<E> {
        let common: Vec<E> = self.elements.iter().filter(|x| other.contains(x)).cloned().collect();
        FinGroup::from_elements(self.identity.clone(), &common)
    }

    /// Image under a homomorphism given as an element-wise function.
    pub fn image<F: GroupElement>(&self, identity: F, f: impl Fn(&E) -> F) -> FinGroup<F> {
        let gens: Vec<F> = self.generators.iter().map(f).collect();
        FinGroup::generate(identity, &gens)
    }

    pub fn center(&self) -> FinGroup<E> {
        let z: Vec<E> = self
            .elements
            .iter()
            .filter(|x| self.generators.iter().all(|g| g.compose(x) == x.compose(g)))
            .cloned()
            .collect();
        FinGroup::from_elements(self.identity.clone(), &z)
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.elements.iter().map(element_order).collect();
        v.sort_unstable();
        v
    }
}

impl FinGroup<Mat2> {
    pub fn modulus(&self) -> u32 {
        self.identity.modulus()
    }

    /// The group of units determinants `det(self)`, sorted.
    pub fn det_image(&self) -> Vec<u32> {
        let n = self.modulus();
        let dets: Vec<u32> = self.generators.iter().map(|g| g.det()).collect();
        crate::modring::unit_span(&dets, n)
    }

    pub fn det_surjective(&self) -> bool {
        self.det_image().len() == crate::modring::units(self.modulus()).len()
    }

    /// Image under reduction to level `d`.
    pub fn project(&self, d: u32) -> Result<FinGroup<Mat2>> {
        if d == 0 || !self.modulus().is_multiple_of(d) {
            return Err(Error::input(format!("{d} does not divide {}", self.modulus())));
        }
        let id = Mat2::identity(d);
        Ok(self.image(id, |g| g.project(d).expect("divisor checked")))
    }
}

/// Closure of invertible matrices mod `n`.
pub fn closure(gens: &[Mat2], n: u32) -> Result<FinGroup<Mat2>> {
    for g in gens {
        if g.modulus() != n {
            return Err(Error::input(format!(
                "generator {g} has modulus {}, expected {n}",
                g.modulus()
            )));
        }
        if !g.is_invertible() {
            return Err(Error::input(format!(
                "generator {g} is not invertible mod {n} (det {})",
                g.det()
            )));
        }
    }
    let id = Mat2::new(n, [1, 0, 0, 1])?;
    Ok(FinGroup::generate(id, gens))
}

/// GL2(Z/nZ) by closure of the standard generators.
pub fn gl2(n: u32) -> FinGroup<Mat2> {
    closure(&gl2_generators(n), n).expect("standard generators are invertible")
}

/// SL2(Z/nZ) as the determinant-one part of GL2.
pub fn sl2(n: u32) -> FinGroup<Mat2> {
    let elems: Vec<Mat2> = gl2(n).elements().iter().filter(|g| g.det() == 1 % n).copied().collect();
    FinGroup::from_elements(Mat2::identity(n), &elems)
}

/// Kernel of reduction GL2(Z/nZ) -> GL2(Z/dZ).
pub fn reduction_kernel(n: u32, d: u32) -> Result<FinGroup<Mat2>> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::input(format!("{d} does not divide {n}")));
    }
    if d == 1 {
        return Ok(gl2(n));
    }
    let m = n / d;
    let mut elems = Vec::new();
    for x in 0..m.pow(4) {
        let digits = [x % m, x / m % m, x / (m * m) % m, x / (m * m * m)];
        let e = [
            (1 + d * digits[0]) % n,
            d * digits[1],
            d * digits[2],
            (1 + d * digits[3]) % n,
        ];
        let g = Mat2::from_reduced(n, e);
        if g.is_invertible() {
            elems.push(g);
        }
    }
    Ok(FinGroup::from_elements(Mat2::identity(n), &elems))
}

/// Full preimage of `h` (at level `h.modulus()`) under reduction from level `n`.
pub fn preimage(h: &FinGroup<Mat2>, n: u32) -> Result<FinGroup<Mat2>> {
    let d = h.modulus();
    let kernel = reduction_kernel(n, d)?;
    let lifts = h.generators().iter().map(|g| g.lift(n)).collect::<Result<Vec<_>>>()?;
    Ok(kernel.join(&lifts))
}
