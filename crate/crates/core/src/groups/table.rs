//! Abstract finite groups as multiplication tables, with isomorphism search.

use std::collections::HashMap;

use super::{FinGroup, GroupElement};
use crate::error::{Error, Result};

const UNSET: u32 = u32::MAX;

/// A finite group on `0..order` with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl CayleyTable {
    /// Builds a table from a product rule on `0..order`, checking the group axioms
    /// (identity at 0, Latin square, associativity).
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::input("empty group"));
        }
        let mut mul = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let c = f(a, b);
                if c >= order {
                    return Err(Error::input(format!("product {a}*{b} = {c} out of range")));
                }
                mul[a * order + b] = c as u32;
            }
        }
        let t = Self::from_raw(order, mul)?;
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c)) {
                        return Err(Error::input(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(t)
    }

    fn from_raw(order: usize, mul: Vec<u32>) -> Result<Self> {
        let mut inv = vec![UNSET; order];
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(Error::input("0 is not the identity"));
            }
            let mut seen = vec![false; order];
            for b in 0..order {
                let c = mul[a * order + b] as usize;
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Error::input(format!("row {a} is not a permutation")));
                }
                if c == 0 {
                    inv[a] = b as u32;
                }
            }
        }
        Ok(CayleyTable { order, mul, inv })
    }

    /// Table of a concrete group, with the element list giving index -> element.
    /// The identity is placed at index 0; the rest follow canonical order.
    pub fn from_group<E: GroupElement>(g: &FinGroup<E>) -> (Self, Vec<E>) {
        let mut elems: Vec<E> = Vec::with_capacity(g.order());
        elems.push(g.identity().clone());
        elems.extend(g.elements().iter().filter(|x| *x != g.identity()).cloned());
        let index: HashMap<&E, u32> = elems.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                mul[i * n + j] = index[&a.compose(b)];
            }
        }
        let t = Self::from_raw(n, mul).expect("closed group yields a valid table");
        (t, elems)
    }

    /// The cyclic group Z/nZ written additively.
    pub fn cyclic(n: usize) -> Self {
        Self::from_raw(n, (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect()).expect("cyclic group")
    }

    pub fn direct_product(&self, other: &CayleyTable) -> CayleyTable {
        let (n, m) = (self.order, other.order);
        let mul = (0..n * m * n * m)
            .map(|k| {
                let (x, y) = (k / (n * m), k % (n * m));
                let (x0, x1, y0, y1) = (x / m, x % m, y / m, y % m);
                (self.mul(x0, y0) * m + other.mul(x1, y1)) as u32
            })
            .collect();
        Self::from_raw(n * m, mul).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn exponent(&self) -> usize {
        (0..self.order)
            .map(|a| self.element_order(a))
            .fold(1, num::integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    pub fn center_order(&self) -> usize {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count()
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let y = self.mul(out[i], g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_generated(&comms)
    }

    pub fn abelianization_order(&self) -> usize {
        self.order / self.commutator_subgroup().len()
    }

    /// An irredundant generating set, preferring elements of large order.
    pub fn generators(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (1..self.order).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = vec![0];
        for a in candidates {
            if span.len() == self.order {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    fn invariants(&self) -> (usize, Vec<usize>, usize, usize) {
        (
            self.order,
            self.order_profile(),
            self.center_order(),
            self.abelianization_order(),
        )
    }

    /// All isomorphisms `self -> other` as index maps, up to `limit` of them.
    /// Uses generator-image backtracking after an invariant prefilter.
    pub fn isomorphisms(&self, other: &CayleyTable, limit: Option<usize>) -> Vec<Vec<u32>> {
        if self.invariants() != other.invariants() {
            return Vec::new();
        }
        let gens = self.generators();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| {
                let k = self.element_order(g);
                (0..other.order).filter(|&b| other.element_order(b) == k).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        self.backtrack(other, &gens, &candidates, &mut images, &mut out, limit);
        out
    }

    fn backtrack(
        &self,
        other: &CayleyTable,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<u32>>,
        limit: Option<usize>,
    ) {
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let depth = images.len();
        if depth == gens.len() {
            if let Some(map) = self.extend_partial(other, gens, images) {
                if map.iter().all(|&x| x != UNSET) {
                    out.push(map);
                }
            }
            return;
        }
        for &c in &candidates[depth] {
            images.push(c);
            if self.extend_partial(other, &gens[..=depth], images).is_some() {
                self.backtrack(other, gens, candidates, images, out, limit);
            }
            images.pop();
        }
    }

    /// Extends `gens[i] -> images[i]` to the generated subgroup, or `None` on a
    /// conflict or a non-injective assignment.
    fn extend_partial(&self, other: &CayleyTable, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
        let mut map = vec![UNSET; self.order];
        let mut used = vec![false; other.order];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, *g);
                let fy = other.mul(map[x] as usize, img) as u32;
                if map[y] == UNSET {
                    if std::mem::replace(&mut used[fy as usize], true) {
                        return None;
                    }
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
            i += 1;
        }
        Some(map)
    }

    pub fn is_isomorphic(&self, other: &CayleyTable) -> bool {
        !self.isomorphisms(other, Some(1)).is_empty()
    }

    /// Checks `map` is a homomorphism `self -> other` on every pair.
    pub fn is_homomorphism(&self, other: &CayleyTable, map: &[u32]) -> bool {
        map.len() == self.order
            && (0..self.order).all(|a| {
                (0..self.order).all(|b| map[self.mul(a, b)] as usize == other.mul(map[a] as usize, map[b] as usize))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::gl2;

    #[test]
    fn s3_invariants_and_automorphisms() {
        let (t, elems) = CayleyTable::from_group(&gl2(2));
        assert_eq!(elems[0], crate::modring::Mat2::identity(2));
        assert_eq!(t.order(), 6);
        assert!(!t.is_abelian());
        assert_eq!(t.center_order(), 1);
        assert_eq!(t.abelianization_order(), 2);
        // Aut(S3) = Inn(S3) has order 6
        let autos = t.isomorphisms(&t, None);
        assert_eq!(autos.len(), 6);
        assert!(autos.iter().all(|m| t.is_homomorphism(&t, m)));
    }

    #[test]
    fn cyclic_and_products() {
        let c6 = CayleyTable::cyclic(6);
        let c2c3 = CayleyTable::cyclic(2).direct_product(&CayleyTable::cyclic(3));
        assert!(c6.is_isomorphic(&c2c3));
        assert_eq!(c6.isomorphisms(&c2c3, None).len(), 2);
        let v4 = CayleyTable::cyclic(2).direct_product(&CayleyTable::cyclic(2));
        assert!(!v4.is_cyclic());
        assert!(!CayleyTable::cyclic(4).is_isomorphic(&v4));
        assert_eq!(v4.isomorphisms(&v4, None).len(), 6);
        assert_eq!(v4.exponent(), 2);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(CayleyTable::from_fn(3, |a, b| (a * b) % 3).is_err());
        assert!(CayleyTable::from_fn(2, |a, b| a ^ b).is_ok());
    }
}
