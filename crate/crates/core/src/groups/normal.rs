//! Conjugacy classes, normal subgroups and (small) subgroup lattices.

use std::collections::{HashMap, HashSet};

use super::{FinGroup, GroupElement};
use crate::error::{Error, Result};

pub const DEFAULT_NORMAL_BOUND: usize = 5000;

/// Conjugacy classes, each sorted, ordered by (size, least element).
pub fn conjugacy_classes<E: GroupElement>(g: &FinGroup<E>) -> Vec<Vec<E>> {
    let mut seen: HashSet<E> = HashSet::with_capacity(g.order());
    let mut classes = Vec::new();
    for x in g.elements() {
        if seen.contains(x) {
            continue;
        }
        seen.insert(x.clone());
        let mut orbit = vec![x.clone()];
        let mut i = 0;
        while i < orbit.len() {
            for s in g.generators() {
                let y = orbit[i].conjugate_by(s);
                if seen.insert(y.clone()) {
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    classes.sort_by(|a, b| (a.len(), &a[0]).cmp(&(b.len(), &b[0])));
    classes
}

/// Every normal subgroup of `g`, sorted by (order, elements).
///
/// Each normal subgroup is the normal closure of a union of conjugacy classes,
/// so the lattice is swept by repeatedly joining known normal subgroups with
/// single class representatives.
pub fn normal_subgroups<E: GroupElement>(g: &FinGroup<E>, bound: usize) -> Result<Vec<FinGroup<E>>> {
    if g.order() > bound {
        return Err(Error::Resource(format!(
            "group of order {} exceeds the normal-subgroup bound {bound}",
            g.order()
        )));
    }
    let reps: Vec<E> = conjugacy_classes(g).into_iter().map(|c| c[0].clone()).collect();
    let trivial = FinGroup::trivial(g.identity().clone());
    let mut found: HashMap<Vec<E>, FinGroup<E>> = HashMap::new();
    found.insert(trivial.elements().to_vec(), trivial.clone());
    let mut queue = vec![trivial];
    while let Some(n) = queue.pop() {
        for r in &reps {
            if n.contains(r) {
                continue;
            }
            let m = g.normal_closure_over(&n, std::slice::from_ref(r));
            if !found.contains_key(m.elements()) {
                found.insert(m.elements().to_vec(), m.clone());
                queue.push(m);
            }
        }
    }
    let mut out: Vec<FinGroup<E>> = found.into_values().collect();
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    Ok(out)
}

/// Every subgroup of `g` by cyclic extension: each subgroup is the join of its
/// cyclic subgroups. Sorted by (order, elements). Intended for small groups.
pub fn all_subgroups<E: GroupElement>(g: &FinGroup<E>, bound: usize) -> Result<Vec<FinGroup<E>>> {
    let id = g.identity().clone();
    let mut cyclic: HashMap<Vec<E>, E> = HashMap::new();
    for x in g.elements() {
        let c = FinGroup::generate(id.clone(), std::slice::from_ref(x));
        cyclic.entry(c.elements().to_vec()).or_insert_with(|| x.clone());
    }
    let mut cyclic_gens: Vec<E> = cyclic.into_values().collect();
    cyclic_gens.sort_unstable();

    let mut found: HashMap<Vec<E>, FinGroup<E>> = HashMap::new();
    let mut frontier: Vec<FinGroup<E>> = Vec::new();
    for x in &cyclic_gens {
        let c = FinGroup::generate(id.clone(), std::slice::from_ref(x));
        found.insert(c.elements().to_vec(), c.clone());
        frontier.push(c);
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for x in &cyclic_gens {
                if h.contains(x) {
                    continue;
                }
                let j = h.join(std::slice::from_ref(x));
                if !found.contains_key(j.elements()) {
                    if found.len() >= bound {
                        return Err(Error::Resource(format!(
                            "more than {bound} subgroups in a group of order {}",
                            g.order()
                        )));
                    }
                    found.insert(j.elements().to_vec(), j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<FinGroup<E>> = found.into_values().collect();
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::gl2;
    use crate::modring::Mat2;

    fn orders<E: GroupElement>(gs: &[FinGroup<E>]) -> Vec<usize> {
        gs.iter().map(|h| h.order()).collect()
    }

    #[test]
    fn normal_subgroups_of_small_gl2() {
        let n3 = normal_subgroups(&gl2(3), DEFAULT_NORMAL_BOUND).unwrap();
        assert_eq!(orders(&n3), vec![1, 2, 8, 24, 48]);
        let n2 = normal_subgroups(&gl2(2), DEFAULT_NORMAL_BOUND).unwrap();
        assert_eq!(orders(&n2), vec![1, 3, 6]);
        let t = FinGroup::trivial(Mat2::identity(5));
        assert_eq!(orders(&normal_subgroups(&t, 10).unwrap()), vec![1]);
        for n in &n3 {
            assert!(n.is_normal_in(&gl2(3)));
        }
    }

    #[test]
    fn normal_bound_is_enforced() {
        assert!(matches!(normal_subgroups(&gl2(5), 100), Err(Error::Resource(_))));
    }

    #[test]
    fn class_equation() {
        let g = gl2(3);
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), 48);
        assert_eq!(classes.len(), 8);
        assert!(classes.iter().all(|c| 48 % c.len() == 0));
    }

    #[test]
    fn subgroup_lattice_of_s3() {
        let subs = all_subgroups(&gl2(2), 100).unwrap();
        // trivial, three of order 2, one of order 3, the whole group
        assert_eq!(orders(&subs), vec![1, 2, 2, 2, 3, 6]);
    }
}
