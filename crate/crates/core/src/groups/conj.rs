//! Conjugator searches inside an enumerated ambient group.

use super::{FinGroup, GroupElement};
use crate::error::{Error, Result};
use crate::par::{self, Exec};

/// Some `g` in `ambient` with `g x g^{-1}` in `target` for every `x` in `gens`.
pub fn find_conjugator_into<E: GroupElement>(
    gens: &[E],
    target: &FinGroup<E>,
    ambient: &FinGroup<E>,
    exec: Exec,
) -> Option<E> {
    if gens.iter().all(|x| target.contains(x)) {
        return Some(ambient.identity().clone());
    }
    par::find_map_first(exec, ambient.elements(), |g| {
        gens.iter()
            .all(|x| target.contains(&x.conjugate_by(g)))
            .then(|| g.clone())
    })
}

/// Whether `h1` and `h2` are conjugate in `ambient`, with a witness `g` such
/// that `g h1 g^{-1} = h2`.
pub fn are_conjugate<E: GroupElement>(h1: &FinGroup<E>, h2: &FinGroup<E>, ambient: &FinGroup<E>) -> Result<Option<E>> {
    are_conjugate_with(h1, h2, ambient, Exec::default())
}

pub fn are_conjugate_with<E: GroupElement>(
    h1: &FinGroup<E>,
    h2: &FinGroup<E>,
    ambient: &FinGroup<E>,
    exec: Exec,
) -> Result<Option<E>> {
    if !h1.is_subgroup_of(ambient) || !h2.is_subgroup_of(ambient) {
        return Err(Error::input("both groups must lie in the ambient group"));
    }
    if h1.order() != h2.order() || h1.is_abelian() != h2.is_abelian() {
        return Ok(None);
    }
    if h1.order() <= 4096 && h1.order_profile() != h2.order_profile() {
        return Ok(None);
    }
    // equal orders, so containment of the conjugate is equality
    Ok(find_conjugator_into(h1.generators(), h2, ambient, exec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{closure, gl2};
    use crate::modring::Mat2;

    #[test]
    fn conjugate_subgroups_are_detected() {
        let g = gl2(5);
        let borel = closure(
            &[
                Mat2::new(5, [2, 0, 0, 1]).unwrap(),
                Mat2::new(5, [1, 0, 0, 2]).unwrap(),
                Mat2::new(5, [1, 1, 0, 1]).unwrap(),
            ],
            5,
        )
        .unwrap();
        let x = Mat2::new(5, [1, 2, 3, 2]).unwrap();
        let other = borel.conjugate(&x);
        let w = are_conjugate(&borel, &other, &g).unwrap().expect("conjugate");
        assert_eq!(borel.conjugate(&w), other);
        let lower = closure(&[Mat2::new(5, [1, 0, 1, 1]).unwrap()], 5).unwrap();
        let upper = closure(&[Mat2::new(5, [1, 1, 0, 1]).unwrap()], 5).unwrap();
        assert!(are_conjugate(&lower, &upper, &g).unwrap().is_some());
        let diag = closure(&[Mat2::new(5, [2, 0, 0, 1]).unwrap()], 5).unwrap();
        assert!(are_conjugate(&diag, &upper, &g).unwrap().is_none());
    }

    #[test]
    fn trivial_pair_has_identity_witness() {
        let g = gl2(4);
        let t = FinGroup::trivial(Mat2::identity(4));
        assert_eq!(are_conjugate(&t, &t, &g).unwrap(), Some(Mat2::identity(4)));
    }

    #[test]
    fn rejects_outside_groups() {
        let g = gl2(2);
        let h = gl2(3);
        assert!(are_conjugate(&h, &h, &g).is_err());
    }
}
