use std::collections::BTreeSet;

use entangle_core::catalog::{h4p, h6p, is_serre_obstructed, Classifier, ImageData, Mod36Class, Theta};
use entangle_core::groups::{
    all_subgroups, are_conjugate, gl2, goursat_decompose, goursat_fiber, maximal_subgroups_detsurj, normal_subgroups,
    preimage, FinGroup, GroupElement, Pair, DEFAULT_NORMAL_BOUND,
};
use entangle_core::modring::{gl2_elements, Mat2};
use proptest::prelude::*;

fn element_sets<E: GroupElement>(groups: &[FinGroup<E>]) -> BTreeSet<Vec<E>> {
    groups.iter().map(|h| h.elements().to_vec()).collect()
}

fn is_normal_by_brute_force<E: GroupElement>(h: &FinGroup<E>, g: &FinGroup<E>) -> bool {
    g.elements().iter().all(|x| {
        h.elements()
            .iter()
            .all(|y| h.contains(&x.compose(y).compose(&x.inverse())))
    })
}

#[test]
fn normal_subgroups_agree_with_brute_force() {
    for n in [2, 3, 4] {
        let g = gl2(n);
        let oracle: Vec<_> = all_subgroups(&g, 10_000)
            .unwrap()
            .into_iter()
            .filter(|h| is_normal_by_brute_force(h, &g))
            .collect();
        let found = normal_subgroups(&g, DEFAULT_NORMAL_BOUND).unwrap();
        assert_eq!(element_sets(&found), element_sets(&oracle), "GL2(Z/{n}Z)");
    }
}

/// Maximal proper subgroups with surjective determinant, by brute force over
/// the subgroup lattice, one per conjugacy class.
fn maximal_by_brute_force(l: u32) -> Vec<FinGroup<Mat2>> {
    let g = gl2(l);
    let proper: Vec<_> = all_subgroups(&g, 10_000)
        .unwrap()
        .into_iter()
        .filter(|h| h.order() < g.order())
        .collect();
    let maximal: Vec<_> = proper
        .iter()
        .filter(|h| h.det_surjective())
        .filter(|h| !proper.iter().any(|k| k.order() > h.order() && h.is_subgroup_of(k)))
        .cloned()
        .collect();
    let mut reps: Vec<FinGroup<Mat2>> = Vec::new();
    for h in maximal {
        if !reps
            .iter()
            .any(|r| r.order() == h.order() && are_conjugate(r, &h, &g).unwrap().is_some())
        {
            reps.push(h);
        }
    }
    reps
}

#[test]
fn maximal_subgroups_agree_with_brute_force() {
    for l in [2, 3, 5] {
        let g = gl2(l);
        let oracle = maximal_by_brute_force(l);
        let found = maximal_subgroups_detsurj(l).unwrap();
        assert_eq!(found.len(), oracle.len(), "class count at l = {l}");
        for m in &found {
            let matches = oracle
                .iter()
                .filter(|o| o.order() == m.group.order() && are_conjugate(o, &m.group, &g).unwrap().is_some())
                .count();
            assert_eq!(matches, 1, "{} at l = {l}", m.class);
        }
    }
}

#[test]
fn classifier_places_preimages() {
    let c = Classifier::new().unwrap();
    let h4 = preimage(&h4p(), 36).unwrap();
    assert_eq!(c.classify(h4.generators()).unwrap().class, Some(Mod36Class::XPrime4));
    let h6 = preimage(&h6p(&Theta::new().unwrap()), 36).unwrap();
    assert_eq!(c.classify(h6.generators()).unwrap().class, Some(Mod36Class::XPrime6));
}

fn gl2_element(n: u32) -> impl Strategy<Value = Mat2> {
    let elems = gl2_elements(n);
    (0..elems.len()).prop_map(move |i| elems[i])
}

/// A random element of GL2(Z/36Z), built from its CRT components.
fn gl2_36() -> impl Strategy<Value = Mat2> {
    (gl2_element(4), gl2_element(9)).prop_map(|(a, b)| Mat2::crt_join(&a, &b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crt_join_is_an_injective_homomorphism(
        a1 in gl2_element(4), a2 in gl2_element(4), b1 in gl2_element(9), b2 in gl2_element(9),
    ) {
        let x = Mat2::crt_join(&a1, &b1).unwrap();
        let y = Mat2::crt_join(&a2, &b2).unwrap();
        prop_assert_eq!(x.crt_split(4, 9).unwrap(), (a1, b1));
        prop_assert_eq!(x.project(4).unwrap(), a1);
        prop_assert_eq!(x.project(9).unwrap(), b1);
        let prod = Mat2::crt_join(&a1.mul(&a2).unwrap(), &b1.mul(&b2).unwrap()).unwrap();
        prop_assert_eq!(x.mul(&y).unwrap(), prod);
        prop_assert_eq!(x.det() % 4, a1.det());
        prop_assert_eq!(x == y, a1 == a2 && b1 == b2);
    }

    #[test]
    fn goursat_round_trip_in_gl2_2_times_gl2_3(
        gens in prop::collection::vec((gl2_element(2), gl2_element(3)), 1..4),
    ) {
        let (g2, g3) = (gl2(2), gl2(3));
        let pairs: Vec<Pair<Mat2, Mat2>> = gens.into_iter().map(|(a, b)| Pair(a, b)).collect();
        let h = FinGroup::generate(Pair(Mat2::identity(2), Mat2::identity(3)), &pairs);
        match goursat_decompose(&h, &g2, &g3) {
            Ok(datum) => {
                prop_assert_eq!(datum.fibered_order(), h.order());
                prop_assert_eq!(goursat_fiber(&datum), h);
            }
            Err(_) => {
                let onto2 = h.image(Mat2::identity(2), |x| x.0) == g2;
                let onto3 = h.image(Mat2::identity(3), |x| x.1) == g3;
                prop_assert!(!(onto2 && onto3));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classification_is_conjugation_invariant(g in gl2_36()) {
        let c = Classifier::new().unwrap();
        let h = preimage(&h4p(), 36).unwrap();
        let conjugated: Vec<Mat2> = h.generators().iter().map(|x| x.conjugate_by(&g)).collect();
        let r = c.classify(&conjugated).unwrap();
        prop_assert_eq!(r.class, Some(Mod36Class::XPrime4));
        let w = r.witness.unwrap();
        let target = c.representative(Mod36Class::XPrime4);
        for x in &conjugated {
            prop_assert!(target.contains(&x.conjugate_by(&w).project(4).unwrap()));
        }
    }

    #[test]
    fn serre_obstruction_is_inherited_by_subgroups(
        gens in prop::collection::vec(gl2_36(), 2..4),
        keep in 1usize..3,
    ) {
        let big = ImageData { mod_l: Vec::new(), mod36: gens.clone() };
        let small = ImageData { mod_l: Vec::new(), mod36: gens[..keep.min(gens.len())].to_vec() };
        if is_serre_obstructed(&big).unwrap().obstructed {
            prop_assert!(is_serre_obstructed(&small).unwrap().obstructed);
        }
    }

    #[test]
    fn proper_mod_l_image_obstructs(g in gl2_element(5)) {
        let images = ImageData { mod_l: vec![(5, vec![g])], mod36: vec![Mat2::identity(36)] };
        prop_assert!(is_serre_obstructed(&images).unwrap().obstructed);
    }
}
