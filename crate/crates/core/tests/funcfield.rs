use entangle_core::funcfield::{
    family_model, invert_j, j_fiber_poly, j_invariant, j_of_t, rat, rational_roots, standard_tower, two_torsion_roots,
    Poly, Rat, RatFunc, TowerElem,
};
use num::{BigInt, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=50).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-9i64..=9, 0..4).prop_map(|c| Poly::from_ints(&c))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d))
}

fn tower_elem() -> impl Strategy<Value = TowerElem> {
    prop::collection::vec(-5i64..=5, 6).prop_map(|c| {
        c.iter().enumerate().fold(TowerElem::zero(), |acc, (k, &x)| {
            &acc + &TowerElem::term(RatFunc::int(x), k / 3, k % 3)
        })
    })
}

proptest! {
    #[test]
    fn division_with_remainder(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn ratfunc_field_laws(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !y.is_zero() {
            prop_assert_eq!(&(&x / &y) * &y, x.clone());
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(x in ratfunc(), y in ratfunc(), at in small_rat()) {
        if let (Some(a), Some(b)) = (x.eval(&at), y.eval(&at)) {
            prop_assert_eq!((&x + &y).eval(&at), Some(&a + &b));
            prop_assert_eq!((&x * &y).eval(&at), Some(a * b));
        }
    }

    #[test]
    fn tower_multiplication_is_commutative_and_associative(
        x in tower_elem(), y in tower_elem(), z in tower_elem(),
    ) {
        let tower = standard_tower();
        prop_assert_eq!(tower.mul(&x, &y), tower.mul(&y, &x));
        prop_assert_eq!(tower.mul(&tower.mul(&x, &y), &z), tower.mul(&x, &tower.mul(&y, &z)));
    }

    #[test]
    fn tower_automorphisms_respect_products(x in tower_elem(), y in tower_elem()) {
        let tower = standard_tower();
        let xy = tower.mul(&x, &y);
        prop_assert_eq!(tower.rotate_delta(&xy), tower.mul(&tower.rotate_delta(&x), &tower.rotate_delta(&y)));
        prop_assert_eq!(xy.conjugate_omega(), tower.mul(&x.conjugate_omega(), &y.conjugate_omega()));
        let thrice = tower.rotate_delta(&tower.rotate_delta(&tower.rotate_delta(&x)));
        prop_assert_eq!(thrice, x);
    }

    #[test]
    fn invert_j_round_trip(t in small_rat()) {
        let roots = invert_j(&j_of_t(&t));
        prop_assert!(roots.contains(&t));
        for s in &roots {
            prop_assert_eq!(j_of_t(s), j_of_t(&t));
        }
    }

    #[test]
    fn j_map_matches_the_model(t in small_rat()) {
        let (a, b) = family_model();
        let j = j_invariant(&a, &b).unwrap();
        prop_assert_eq!(j.eval(&t), Some(j_of_t(&t)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invert_j_agrees_with_rational_root_search(n in -4i64..=4, d in 1i64..=4) {
        let j0 = j_of_t(&rat(n, d));
        prop_assert_eq!(invert_j(&j0), rational_roots(&j_fiber_poly(&j0)).unwrap());
    }
}

#[test]
fn roots_are_distinct_and_sum_to_zero() {
    let tower = standard_tower();
    let [e1, e2, e3] = two_torsion_roots(&tower);
    assert!(!(&e1 - &e2).is_zero() && !(&e2 - &e3).is_zero() && !(&e1 - &e3).is_zero());
    assert!((&(&e1 + &e2) + &e3).is_zero());
}

#[test]
fn generic_j_values_have_no_preimage() {
    assert!(invert_j(&rat(1, 1)).is_empty());
    assert!(invert_j(&Rat::from_integer(BigInt::from(10).pow(30))).is_empty());
    assert!(Rat::zero() == j_of_t(&Rat::zero()));
}
