use entangle_core::curves::{
    count_points, entanglement_scan, frobenius_signature, primes_up_to, specialize_integral, CurveFp, CurveQ, SplitType,
};
use entangle_core::funcfield::{j_of_t, rat, Rat};
use entangle_core::Exec;
use proptest::prelude::*;

fn nonzero_t() -> impl Strategy<Value = Rat> {
    (-50i64..=50, 1i64..=50)
        .prop_filter("t = 0 is singular", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

/// Affine solutions of `y^2 = x^3 + ax + b` by enumerating every pair, plus
/// the point at infinity.
fn brute_force_count(e: &CurveFp) -> u64 {
    let p = e.p;
    let mut n = 1;
    for x in 0..p {
        let rhs = (x * x % p * x + e.a * x + e.b) % p;
        n += (0..p).filter(|y| y * y % p == rhs).count() as u64;
    }
    n
}

#[test]
fn point_counts_match_brute_force() {
    for (a, b) in [(1, 1), (-1, 0), (2, 3), (-144, 672)] {
        let e = CurveQ::from_ints(a, b).unwrap();
        for p in primes_up_to(200) {
            let fp = CurveFp::reduce(&e, p).unwrap();
            if fp.good {
                assert_eq!(
                    count_points(&fp).unwrap().count,
                    brute_force_count(&fp),
                    "({a},{b}) at {p}"
                );
            }
        }
    }
}

#[test]
fn sequential_and_parallel_scans_agree() {
    let e = CurveQ::from_ints(1, 1).unwrap();
    let seq = entanglement_scan(&e, 3000, Exec::Sequential).unwrap();
    let par = entanglement_scan(&e, 3000, Exec::default()).unwrap();
    assert_eq!(seq, par);
}

#[test]
fn bad_primes_are_skipped() {
    let e = CurveQ::from_ints(-1, 0).unwrap();
    assert!(frobenius_signature(&e, 2).is_err());
    assert!(frobenius_signature(&e, 3).is_err());
    assert!(frobenius_signature(&e, 5).is_ok());
    assert!(CurveQ::from_ints(0, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn specialization_has_the_family_j_invariant(t in nonzero_t()) {
        let s = specialize_integral(&t).unwrap();
        prop_assert!(s.curve.is_integral());
        prop_assert_eq!(s.curve.j_invariant(), &j_of_t(&t));
    }

    #[test]
    fn specializations_show_no_violation(t in nonzero_t()) {
        let s = specialize_integral(&t).unwrap();
        let scan = entanglement_scan(&s.curve, 1000, Exec::default()).unwrap();
        prop_assert_eq!(scan.smallest_violation(), None);
    }

    #[test]
    fn torsion_divides_the_point_count(a in -30i64..=30, b in -30i64..=30) {
        prop_assume!(4 * a * a * a + 27 * b * b != 0);
        let e = CurveQ::from_ints(a, b).unwrap();
        for r in entanglement_scan(&e, 400, Exec::default()).unwrap().records {
            // a rational root is a point of order 2
            prop_assert_eq!(r.two_split != SplitType::Irreducible, r.count % 2 == 0);
            if r.two_split == SplitType::Split {
                prop_assert_eq!(r.count % 4, 0);
            }
            if r.three_full {
                prop_assert_eq!(r.count % 9, 0);
            }
            prop_assert!(r.ap * r.ap <= 4 * r.p as i64);
        }
    }
}
