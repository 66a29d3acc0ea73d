use entangle_core::density::{correction_factor, division_degree, hooley_delta, tail_bound, ImageSpec};
use entangle_core::funcfield::{rat, Rat};
use entangle_core::modring::gl2_order;
use num::BigInt;
use proptest::prelude::*;

const SQUAREFREE: [u64; 10] = [1, 2, 3, 5, 6, 7, 10, 11, 13, 15];

#[test]
fn full_images_have_no_correction() {
    for m in [2, 3, 4, 5, 6, 9, 10, 12] {
        let spec = ImageSpec::full(m).unwrap();
        assert_eq!(correction_factor(&spec, 20).unwrap().value, rat(1, 1), "level {m}");
    }
}

#[test]
fn level_does_not_change_the_full_density() {
    let base = hooley_delta(&ImageSpec::full(1).unwrap(), 50).unwrap();
    for m in [2, 6, 10] {
        assert_eq!(
            hooley_delta(&ImageSpec::full(m).unwrap(), 50).unwrap().value,
            base.value,
            "level {m}"
        );
    }
}

#[test]
fn tail_bound_dominates_the_prime_tail() {
    let cutoff = 30u32;
    let tail: Rat = (cutoff as u64 + 1..2000)
        .filter(|&n| entangle_core::curves::is_prime(n))
        .map(|l| Rat::new(1.into(), BigInt::from(gl2_order(l as u32))))
        .sum();
    assert!(tail < tail_bound(cutoff));
}

proptest! {
    #[test]
    fn degrees_are_multiplicative_for_the_full_image(i in 0usize..10, j in 0usize..10) {
        let (n, m) = (SQUAREFREE[i], SQUAREFREE[j]);
        prop_assume!(num::integer::gcd(n, m) == 1);
        let spec = ImageSpec::full(1).unwrap();
        let nm = division_degree(&spec, n * m).unwrap();
        prop_assert_eq!(nm, division_degree(&spec, n).unwrap() * division_degree(&spec, m).unwrap());
    }

    #[test]
    fn truncated_density_decreases_with_the_cutoff(low in 2u32..60, extra in 1u32..60) {
        let spec = ImageSpec::full(1).unwrap();
        let a = hooley_delta(&spec, low).unwrap();
        let b = hooley_delta(&spec, low + extra).unwrap();
        prop_assert!(b.value <= a.value);
        prop_assert!(b.upper <= a.upper);
        prop_assert!(b.lower >= a.lower);
    }
}
