//! Randomized algebraic laws for the series engine, plus targeted edge
//! cases that random data cannot reach (overflow detection, unit handling).
//!
//! Each property runs over a mix of rings chosen to hit every arithmetic
//! kernel: the exact 256-bit ring, small and odd moduli (Euclidean
//! inversion), powers of two below and above 32 bits (masked wrapping
//! kernels), and the largest supported modulus.

use proptest::prelude::*;

use qseries::dissection::extract_ap;
use qseries::qseries::euler_f;
use qseries::{make_series, CoeffRing, Series, SeriesError, MAX_MODULUS};

fn arb_ring() -> impl Strategy<Value = CoeffRing> {
    prop_oneof![
        Just(CoeffRing::Exact),
        Just(CoeffRing::Mod(16)),
        (2u64..200).prop_map(CoeffRing::Mod),
        Just(CoeffRing::Mod(1 << 40)),
        Just(CoeffRing::Mod(MAX_MODULUS)),
    ]
}

fn coeff_vecs(order: usize, n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(
        proptest::collection::vec(-1_000_000i64..1_000_000, order),
        n,
    )
}

/// Three same-order series over one ring.
fn ring_and_three() -> impl Strategy<Value = (CoeffRing, Series, Series, Series)> {
    (arb_ring(), 1usize..40).prop_flat_map(|(ring, order)| {
        coeff_vecs(order, 3).prop_map(move |v| {
            (
                ring,
                make_series(ring, &v[0], order).unwrap(),
                make_series(ring, &v[1], order).unwrap(),
                make_series(ring, &v[2], order).unwrap(),
            )
        })
    })
}

/// A series plus one whose constant term is a unit in every supported ring.
/// The unit's tail stays within single digits: inverse coefficients grow
/// geometrically in the tail size, and the exact ring must not be pushed
/// past 256 bits by the test data itself.
fn ring_series_and_unit() -> impl Strategy<Value = (CoeffRing, Series, Series)> {
    (arb_ring(), 1usize..40, any::<bool>()).prop_flat_map(|(ring, order, negative)| {
        let series = proptest::collection::vec(-1_000_000i64..1_000_000, order);
        let unit = proptest::collection::vec(-9i64..=9, order);
        (series, unit).prop_map(move |(a, mut u)| {
            u[0] = if negative { -1 } else { 1 };
            (
                ring,
                make_series(ring, &a, order).unwrap(),
                make_series(ring, &u, order).unwrap(),
            )
        })
    })
}

/// Two same-order series over the exact ring.
fn exact_pair() -> impl Strategy<Value = (Series, Series)> {
    (1usize..40).prop_flat_map(|order| {
        coeff_vecs(order, 2).prop_map(move |v| {
            (
                make_series(CoeffRing::Exact, &v[0], order).unwrap(),
                make_series(CoeffRing::Exact, &v[1], order).unwrap(),
            )
        })
    })
}

proptest! {
    #[test]
    fn addition_laws((_, a, b, c) in ring_and_three()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        let zero = Series::zero(a.ring(), a.order()).unwrap();
        prop_assert_eq!(a.sub(&a).unwrap(), zero.clone());
        prop_assert_eq!(a.add(&zero).unwrap(), a);
    }

    #[test]
    fn multiplication_laws((ring, a, b, c) in ring_and_three()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        let one = Series::one(ring, a.order()).unwrap();
        prop_assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn division_inverts_multiplication((_, a, unit) in ring_series_and_unit()) {
        prop_assert_eq!(a.mul(&unit).unwrap().div(&unit).unwrap(), a);
    }

    #[test]
    fn inverse_is_two_sided((ring, _, unit) in ring_series_and_unit()) {
        let inv = unit.invert().unwrap();
        let one = Series::one(ring, unit.order()).unwrap();
        prop_assert_eq!(unit.mul(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.mul(&unit).unwrap(), one);
    }

    #[test]
    fn substitution_is_multiplicative((_, a, b, _) in ring_and_three(), k in 1usize..5) {
        let cap = a.order() * k;
        let lhs = a.mul(&b).unwrap().substitute_power(k, cap).unwrap();
        let rhs = a
            .substitute_power(k, cap)
            .unwrap()
            .mul(&b.substitute_power(k, cap).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_products_match_every_modular_kernel((a, b) in exact_pair()) {
        // Disagreement here would mean the exact ring wrapped silently or a
        // modular kernel dropped a carry; the rings are independent paths.
        let product = a.mul(&b).unwrap();
        for m in [97u64, 16, 1 << 40, MAX_MODULUS] {
            let reduced = product.reduce_mod(m).unwrap();
            let direct = a.reduce_mod(m).unwrap().mul(&b.reduce_mod(m).unwrap()).unwrap();
            prop_assert_eq!(&reduced, &direct, "modulus {}", m);
        }
    }

    #[test]
    fn reduction_tower_collapses((a, b) in exact_pair(), d in 2u64..30, e in 1u64..30) {
        // Reducing mod d*e and then mod d lands exactly where reducing mod d
        // does, since d divides d*e.
        let product = a.mul(&b).unwrap();
        let via_tower = product.reduce_mod(d * e).unwrap().reduce_mod(d).unwrap();
        prop_assert_eq!(via_tower, product.reduce_mod(d).unwrap());
    }

    #[test]
    fn extraction_is_linear((_, a, b, _) in ring_and_three(),
                            step in 1u64..6, offset in 0u64..10) {
        let lhs = extract_ap(&a.add(&b).unwrap(), step, offset).unwrap();
        let rhs = extract_ap(&a, step, offset)
            .unwrap()
            .add(&extract_ap(&b, step, offset).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn extraction_partitions_every_coefficient((_, a, _, _) in ring_and_three(),
                                               step in 1u64..6) {
        // Residue classes mod `step` tile the series: coefficient i lives at
        // term i / step of the class i % step, and nowhere else.
        let pieces: Vec<Series> =
            (0..step).map(|r| extract_ap(&a, step, r).unwrap()).collect();
        for i in 0..a.order() {
            let piece = &pieces[(i as u64 % step) as usize];
            prop_assert_eq!(a.coeff_i128(i), piece.coeff_i128(i / step as usize));
        }
        let total: usize = pieces.iter().map(Series::order).sum();
        prop_assert_eq!(total, a.order());
    }
}

#[test]
fn exact_overflow_is_an_error_not_a_wrap() {
    // i64::MAX^4 still fits in 256 bits; the fifth power does not. The
    // engine must refuse rather than wrap.
    let big = make_series(CoeffRing::Exact, &[i64::MAX], 3).unwrap();
    let fourth = big.pow(4).unwrap();
    let expected = qseries::I256::from(i64::MAX)
        * qseries::I256::from(i64::MAX)
        * qseries::I256::from(i64::MAX)
        * qseries::I256::from(i64::MAX);
    assert_eq!(fourth.coeff_exact(0), Some(expected));
    assert!(matches!(big.pow(5), Err(SeriesError::Overflow)));
}

#[test]
fn euler_product_matches_term_by_term_construction() {
    // euler_f builds from the pentagonal expansion; rebuild the product the
    // slow way and compare, for several subscripts and rings.
    let order = 60usize;
    for ring in [
        CoeffRing::Exact,
        CoeffRing::Mod(97),
        CoeffRing::Mod(1 << 32),
    ] {
        for k in [1u64, 2, 3, 5] {
            let mut product = Series::one(ring, order).unwrap();
            let mut j = k as usize;
            while j < order {
                let mut factor = vec![0i64; order];
                factor[0] = 1;
                factor[j] = -1;
                product = product
                    .mul(&make_series(ring, &factor, order).unwrap())
                    .unwrap();
                j += k as usize;
            }
            assert_eq!(
                euler_f(k, order, ring).unwrap(),
                product,
                "k={k} ring={ring:?}"
            );
        }
    }
}
