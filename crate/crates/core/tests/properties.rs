use jumpstat_core::trees::compute_stats;
use jumpstat_core::{BinaryTree, ExactRational, Poly2, Series};
use num_bigint::BigInt;
use proptest::prelude::*;

const ORDER: usize = 5;

fn poly() -> impl Strategy<Value = Poly2> {
    prop::collection::vec((0u32..3, 0u32..3, -4i64..=4), 0..4).prop_map(|terms| {
        let terms: Vec<(u32, u32, i64)> = terms;
        Poly2::from_int_terms(&terms)
    })
}

fn series() -> impl Strategy<Value = Series> {
    prop::collection::vec(poly(), ORDER + 1).prop_map(Series::new)
}

/// Series with constant term 1, as required by `sqrt`.
fn unit_series() -> impl Strategy<Value = Series> {
    series().prop_map(|s| {
        let mut c = s.into_coeffs();
        c[0] = Poly2::one();
        Series::new(c)
    })
}

fn tree() -> impl Strategy<Value = BinaryTree> {
    Just(BinaryTree::leaf()).prop_recursive(8, 64, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| BinaryTree::node(l, r))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn sqrt_squares_back(s in unit_series()) {
        let r = s.sqrt().unwrap();
        prop_assert_eq!(&r * &r, s);
    }

    #[test]
    fn inverse_is_inverse(s in series(), c in 1i64..5) {
        let mut coeffs = s.into_coeffs();
        coeffs[0] = Poly2::constant(ExactRational::from_integer(BigInt::from(c)));
        let s = Series::new(coeffs);
        let inv = s.inverse().unwrap();
        prop_assert_eq!(&s * &inv, Series::one(ORDER));
    }

    #[test]
    fn tree_text_round_trips(t in tree()) {
        let text = t.to_string();
        let back: BinaryTree = text.parse().unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, t);
    }

    #[test]
    fn jump_distance_complements_depth(t in tree()) {
        let s = compute_stats(&t);
        prop_assert_eq!(s.jd + s.d, s.v);
        prop_assert!(s.j <= s.jd);
    }
}
