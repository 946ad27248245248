use proptest::prelude::*;

use qsp_core::Scalar;

/// A Laurent polynomial in `v` with Gaussian integer coefficients.
fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, -3i64..=3, -3i64..=3), 1..4).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(k, re, im)| (Scalar::from_int(re) + Scalar::i() * Scalar::from_int(im)) * Scalar::v_pow(k))
            .sum()
    })
}

/// A quotient of two such polynomials.
fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_map(|(n, d)| if d.is_zero() { n } else { n / d })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b * c));
        prop_assert!((a.clone() - a).is_zero());
    }

    #[test]
    fn nonzero_elements_are_invertible(a in scalar()) {
        prop_assume!(!a.is_zero());
        prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        prop_assert_eq!(Scalar::one() / a.clone(), a.inv().unwrap());
    }

    #[test]
    fn bar_is_a_ring_involution_fixing_i(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).bar(), a.bar() * b.bar());
        prop_assert_eq!((a.clone() + b.clone()).bar(), a.bar() + b.bar());
        prop_assert_eq!(Scalar::i().bar(), Scalar::i());
        prop_assert!((a.clone() + a.bar()).is_bar_fixed());
    }

    #[test]
    fn text_and_json_round_trip(a in scalar()) {
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<Scalar>(&json).unwrap(), a);
    }
}

#[test]
fn q_is_the_square_of_v() {
    assert_eq!(Scalar::v_pow(2), Scalar::q_pow(1));
    assert_eq!(Scalar::v_pow(1).bar(), Scalar::v_pow(-1));
    assert_eq!("q^-1".parse::<Scalar>().unwrap(), Scalar::v_pow(-2));
}
