use std::sync::Arc;

use proptest::prelude::*;

use qsp_core::{Algebra, CartanDatum, Element};

fn algebra(name: &str) -> Algebra {
    Algebra::new(Arc::new(CartanDatum::by_name(name).unwrap()))
}

/// A product of generators given by `(kind, node)` pairs.
fn product(a: &Algebra, gens: &[(u8, usize)]) -> Element {
    gens.iter().fold(a.k_simple(0, 0), |acc, &(kind, i)| {
        let g = match kind {
            0 => a.e(i),
            1 => a.f(i),
            _ => a.k_simple(i, 1),
        };
        a.mul(&acc, &g)
    })
}

fn gens(rank: usize) -> impl Strategy<Value = Vec<(u8, usize)>> {
    prop::collection::vec((0u8..3, 0..rank), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bar_and_sigma_respect_products(x in gens(2), y in gens(2)) {
        let a = algebra("B2");
        let (px, py) = (product(&a, &x), product(&a, &y));
        let xy = a.mul(&px, &py);
        prop_assert!(a.equals(&a.bar(&xy), &a.mul(&a.bar(&px), &a.bar(&py))).unwrap());
        prop_assert!(a.equals(&a.sigma(&xy), &a.mul(&a.sigma(&py), &a.sigma(&px))).unwrap());
        prop_assert!(a.equals(&a.bar(&a.bar(&px)), &px).unwrap());
    }

    #[test]
    fn counit_is_multiplicative(x in gens(2), y in gens(2)) {
        let a = algebra("G2");
        let (px, py) = (product(&a, &x), product(&a, &y));
        prop_assert_eq!(a.counit(&a.mul(&px, &py)), a.counit(&px) * a.counit(&py));
    }

    #[test]
    fn text_round_trip(x in gens(3), y in gens(3)) {
        let a = algebra("A3");
        let z = product(&a, &x) - product(&a, &y);
        prop_assert_eq!(a.parse(&a.format(&z)).unwrap(), z);
    }
}
