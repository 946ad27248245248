use proptest::prelude::*;

use qsp_core::{CartanDatum, RootVector, WeylWord};

const TYPES: [&str; 7] = ["A3", "B3", "C3", "D4", "G2", "F4", "affine:A2"];

fn datum(k: usize) -> CartanDatum {
    CartanDatum::by_name(TYPES[k]).unwrap()
}

fn vector(n: usize) -> impl Strategy<Value = RootVector> {
    prop::collection::vec(-3i64..=3, n).prop_map(RootVector)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_group_preserves_the_form(
        k in 0..TYPES.len(),
        seed in prop::collection::vec(0usize..8, 0..12),
        raw in prop::collection::vec(-3i64..=3, 16),
    ) {
        let d = datum(k);
        let n = d.rank();
        let word = WeylWord(seed.into_iter().map(|s| s % n).collect());
        let beta = RootVector(raw[..n].to_vec());
        let gamma = RootVector(raw[8..8 + n].to_vec());
        let wb = d.weyl_action(&word, &beta);
        let wg = d.weyl_action(&word, &gamma);
        prop_assert_eq!(d.form(&wb, &wg), d.form(&beta, &gamma));
        prop_assert_eq!(d.weyl_action(&word.reversed(), &wb), beta);
    }

    #[test]
    fn reflections_are_involutions(k in 0..TYPES.len(), i in 0usize..8, beta in vector(4)) {
        let d = datum(k);
        let n = d.rank();
        let i = i % n;
        let beta = RootVector(beta.iter().copied().chain(std::iter::repeat(0)).take(n).collect());
        prop_assert_eq!(d.reflect(i, &d.reflect(i, &beta)), beta.clone());
        prop_assert_eq!(d.reflect(i, &d.simple(i)), d.simple(i).scaled(-1));
    }
}

#[test]
fn longest_word_is_reduced_and_sends_positive_roots_negative() {
    for name in ["A3", "B3", "C3", "D4", "G2", "F4"] {
        let d = CartanDatum::by_name(name).unwrap();
        let all: Vec<usize> = (0..d.rank()).collect();
        let roots = d.positive_roots(&all).unwrap();
        let w = d.longest_word(&all).unwrap();
        assert_eq!(w.len(), roots.len(), "{name}");
        assert!(d.is_reduced(&w), "{name}");
        for r in &roots {
            assert!(d.weyl_action(&w, r).is_negative(), "{name}");
        }
    }
}

#[test]
fn positive_root_counts() {
    for (name, count) in [("A3", 6), ("B3", 9), ("C3", 9), ("D4", 12), ("G2", 6), ("F4", 24)] {
        let d = CartanDatum::by_name(name).unwrap();
        let all: Vec<usize> = (0..d.rank()).collect();
        assert_eq!(d.positive_roots(&all).unwrap().len(), count, "{name}");
    }
}
