use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qsp_cli::input::{CartanSpec, ParamsSpec, PairSpec};
use qsp_cli::random;
use qsp_core::{Algebra, CartanDatum};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_elements_print_and_parse_back(seed in any::<u64>(), k in 0usize..3) {
        let name = ["A2", "G2", "affine:A1"][k];
        let a = Algebra::new(Arc::new(CartanDatum::by_name(name).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random::element(&a, &mut rng, 4, 4);
        prop_assert_eq!(a.parse(&a.format(&x)).unwrap(), x);
    }

    #[test]
    fn parameter_files_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = ParamsSpec {
            cartan: CartanSpec::Named { kind: "A".into(), rank: 3 },
            pair: PairSpec { x: vec![2], tau: vec![[1, 3]] },
            c: [("1", random::scalar(&mut rng)), ("3", random::scalar(&mut rng))]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            s: Default::default(),
        };
        let text = serde_json::to_string(&spec).unwrap();
        let back: ParamsSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let problem = back.load(qsp_core::uqg::DEFAULT_MAX_BUCKET).unwrap();
        let params = problem.params.unwrap();
        prop_assert_eq!(params.c(0), &spec.c["1"]);
        prop_assert_eq!(params.c(2), &spec.c["3"]);
    }
}
