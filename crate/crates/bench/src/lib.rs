//! Shared inputs for the benchmarks.

use std::sync::Arc;

use qsp_core::qsp::{QspContext, QspParams};
use qsp_core::{AdmissiblePair, Algebra, CartanDatum};

pub fn algebra(name: &str) -> Algebra {
    Algebra::new(Arc::new(CartanDatum::by_name(name).expect("Cartan datum")))
}

/// A pair given by node labels, with parameters from the canonical set.
pub fn canonical(name: &str, x: &[i64], tau: &[(i64, i64)]) -> QspParams {
    let datum = Arc::new(CartanDatum::by_name(name).expect("Cartan datum"));
    let pair = Arc::new(AdmissiblePair::from_labels(datum.clone(), x, tau).expect("admissible pair"));
    let alg = Arc::new(Algebra::new(datum));
    let ctx = Arc::new(QspContext::with_algebra(alg, pair.clone()).expect("context"));
    let n = pair.rank();
    let c = qsp_core::barcheck::canonical_params(&pair);
    QspParams::new(ctx, c, vec![qsp_core::Scalar::zero(); n]).expect("parameters")
}
