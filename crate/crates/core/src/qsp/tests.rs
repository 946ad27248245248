use std::sync::Arc;

use crate::cartan::{AdmissiblePair, CartanDatum};
use crate::scalar::Scalar;
use crate::uqg::Element;

use super::*;

fn ctx(datum: CartanDatum, x: &[i64], tau: &[(i64, i64)]) -> Arc<QspContext> {
    let pair = AdmissiblePair::from_labels(Arc::new(datum), x, tau).unwrap();
    Arc::new(QspContext::new(Arc::new(pair)).unwrap())
}

fn named(name: &str, x: &[i64], tau: &[(i64, i64)]) -> Arc<QspContext> {
    ctx(CartanDatum::by_name(name).unwrap(), x, tau)
}

fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

fn sample_c(ctx: &QspContext) -> Vec<Scalar> {
    let pair = ctx.pair();
    (0..pair.rank())
        .map(|i| {
            if pair.in_x(i) {
                Scalar::zero()
            } else {
                let rep = i.min(pair.tau(i)) as i64;
                &q(rep + 1) + &Scalar::from_int(rep + 2)
            }
        })
        .collect()
}

#[test]
fn sign_function() {
    let c = named("A3", &[2], &[(1, 3)]);
    assert_eq!(c.s_value(0), &-Scalar::i());
    assert_eq!(c.s_value(2), &Scalar::i());
    assert_eq!(c.s_value(1), &Scalar::one());
}

#[test]
fn quasi_split_z_is_minus_one() {
    let c = named("A2", &[], &[]);
    let alg = c.algebra();
    assert_eq!(c.z(0).unwrap(), &alg.scalar(-Scalar::one()));
    assert_eq!(c.theta_q_fk(1).unwrap(), &alg.e(1).scale(&-Scalar::one()));
    let p = QspParams::new(c.clone(), vec![q(1), Scalar::one()], vec![]).unwrap();
    let expected = alg.f(0) - alg.mul_k_right(&alg.e(0), &-&alg.datum().simple(0)).scale(&q(1));
    assert_eq!(p.b(0), &expected);
}

#[test]
fn aiv_z_element() {
    let c = named("A3", &[2], &[(1, 3)]);
    let alg = c.algebra();
    let kpart = &alg.datum().simple(2) - &alg.datum().simple(0);
    let expected = alg
        .mul_k_right(&alg.e(1), &kpart)
        .scale(&(-c.s_value(2) * (Scalar::one() - q(-2))));
    assert!(alg.equals(c.z(0).unwrap(), &expected).unwrap());
}

#[test]
fn parameter_validation() {
    let c = named("A2", &[], &[]);
    let err = QspParams::new(c.clone(), vec![Scalar::one(), Scalar::zero()], vec![]).unwrap_err();
    assert!(matches!(err, QspError::Params(ref v) if v == &vec![ParamViolation::ZeroC { node: 2 }]));
    let err = QspParams::new(c.clone(), vec![Scalar::one(); 2], vec![Scalar::one()]).unwrap_err();
    assert!(matches!(err, QspError::Params(ref v) if matches!(v[0], ParamViolation::SCoupling { .. })));
    let b2 = named("B2", &[], &[]);
    assert!(QspParams::new(b2.clone(), vec![Scalar::one(); 2], vec![Scalar::one()]).is_ok());
    assert!(QspParams::new(b2, vec![Scalar::one(); 2], vec![Scalar::zero(), Scalar::one()]).is_err());
    let swap = named("A3", &[], &[(1, 3)]);
    let err = QspParams::new(swap, vec![Scalar::one(), Scalar::one(), q(1)], vec![]).unwrap_err();
    assert!(matches!(err, QspError::Params(ref v) if matches!(v[0], ParamViolation::CNotTauSymmetric { .. })));
}

fn closed_matches_oracle(c: Arc<QspContext>, s: Vec<Scalar>, pres: Presentation) {
    let p = QspParams::new(c.clone(), sample_c(&c), s).unwrap();
    let alg = c.algebra();
    for i in c.pair().outside_x() {
        for j in 0..c.pair().rank() {
            if i == j {
                continue;
            }
            let oracle = c_oracle(&p, i, j).unwrap();
            let closed = closed_form(&p, i, j, pres).unwrap().evaluate(&p);
            assert!(alg.equals(&oracle, &closed).unwrap(), "{} i={i} j={j}", c.pair());
            let defect = serre_defect(&p, i, j, CSource::Oracle).unwrap();
            assert!(alg.is_zero(&defect).unwrap(), "{} i={i} j={j}", c.pair());
        }
    }
}

#[test]
fn swap_of_orthogonal_nodes() {
    let d = CartanDatum::from_matrix(vec![vec![2, 0], vec![0, 2]]).unwrap();
    let c = ctx(d, &[], &[(1, 2)]);
    closed_matches_oracle(c, vec![], Presentation::Standard);
}

#[test]
fn swap_in_a2() {
    closed_matches_oracle(named("A2", &[], &[(1, 2)]), vec![], Presentation::Standard);
}

#[test]
fn quasi_split_split_cases() {
    closed_matches_oracle(named("A2", &[], &[]), vec![], Presentation::Standard);
    closed_matches_oracle(named("B2", &[], &[]), vec![], Presentation::Standard);
    closed_matches_oracle(named("B2", &[], &[]), vec![], Presentation::Unified);
}

#[test]
fn node_in_x_cases() {
    closed_matches_oracle(named("B2", &[2], &[]), vec![], Presentation::Standard);
    closed_matches_oracle(named("B2", &[2], &[]), vec![], Presentation::Unified);
}

#[test]
fn w_element_consistency() {
    let c = named("B2", &[2], &[]);
    let alg = c.algebra();
    let w = c.w(0, 1).unwrap();
    let form = alg.datum().form(&alg.datum().simple(0), &alg.datum().simple(1));
    assert_eq!(form, -2);
    let expected = alg.skew_r(1, c.z(0).unwrap()).unwrap().scale(&(Scalar::one() - q(2 * form)).inv().unwrap());
    assert!(alg.equals(&w, &expected).unwrap());
    assert!(matches!(c.w(1, 0), Err(QspError::NodeInX(2))));
}

#[test]
fn out_of_scope_formula() {
    let d = CartanDatum::from_matrix(vec![vec![2, -4], vec![-1, 2]]).unwrap();
    let c = ctx(d, &[], &[]);
    let p = QspParams::new(c.clone(), vec![Scalar::one(); 2], vec![]).unwrap();
    let err = closed_form(&p, 0, 1, Presentation::Standard).unwrap_err();
    assert!(matches!(err, QspError::NoClosedFormula { a: -4, .. }));
    let _: Element = c_oracle(&p, 0, 1).unwrap();
}

#[test]
fn swap_in_affine_a1() {
    closed_matches_oracle(named("affine:A1", &[], &[(0, 1)]), vec![], Presentation::Standard);
}

#[test]
fn quasi_split_g2() {
    closed_matches_oracle(named("G2", &[], &[]), vec![], Presentation::Standard);
}

#[test]
fn aiv_in_a3() {
    closed_matches_oracle(named("A3", &[2], &[(1, 3)]), vec![], Presentation::Standard);
}

#[test]
fn cii_in_c3() {
    closed_matches_oracle(named("C3", &[1, 3], &[]), vec![], Presentation::Standard);
    closed_matches_oracle(named("C3", &[1, 3], &[]), vec![], Presentation::Unified);
}

#[test]
fn nonzero_s_parameters() {
    let b2 = named("B2", &[], &[]);
    closed_matches_oracle(b2, vec![q(1), Scalar::zero()], Presentation::Standard);
    let d = CartanDatum::from_matrix(vec![vec![2, 0], vec![0, 2]]).unwrap();
    let split = ctx(d, &[], &[]);
    closed_matches_oracle(split, vec![Scalar::one(), q(-1)], Presentation::Standard);
}

#[test]
fn triple_bond_relation_holds_directly() {
    let c = named("G2", &[], &[]);
    let alg = c.algebra();
    for c0 in [Scalar::one(), &q(3) + &Scalar::from_int(2)] {
        let p = QspParams::new(c.clone(), vec![c0, Scalar::one()], vec![]).unwrap();
        let y = alg.serre_polynomial(0, 1, p.b(0), p.b(1));
        let closed = closed_form(&p, 0, 1, Presentation::Standard).unwrap().evaluate(&p);
        assert!(alg.equals(&y, &closed).unwrap());
    }
}
