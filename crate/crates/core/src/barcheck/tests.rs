use std::sync::Arc;

use crate::cartan::{enumerate_admissible, AdmissiblePair, CartanDatum};
use crate::qsp::{closed_form, Presentation, QspContext, QspParams};
use crate::scalar::Scalar;
use crate::uqg::Monomial;

use super::*;

fn ctx(name: &str, x: &[i64], tau: &[(i64, i64)]) -> Arc<QspContext> {
    let d = Arc::new(CartanDatum::by_name(name).unwrap());
    let pair = AdmissiblePair::from_labels(d, x, tau).unwrap();
    Arc::new(QspContext::new(Arc::new(pair)).unwrap())
}

fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

fn params(ctx: &Arc<QspContext>, c: &[(i64, Scalar)]) -> QspParams {
    QspParams::from_labels(ctx.clone(), c, &[]).unwrap()
}

#[test]
fn sign_and_power_quasi_split() {
    let c = ctx("A3", &[], &[]);
    for i in 0..3 {
        assert_eq!(r_twx(&c, i).unwrap(), c.algebra().one());
        assert_eq!(nu_sign(&c, i).unwrap(), 1);
        assert!(ell(c.pair(), i).is_one());
        assert!(check_ocz(&c, i).unwrap());
    }
}

#[test]
fn sign_and_power_aiv() {
    let c = ctx("A3", &[2], &[(1, 3)]);
    assert_eq!(nu_sign(&c, 0).unwrap(), 1);
    assert_eq!(nu_sign(&c, 2).unwrap(), 1);
    // (alpha_1, Theta(alpha_1) - 2 rho_X) = n - 2r + 1 for n = 3, r = 1
    assert_eq!(c.pair().theta_rho_exponent(0), 2);
    // alpha_1 - s_2(alpha_1) - alpha_2 = -2 alpha_2 and (alpha_1, -2 alpha_2) = 2
    assert_eq!(ell(c.pair(), 0), q(2));
    assert_eq!(ell(c.pair(), 0), ell(c.pair(), 2));
    assert!(check_ocz(&c, 0).unwrap());
    assert!(check_ocz(&c, 2).unwrap());
    assert!(check_bar_r_twx(&c, 0).unwrap());
}

#[test]
fn sign_and_power_bii() {
    let c = ctx("B2", &[2], &[]);
    assert_eq!(nu_sign(&c, 0).unwrap(), 1);
    assert!(check_ocz(&c, 0).unwrap());
    assert!(check_bar_r_twx(&c, 0).unwrap());
}

#[test]
fn finite_rank_three_pairs_satisfy_bar_identities() {
    for name in ["A3", "B3", "C3"] {
        let d = Arc::new(CartanDatum::by_name(name).unwrap());
        for pair in enumerate_admissible(d).unwrap() {
            let c = QspContext::new(Arc::new(pair)).unwrap();
            for i in c.pair().outside_x() {
                assert_eq!(nu_sign(&c, i).unwrap(), 1, "{name} {}", c.pair());
                assert_eq!(nu_sign(&c, c.pair().tau(i)).unwrap(), 1);
                assert_eq!(ell(c.pair(), i), ell(c.pair(), c.pair().tau(i)));
                assert!(check_ocz(&c, i).unwrap(), "{name} {}", c.pair());
                assert!(check_bar_r_twx(&c, i).unwrap(), "{name} {}", c.pair());
            }
        }
    }
}

#[test]
fn aiii_without_x() {
    let c = ctx("A3", &[], &[(1, 3)]);
    let good = params(&c, &[(1, Scalar::one()), (2, q(-1)), (3, Scalar::one())]);
    let r = bar_exists(&good).unwrap();
    assert!(r.exists());
    assert!(corollary_conditions(&good).unwrap().holds);
    let bad = params(&c, &[(1, Scalar::one()), (2, Scalar::one()), (3, Scalar::one())]);
    let r = bar_exists(&bad).unwrap();
    assert_eq!(r.verdict, Verdict::Fails);
    assert_eq!(r.failing_nodes, vec![2]);
    assert!(!corollary_conditions(&bad).unwrap().holds);
    assert_eq!(canonical_params(c.pair()), vec![Scalar::one(), q(-1), Scalar::one()]);
}

#[test]
fn aiii_with_x() {
    let c = ctx("A3", &[2], &[(1, 3)]);
    let good = params(&c, &[(1, q(1)), (3, q(1))]);
    assert!(bar_exists(&good).unwrap().exists());
    assert!(corollary_conditions(&good).unwrap().holds);
    for c3 in [Scalar::one(), q(-1), q(2)] {
        let bad = params(&c, &[(1, q(1)), (3, c3)]);
        assert!(!bar_exists(&bad).unwrap().exists());
        assert!(!corollary_conditions(&bad).unwrap().holds);
    }
    let generic = &q(1) + &Scalar::from_int(3);
    let c3 = q(2) * generic.bar();
    assert!(bar_exists(&params(&c, &[(1, generic), (3, c3)])).unwrap().exists());
}

#[test]
fn split_condition_with_fixed_scalar() {
    let c = ctx("A2", &[], &[]);
    let p = params(&c, &[(1, q(-1)), (2, q(-1))]);
    assert!(corollary_conditions(&p).unwrap().holds);
    assert!(bar_exists(&p).unwrap().exists());
    let lam = &q(1) + &q(-1);
    let p = params(&c, &[(1, &q(-1) * &lam), (2, q(-1))]);
    assert!(bar_exists(&p).unwrap().exists());
    let p = params(&c, &[(1, Scalar::one()), (2, q(-1))]);
    assert!(!bar_exists(&p).unwrap().exists());
    assert!(!corollary_conditions(&p).unwrap().holds);
}

#[test]
fn isolated_fixed_nodes_are_skipped() {
    let d = Arc::new(CartanDatum::from_matrix(vec![vec![2, 0], vec![0, 2]]).unwrap());
    let pair = AdmissiblePair::from_labels(d, &[], &[]).unwrap();
    let c = Arc::new(QspContext::new(Arc::new(pair)).unwrap());
    let p = params(&c, &[(1, q(5)), (2, &q(1) + &Scalar::from_int(7))]);
    let r = bar_exists(&p).unwrap();
    assert!(r.exists());
    assert!(r.oc_z.is_empty());
}

#[test]
fn out_of_scope_rejected() {
    let d = Arc::new(CartanDatum::from_matrix(vec![vec![2, -4], vec![-1, 2]]).unwrap());
    let pair = AdmissiblePair::from_labels(d, &[], &[]).unwrap();
    let c = Arc::new(QspContext::new(Arc::new(pair)).unwrap());
    let p = params(&c, &[(1, Scalar::one()), (2, Scalar::one())]);
    assert!(matches!(bar_exists(&p), Err(BarError::OutOfScope { a: -4, .. })));
}

#[test]
fn canonical_parameters_admit_bar_involution() {
    for name in ["A2", "A3", "B2", "B3", "C3", "G2"] {
        let d = Arc::new(CartanDatum::by_name(name).unwrap());
        for pair in enumerate_admissible(d).unwrap() {
            let dvals = canonical_params(&pair);
            assert!(check_d(&pair, &dvals).is_empty());
            let c = Arc::new(QspContext::new(Arc::new(pair)).unwrap());
            let p = QspParams::new(c.clone(), dvals, vec![]).unwrap();
            assert!(bar_exists(&p).unwrap().exists(), "{name} {}", c.pair());
            assert!(corollary_conditions(&p).unwrap().holds);
        }
    }
    let c = ctx("A2", &[], &[]);
    assert_eq!(canonical_params(c.pair()), vec![q(-1), q(-1)]);
    let c = ctx("G2", &[], &[]);
    assert_eq!(canonical_params(c.pair()), vec![q(-1), q(-3)]);
}

#[test]
fn bar_twisted_relations_hold() {
    let cases = [
        ctx("A3", &[], &[(1, 3)]),
        ctx("A3", &[2], &[(1, 3)]),
        ctx("B2", &[], &[]),
        ctx("B2", &[2], &[]),
        ctx("G2", &[], &[]),
    ];
    for c in cases {
        let p = QspParams::new(c.clone(), canonical_params(c.pair()), vec![]).unwrap();
        let alg = c.algebra();
        for i in c.pair().outside_x() {
            for j in 0..c.pair().rank() {
                if j == i {
                    continue;
                }
                let y = alg.serre_polynomial(i, j, p.b(i), p.b(j));
                let twisted = closed_form(&p, i, j, Presentation::Standard)
                    .unwrap()
                    .bar_twisted(alg)
                    .evaluate(&p);
                assert!(alg.equals(&y, &twisted).unwrap(), "{} {i} {j}", c.pair());
            }
        }
    }
}

#[test]
fn equivalence_of_parameters() {
    let c = ctx("A3", &[2], &[(1, 3)]);
    let pair = c.pair();
    let d = canonical_params(pair);
    assert!(equiv_d(pair, &d, &d).unwrap());
    let lam = &q(1) + &q(-1);
    let scaled: Vec<Scalar> = d.iter().map(|x| x * &lam).collect();
    assert!(equiv_d(pair, &d, &scaled).unwrap());
    let mut other = d.clone();
    other[0] = &d[0] * &q(1);
    other[2] = &d[2] * &q(-1);
    assert!(check_d(pair, &other).is_empty());
    assert!(!equiv_d(pair, &d, &other).unwrap());
    let mut bad = d.clone();
    bad[2] = Scalar::from_int(5);
    assert!(matches!(equiv_d(pair, &d, &bad), Err(BarError::NotInD(_))));

    let c = ctx("A3", &[], &[]);
    let s1 = vec![Scalar::zero(); 3];
    assert!(equiv_s(&c, &s1, &s1).unwrap());
    let d2 = Arc::new(CartanDatum::from_matrix(vec![vec![2, 0], vec![0, 2]]).unwrap());
    let split = QspContext::new(Arc::new(AdmissiblePair::from_labels(d2, &[], &[]).unwrap())).unwrap();
    let a = vec![Scalar::one(), q(1)];
    let b = vec![-Scalar::one(), q(1)];
    let e = vec![Scalar::one(), q(2)];
    assert!(equiv_s(&split, &a, &b).unwrap());
    assert!(!equiv_s(&split, &a, &e).unwrap());
    assert!(matches!(equiv_s(&c, &s1, &[Scalar::one(), Scalar::zero(), Scalar::zero()]), Err(BarError::NotInS(_))));
}

#[test]
fn character_twist_is_hopf_automorphism() {
    let c = ctx("B2", &[], &[]);
    let alg = c.algebra();
    let x = vec![&q(1) + &Scalar::from_int(2), Scalar::i()];
    for i in 0..2 {
        assert_eq!(ad_x(alg, &x, &alg.e(i)).unwrap(), alg.e(i).scale(&x[i]));
        assert_eq!(ad_x(alg, &x, &alg.f(i)).unwrap(), alg.f(i).scale(&x[i].inv().unwrap()));
        let k = alg.k_simple(i, 1);
        assert_eq!(ad_x(alg, &x, &k).unwrap(), k);
    }
    let words = [alg.e(0), alg.f(1), alg.mul(&alg.e(1), &alg.f(0)), alg.product(&[alg.e(0), alg.e(1), alg.f(0)])];
    for u in &words {
        for w in &words {
            let lhs = ad_x(alg, &x, &alg.mul(u, w)).unwrap();
            let rhs = alg.mul(&ad_x(alg, &x, u).unwrap(), &ad_x(alg, &x, w).unwrap());
            assert!(alg.equals(&lhs, &rhs).unwrap());
        }
        let twisted = alg.coproduct(&ad_x(alg, &x, u).unwrap());
        let on_slot = |m: &Monomial| ad_x(alg, &x, &crate::uqg::Element::from_monomial(m.clone(), Scalar::one())).unwrap();
        let image = alg.coproduct(u).map_slot(0, on_slot).map_slot(1, on_slot);
        assert!(alg.tensor_is_zero(&(&twisted - &image)).unwrap());
    }
    assert!(matches!(ad_x(alg, &[Scalar::zero(), Scalar::one()], &alg.e(0)), Err(BarError::ZeroCharacter(1))));
}

#[test]
fn report_serializes_with_fixed_keys() {
    let c = ctx("A3", &[], &[(1, 3)]);
    let p = params(&c, &[(1, Scalar::one()), (2, Scalar::one()), (3, Scalar::one())]);
    let json = serde_json::to_value(bar_exists(&p).unwrap()).unwrap();
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys.len(), 5);
    for k in ["nu", "ell", "ocZ", "verdict", "failing_nodes"] {
        assert!(keys.contains(&k));
    }
    assert_eq!(json["verdict"], "fails");
    assert_eq!(json["failing_nodes"], serde_json::json!([2]));
}

#[test]
fn fixed_node_coupled_only_to_x_constrains_its_parameter() {
    // C3 with X = {1,3}: node 2 is tau-fixed and its only neighbours lie in X
    let c = ctx("C3", &[1, 3], &[]);
    let alg = c.algebra();
    let good = canonical_params(c.pair());
    let mut bad = good.clone();
    bad[1] = &bad[1] * &q(1);
    for (values, expected) in [(good, true), (bad, false)] {
        let p = QspParams::new(c.clone(), values, vec![]).unwrap();
        let y = alg.serre_polynomial(1, 2, p.b(1), p.b(2));
        let twisted = closed_form(&p, 1, 2, Presentation::Standard)
            .unwrap()
            .bar_twisted(alg)
            .evaluate(&p);
        assert_eq!(alg.equals(&y, &twisted).unwrap(), expected);
        assert_eq!(bar_exists(&p).unwrap().exists(), expected);
        assert_eq!(corollary_conditions(&p).unwrap().holds, expected);
    }
}
