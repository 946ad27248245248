use std::sync::Arc;

use crate::cartan::{CartanDatum, RootVector};
use crate::scalar::Scalar;

use super::*;

fn alg(name: &str) -> Algebra {
    Algebra::new(Arc::new(CartanDatum::by_name(name).unwrap()))
}

fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

#[test]
fn commutator_of_e_and_f() {
    let a = alg("B2");
    for i in 0..2 {
        let lhs = a.mul(&a.e(i), &a.f(i)) - a.mul(&a.f(i), &a.e(i));
        let rhs = (a.k_simple(i, 1) - a.k_simple(i, -1)).scale(a.qdiff_inv(i));
        assert_eq!(lhs, rhs);
    }
    let lhs = a.mul(&a.e(0), &a.f(1));
    assert_eq!(lhs, a.mul(&a.f(1), &a.e(0)));
}

#[test]
fn k_moves_past_e_and_f() {
    let a = alg("A2");
    let beta = RootVector(vec![1, 2]);
    let lhs = a.mul(&a.k(&beta), &a.e(0));
    let rhs = a.mul(&a.e(0), &a.k(&beta)).scale(&q(a.datum().form(&beta, &a.datum().simple(0))));
    assert_eq!(lhs, rhs);
    let lhs = a.mul(&a.k(&beta), &a.f(1));
    let rhs = a.mul(&a.f(1), &a.k(&beta)).scale(&q(-a.datum().form(&beta, &a.datum().simple(1))));
    assert_eq!(lhs, rhs);
}

#[test]
fn product_is_associative() {
    let a = alg("A2");
    let x = a.parse("E[1] F[2] + q*K{1:1}").unwrap();
    let y = a.parse("F[1,1] - E[2]").unwrap();
    let z = a.parse("E[1,2] F[1]").unwrap();
    let l = a.mul(&a.mul(&x, &y), &z);
    let r = a.mul(&x, &a.mul(&y, &z));
    assert!(a.equals(&l, &r).unwrap());
}

#[test]
fn serre_polynomials_vanish() {
    for name in ["A2", "B2", "G2", "affine:A1"] {
        let a = alg(name);
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    continue;
                }
                let e = a.serre_polynomial(i, j, &a.e(i), &a.e(j));
                assert!(a.is_zero(&e).unwrap(), "{name} E {i} {j}");
                let f = a.serre_polynomial(i, j, &a.f(i), &a.f(j));
                assert!(a.is_zero(&f).unwrap(), "{name} F {i} {j}");
            }
        }
    }
}

#[test]
fn zero_test_detects_nonzero() {
    let a = alg("A2");
    assert!(!a.is_zero(&a.e(0)).unwrap());
    let x = a.e_word(&[0, 1]) - a.e_word(&[1, 0]);
    assert!(!a.is_zero(&x).unwrap());
    let y = a.e_word(&[0, 0, 1]).scale(&Scalar::from_int(2)) - a.e_word(&[0, 1, 0]);
    assert!(!a.is_zero(&y).unwrap());
    let serre = a.serre_polynomial(0, 1, &a.e(0), &a.e(1));
    let off = serre.clone() + a.e_word(&[1, 0, 0]).scale(&q(1));
    assert!(!a.is_zero(&off).unwrap());
    let mixed = a.mul(&serre, &a.f(1));
    assert!(a.is_zero(&mixed).unwrap());
}

#[test]
fn zero_test_with_few_distinct_words() {
    // Far fewer distinct words than words of the degree, with relations
    // among them, so only a certified subset of functionals is contracted.
    let a = alg("A3");
    let s = a.serre_polynomial(0, 1, &a.e(0), &a.e(1));
    let x = a.mul(&a.mul(&s, &a.e(2)), &a.e(1)) + a.mul(&a.mul(&a.e(1), &s), &a.e(2)).scale(&q(3));
    assert!(a.is_zero(&x).unwrap());
    for w in [[0u8, 1, 0, 2, 1], [1, 0, 0, 1, 2], [2, 1, 1, 0, 0]] {
        let off = x.clone() + a.e_word(&w).scale(&q(-1));
        assert!(!a.is_zero(&off).unwrap(), "{w:?}");
    }
    let pair = a.e_word(&[0, 1, 0, 2, 1]) - a.e_word(&[0, 1, 0, 1, 2]);
    assert!(!a.is_zero(&pair).unwrap());
}

#[test]
fn coproduct_of_generators() {
    let a = alg("A2");
    let d = a.coproduct(&a.e(0));
    let expected = {
        let mut t = Tensor::pure(&a.e(0), &a.one());
        t += &Tensor::pure(&a.k_simple(0, 1), &a.e(0));
        t
    };
    assert_eq!(d, expected);
    let d = a.coproduct(&a.f(1));
    let mut expected = Tensor::pure(&a.f(1), &a.k_simple(1, -1));
    expected += &Tensor::pure(&a.one(), &a.f(1));
    assert_eq!(d, expected);
}

#[test]
fn coproduct_is_multiplicative() {
    let a = alg("B2");
    let x = a.parse("E[1,2] K{1:1} F[2]").unwrap();
    let y = a.parse("E[2] F[1,2]").unwrap();
    let lhs = a.coproduct(&a.mul(&x, &y));
    let dx = a.coproduct(&x);
    let dy = a.coproduct(&y);
    let mut rhs = Tensor::zero(2);
    for (mx, cx) in dx.terms() {
        for (my, cy) in dy.terms() {
            let first = a.mul_monomials(&mx[0], &my[0]);
            let second = a.mul_monomials(&mx[1], &my[1]);
            for (m1, c1) in first.iter() {
                for (m2, c2) in second.iter() {
                    rhs.add_term(vec![m1.clone(), m2.clone()], &(cx * cy) * &(c1 * c2));
                }
            }
        }
    }
    assert!(a.tensor_is_zero(&(&lhs - &rhs)).unwrap());
}

#[test]
fn hopf_axioms_on_a_sample() {
    let a = alg("A2");
    let x = a.parse("E[1,2] K{2:-1} F[1] + q*F[2,1]").unwrap();
    let d = a.coproduct(&x);
    let l = a.coproduct_at(&d, 0);
    let r = a.coproduct_at(&d, 1);
    assert!(a.tensor_is_zero(&(&l - &r)).unwrap());
    let c0 = a.tensor_to_element(&a.counit_at(&d, 0));
    let c1 = a.tensor_to_element(&a.counit_at(&d, 1));
    assert!(a.equals(&c0, &x).unwrap());
    assert!(a.equals(&c1, &x).unwrap());
    let s = d.map_slot(0, |m| a.antipode_monomial(m));
    let lhs = a.multiply_factors(&s);
    assert!(a.equals(&lhs, &a.scalar(a.counit(&x))).unwrap());
}

#[test]
fn antipode_values() {
    let a = alg("A2");
    assert_eq!(a.antipode(&a.k_simple(0, 1)), a.k_simple(0, -1));
    let sf = a.antipode(&a.f(0));
    assert_eq!(sf, a.mul_k_right(&a.f(0), &a.datum().simple(0)).scale(&Scalar::from_int(-1)));
    assert_eq!(a.counit(&(a.k_simple(0, 3) + a.parse("E[1] F[1]").unwrap())), Scalar::one());
}

#[test]
fn skew_derivations_on_words() {
    let a = alg("A2");
    assert_eq!(a.skew_r(0, &a.e_word(&[1, 0])).unwrap(), a.e(1));
    assert_eq!(a.skew_r(0, &a.e_word(&[0, 1])).unwrap(), a.e(1).scale(&q(-1)));
    assert_eq!(a.skew_ir(0, &a.e_word(&[0, 1])).unwrap(), a.e(1));
    assert_eq!(a.skew_ir(0, &a.e_word(&[1, 0])).unwrap(), a.e(1).scale(&q(-1)));
    assert!(a.skew_r(0, &a.f(0)).is_err());
    assert!(a.skew_r(0, &(a.e(0) + a.e(1))).is_err());
}

#[test]
fn derivations_and_f_commutator() {
    let a = alg("A2");
    let x = a.e_word(&[0, 1, 0]);
    for i in 0..2 {
        let lhs = a.mul(&x, &a.f(i)) - a.mul(&a.f(i), &x);
        let r = a.mul_k_right(&a.skew_r(i, &x).unwrap(), &a.datum().simple(i));
        let ir = a.mul_k_left(&-&a.datum().simple(i), &a.skew_ir(i, &x).unwrap());
        let rhs = (r - ir).scale(a.qdiff_inv(i));
        assert!(a.equals(&lhs, &rhs).unwrap());
    }
}

#[test]
fn involutions() {
    let a = alg("A2");
    assert_eq!(a.sigma(&a.e_word(&[0, 1])), a.e_word(&[1, 0]));
    let beta = RootVector(vec![1, -1]);
    assert_eq!(a.sigma(&a.k(&beta)), a.k(&-&beta));
    let x = a.mul(&a.e(0), &a.f(0)) - a.mul(&a.f(0), &a.e(0));
    let expected = (a.k_simple(0, 1) - a.k_simple(0, -1)).scale(a.qdiff_inv(0)).scale(&Scalar::from_int(-1));
    assert!(a.equals(&a.omega(&x), &expected).unwrap());
    let y = a.k_simple(0, 1).scale(&q(1));
    assert_eq!(a.bar(&y), a.k_simple(0, -1).scale(&q(-1)));
    let u = a.parse("E[1] F[2] K{1:1} + v*F[1] E[2]").unwrap();
    let w = a.parse("E[2] K{2:3} F[1,2]").unwrap();
    assert!(a.equals(&a.bar(&a.mul(&u, &w)), &a.mul(&a.bar(&u), &a.bar(&w))).unwrap());
    assert!(a.equals(&a.sigma(&a.mul(&u, &w)), &a.mul(&a.sigma(&w), &a.sigma(&u))).unwrap());
    assert!(a.equals(&a.omega(&a.mul(&u, &w)), &a.mul(&a.omega(&u), &a.omega(&w))).unwrap());
    assert!(a.equals(&a.sigma(&a.sigma(&u)), &u).unwrap());
}

#[test]
fn adjoint_action() {
    let a = alg("A2");
    assert!(a.adjoint_e(0, &a.one()).is_empty());
    // ad(E_i)(x) = sum E_(1) x S(E_(2)) with the Hopf structure.
    for x in [a.f(0), a.parse("E[2] F[1] K{1:1}").unwrap(), a.e(1)] {
        let d = a.coproduct(&a.e(0));
        let mut via_hopf = Element::zero();
        for (ms, c) in d.terms() {
            let left = Element::from_monomial(ms[0].clone(), c.clone());
            let s = a.antipode_monomial(&ms[1]);
            via_hopf += &a.product([&left, &x, &s]);
        }
        assert!(a.equals(&a.adjoint_e(0, &x), &via_hopf).unwrap());
    }
    let got = a.adjoint_e(0, &a.f(0));
    let expected = a.mul(&a.e(0), &a.f(0)) - a.mul(&a.f(0), &a.e(0)).scale(&q(-2));
    assert!(a.equals(&got, &expected).unwrap());
}

#[test]
fn text_round_trip() {
    let a = alg("affine:A1");
    let x = a.parse("(q + q^-1)*E[0,1] K{1:-2} F[0] - 1/2*v^3*F[1] + (1/(1-q^2))*K{0:1} + i").unwrap();
    let printed = a.format(&x);
    assert_eq!(a.parse(&printed).unwrap(), x);
    assert_eq!(a.format(&Element::zero()), "0");
    assert_eq!(a.format(&a.e(0).scale(&Scalar::from_int(-1))), "-E[0]");
    assert!(a.parse("E[7]").is_err());
    assert!(a.parse("E[1] / F[1]").is_err());
}

#[test]
fn bucket_guard() {
    let a = Algebra::with_max_bucket(Arc::new(CartanDatum::by_name("A2").unwrap()), 2);
    let x = a.e_word(&[0, 1, 0]) - a.e_word(&[0, 0, 1]);
    assert!(matches!(a.is_zero(&x), Err(UqgError::BucketTooLarge { .. })));
}

#[test]
fn projected_coproduct_matches_filtered_coproduct() {
    let a = alg("B2");
    let x = a.parse("E[1,2,1] K{2:1} F[2,1] + q*E[2] F[1,1,2] - F[2]").unwrap();
    let full = a.coproduct(&x);
    for (al, be) in [([0, 0], [0, 0]), ([1, 0], [0, 0]), ([1, 1], [1, 0]), ([0, 1], [1, 1])] {
        let alpha = RootVector(al.to_vec());
        let beta = RootVector(be.to_vec());
        let proj = a.coproduct_projected(&x, &alpha, &beta);
        let n = a.rank();
        let filtered = full.filter(|ms| {
            word_degree(n, &ms[1].e) == alpha && word_degree(n, &ms[1].f) == beta
        });
        assert_eq!(proj, filtered);
    }
}
