use std::sync::Arc;

use crate::cartan::{CartanDatum, RootVector, WeylWord};
use crate::scalar::Scalar;
use crate::uqg::{Algebra, Element};

use super::*;

fn alg(name: &str) -> Algebra {
    Algebra::new(Arc::new(CartanDatum::by_name(name).unwrap()))
}

fn generators(a: &Algebra) -> Vec<Element> {
    let mut out = Vec::new();
    for i in 0..a.rank() {
        out.push(a.e(i));
        out.push(a.f(i));
        out.push(a.k_simple(i, 1));
    }
    out
}

#[test]
fn t2_of_e1_in_a2() {
    let a = alg("A2");
    let got = t_i(&a, 1, &a.e(0));
    let expected = a.e_word(&[1, 0]) - a.e_word(&[0, 1]).scale(&Scalar::q_pow(-1));
    assert_eq!(got, expected);
    let w = WeylWord(vec![0, 1]);
    assert!(a.equals(&apply_word(&a, &w, &a.e(0)).unwrap(), &a.e(1)).unwrap());
    assert_eq!(t_i(&a, 0, &a.k(&RootVector(vec![1, 0]))), a.k(&RootVector(vec![-1, 0])));
}

#[test]
fn inverse_pairs() {
    for name in ["A2", "B2", "G2"] {
        let a = alg(name);
        for i in 0..2 {
            for e in [1, -1] {
                for op in [BraidOperator::double(i, e), BraidOperator::single(i, e)] {
                    for x in generators(&a) {
                        let back = op.inverse().apply(&a, &op.apply(&a, &x));
                        assert!(a.equals(&back, &x).unwrap(), "{name} {op:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn braid_relations() {
    for (name, m) in [("A1xA1", 2), ("A2", 3), ("B2", 4), ("G2", 6)] {
        let a = if name == "A1xA1" {
            Algebra::new(Arc::new(CartanDatum::from_matrix(vec![vec![2, 0], vec![0, 2]]).unwrap()))
        } else {
            alg(name)
        };
        let w1: Vec<usize> = (0..m).map(|k| k % 2).collect();
        let w2: Vec<usize> = (0..m).map(|k| (k + 1) % 2).collect();
        for x in generators(&a) {
            let l = apply_word(&a, &WeylWord(w1.clone()), &x).unwrap();
            let r = apply_word(&a, &WeylWord(w2.clone()), &x).unwrap();
            assert!(a.equals(&l, &r).unwrap(), "{name}");
        }
    }
}

#[test]
fn double_and_single_prime_differ_by_weight() {
    let a = alg("B2");
    let samples = [a.e(0), a.e(1), a.f(0), a.e_word(&[0, 1]), a.f_word(&[1, 1, 0])];
    for i in 0..2 {
        for e in [1, -1] {
            for u in &samples {
                let mu = u.weights()[0].clone();
                let n = a.datum().coroot(i, &mu);
                let c = Scalar::from_int(if n % 2 == 0 { 1 } else { -1 })
                    .mul_v_pow(2 * a.datum().eps(i) * e * n);
                let l = BraidOperator::double(i, e).apply(&a, u);
                let r = BraidOperator::single(i, e).apply(&a, u).scale(&c);
                assert!(a.equals(&l, &r).unwrap());
            }
        }
    }
}

#[test]
fn bar_and_sigma_compatibility() {
    let a = alg("B2");
    let x = a.parse("E[1,2] K{1:1} + q*F[2] E[1] - (q+1)*F[1,2]").unwrap();
    for i in 0..2 {
        for e in [1, -1] {
            let l = a.bar(&BraidOperator::double(i, e).apply(&a, &x));
            let r = BraidOperator::double(i, -e).apply(&a, &a.bar(&x));
            assert!(a.equals(&l, &r).unwrap());
        }
        let l = t_i(&a, i, &a.sigma(&x));
        let r = a.sigma(&BraidOperator::t_inv(i).apply(&a, &x));
        assert!(a.equals(&l, &r).unwrap());
    }
}

#[test]
fn rejects_non_reduced_words() {
    let a = alg("A2");
    assert_eq!(
        apply_word(&a, &WeylWord(vec![0, 0]), &a.e(0)),
        Err(BraidError::NotReduced(vec![0, 0]))
    );
    let w = WeylWord(vec![0, 1, 0]);
    let x = a.parse("E[1] F[2]").unwrap();
    let y = apply_word(&a, &w, &x).unwrap();
    assert!(a.equals(&apply_word_inverse(&a, &w, &y).unwrap(), &x).unwrap());
}
