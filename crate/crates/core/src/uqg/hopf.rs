use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{AddAssign, Neg, Sub};

use crate::cartan::RootVector;
use crate::scalar::Scalar;

use super::{Algebra, Element, Monomial};

/// A finite linear combination of pure tensors of normal-ordered monomials,
/// with a fixed number of tensor factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Vec<Monomial>, Scalar>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn add_term(&mut self, factors: Vec<Monomial>, c: Scalar) {
        debug_assert_eq!(factors.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Monomial>, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `a (x) b`.
    pub fn pure(a: &Element, b: &Element) -> Tensor {
        let mut t = Tensor::zero(2);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term(vec![ma.clone(), mb.clone()], ca * cb);
            }
        }
        t
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut t = Tensor::zero(self.arity);
        for (m, x) in &self.terms {
            t.add_term(m.clone(), x * c);
        }
        t
    }

    /// Replaces factor `slot` of every term by the element `f(monomial)`.
    pub fn map_slot(&self, slot: usize, f: impl Fn(&Monomial) -> Element) -> Tensor {
        let mut t = Tensor::zero(self.arity);
        for (ms, c) in &self.terms {
            for (m, x) in f(&ms[slot]).terms() {
                let mut key = ms.clone();
                key[slot] = m.clone();
                t.add_term(key, c * x);
            }
        }
        t
    }

    /// Keeps the terms for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(&[Monomial]) -> bool) -> Tensor {
        let mut t = Tensor::zero(self.arity);
        for (ms, c) in &self.terms {
            if keep(ms) {
                t.add_term(ms.clone(), c.clone());
            }
        }
        t
    }
}

impl AddAssign<&Tensor> for Tensor {
    fn add_assign(&mut self, rhs: &Tensor) {
        assert_eq!(self.arity, rhs.arity);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out += &(-rhs);
        out
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(&-Scalar::one())
    }
}

impl Algebra {
    /// `Delta` of a single normal-ordered monomial, as a list of pure tensors.
    pub fn coproduct_monomial(&self, m: &Monomial) -> Vec<(Monomial, Monomial, Scalar)> {
        let e_parts = self.split_e(&m.e);
        let f_parts = self.split_f(&m.f);
        let mut out = Vec::with_capacity(e_parts.len() * f_parts.len());
        for (e1, kdeg, e2, ce) in &e_parts {
            for (f1, kneg, f2, cf) in &f_parts {
                let left = Monomial {
                    e: e1.clone(),
                    k: kdeg + &m.k,
                    f: f1.clone(),
                };
                let right = Monomial {
                    e: e2.clone(),
                    k: &m.k - kneg,
                    f: f2.clone(),
                };
                out.push((left, right, Scalar::v_pow(2 * (ce + cf))));
            }
        }
        out
    }

    /// Terms of `Delta(E_word)` as `(E_{rest} K_{deg S}) (x) E_S` with the
    /// `q`-exponent from reordering.
    fn split_e(&self, word: &[u8]) -> Vec<(Vec<u8>, RootVector, Vec<u8>, i64)> {
        (0u32..(1u32 << word.len()))
            .map(|mask| self.split_e_mask(word, mask))
            .collect()
    }

    /// The term of `Delta(E_word)` whose second factor keeps the letters in `mask`.
    fn split_e_mask(&self, word: &[u8], mask: u32) -> (Vec<u8>, RootVector, Vec<u8>, i64) {
        let mut first = Vec::new();
        let mut second = Vec::new();
        let mut kdeg = RootVector::zero(self.rank());
        let mut exp = 0i64;
        for (p, &l) in word.iter().enumerate() {
            if mask >> p & 1 == 1 {
                second.push(l);
                kdeg[l as usize] += 1;
            } else {
                first.push(l);
                // K's chosen earlier must move right past this E.
                exp += self.form_root_word(&kdeg, &[l]);
            }
        }
        (first, kdeg, second, exp)
    }

    /// Terms of `Delta(F_word)` as `F_T (x) (K_{-deg T} F_{rest})`.
    fn split_f(&self, word: &[u8]) -> Vec<(Vec<u8>, RootVector, Vec<u8>, i64)> {
        (0u32..(1u32 << word.len()))
            .map(|mask| self.split_f_mask(word, mask))
            .collect()
    }

    /// The term of `Delta(F_word)` whose first factor keeps the letters in `mask`.
    fn split_f_mask(&self, word: &[u8], mask: u32) -> (Vec<u8>, RootVector, Vec<u8>, i64) {
        let mut first = Vec::new();
        let mut second = Vec::new();
        let mut kdeg = RootVector::zero(self.rank());
        let mut exp = 0i64;
        let mut passed: Vec<u8> = Vec::new();
        for (p, &l) in word.iter().enumerate() {
            if mask >> p & 1 == 1 {
                first.push(l);
                kdeg[l as usize] += 1;
                // K_{-alpha_l} moves left past the F's already placed.
                exp -= self.form_word(l as usize, &passed);
            } else {
                second.push(l);
                passed.push(l);
            }
        }
        (first, kdeg, second, exp)
    }

    /// `(id (x) pi_{alpha,beta}) o Delta`, keeping only the terms whose second
    /// factor lies in `U^+_alpha U^0 U^-_{-beta}`.
    pub fn coproduct_projected(&self, x: &Element, alpha: &RootVector, beta: &RootVector) -> Tensor {
        let mut t = Tensor::zero(2);
        for (m, c) in x.terms() {
            let e_masks = masks_with_degree(&m.e, alpha, true);
            let f_masks = masks_with_degree(&m.f, beta, false);
            for &em in &e_masks {
                let (e1, kdeg, e2, ce) = self.split_e_mask(&m.e, em);
                for &fm in &f_masks {
                    let (f1, kneg, f2, cf) = self.split_f_mask(&m.f, fm);
                    let left = Monomial {
                        e: e1.clone(),
                        k: &kdeg + &m.k,
                        f: f1,
                    };
                    let right = Monomial {
                        e: e2.clone(),
                        k: &m.k - &kneg,
                        f: f2,
                    };
                    t.add_term(vec![left, right], c.mul_v_pow(2 * (ce + cf)));
                }
            }
        }
        t
    }

    pub fn coproduct(&self, x: &Element) -> Tensor {
        let mut t = Tensor::zero(2);
        for (m, c) in x.terms() {
            for (a, b, s) in self.coproduct_monomial(m) {
                t.add_term(vec![a, b], c * &s);
            }
        }
        t
    }

    /// Applies `Delta` to factor `slot`, producing one more factor.
    pub fn coproduct_at(&self, t: &Tensor, slot: usize) -> Tensor {
        let mut out = Tensor::zero(t.arity() + 1);
        for (ms, c) in t.terms() {
            for (a, b, s) in self.coproduct_monomial(&ms[slot]) {
                let mut key = Vec::with_capacity(ms.len() + 1);
                key.extend_from_slice(&ms[..slot]);
                key.push(a);
                key.push(b);
                key.extend_from_slice(&ms[slot + 1..]);
                out.add_term(key, c * &s);
            }
        }
        out
    }

    /// Applies `eps` to factor `slot`, removing it.
    pub fn counit_at(&self, t: &Tensor, slot: usize) -> Tensor {
        let mut out = Tensor::zero(t.arity() - 1);
        for (ms, c) in t.terms() {
            if monomial_counit(&ms[slot]) {
                let mut key = ms.clone();
                key.remove(slot);
                out.add_term(key, c.clone());
            }
        }
        out
    }

    /// Reads a one-factor tensor as an element.
    pub fn tensor_to_element(&self, t: &Tensor) -> Element {
        assert_eq!(t.arity(), 1);
        t.terms().map(|(ms, c)| (ms[0].clone(), c.clone())).collect()
    }

    /// Multiplication `m: U (x) U -> U`.
    pub fn multiply_factors(&self, t: &Tensor) -> Element {
        assert_eq!(t.arity(), 2);
        let mut out = Element::zero();
        for (ms, c) in t.terms() {
            for (m, s) in self.mul_monomials(&ms[0], &ms[1]).iter() {
                out.add_term(m.clone(), c * s);
            }
        }
        out
    }

    /// The counit.
    pub fn counit(&self, x: &Element) -> Scalar {
        x.terms()
            .filter(|(m, _)| monomial_counit(m))
            .map(|(_, c)| c.clone())
            .sum()
    }

    /// The antipode, an algebra antiautomorphism with `S(E_i) = -K_i^{-1} E_i`,
    /// `S(F_i) = -F_i K_i` and `S(K_beta) = K_{-beta}`.
    pub fn antipode(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            out += &self.antipode_monomial(m).scale(c);
        }
        out
    }

    pub fn antipode_monomial(&self, m: &Monomial) -> Element {
        let mut acc = self.one();
        for &l in m.f.iter().rev() {
            let l = l as usize;
            let s = self.mul_k_right(&self.f(l), &self.datum().simple(l)).scale(&-Scalar::one());
            acc = self.mul(&acc, &s);
        }
        acc = self.mul_k_right(&acc, &-&m.k);
        for &l in m.e.iter().rev() {
            let l = l as usize;
            let s = self.mul_k_left(&-&self.datum().simple(l), &self.e(l)).scale(&-Scalar::one());
            acc = self.mul(&acc, &s);
        }
        acc
    }
}

fn monomial_counit(m: &Monomial) -> bool {
    m.e.is_empty() && m.f.is_empty()
}

/// Bit masks selecting the letters of `word` that form the second tensor
/// factor with degree `target`. For E-words the set bits go to the second
/// factor; for F-words they mark the letters kept in the first factor.
fn masks_with_degree(word: &[u8], target: &RootVector, set_is_second: bool) -> Vec<u32> {
    fn rec(word: &[u8], p: usize, budget: &mut Vec<i64>, mask: u32, set_is_second: bool, out: &mut Vec<u32>) {
        if p == word.len() {
            if budget.iter().all(|&b| b == 0) {
                out.push(mask);
            }
            return;
        }
        let l = word[p] as usize;
        // Letter goes to the second factor.
        if budget[l] > 0 {
            budget[l] -= 1;
            let m = if set_is_second { mask | 1 << p } else { mask };
            rec(word, p + 1, budget, m, set_is_second, out);
            budget[l] += 1;
        }
        let m = if set_is_second { mask } else { mask | 1 << p };
        rec(word, p + 1, budget, m, set_is_second, out);
    }
    let mut out = Vec::new();
    let mut budget = target.0.clone();
    if budget.iter().any(|&b| b < 0) {
        return out;
    }
    rec(word, 0, &mut budget, 0, set_is_second, &mut out);
    out
}
