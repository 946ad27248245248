//! Lusztig's braid group operators `T'_{i,e}` and `T''_{i,e}` on `U_q(g)`.
//!
//! Only the images of generators are written down; every operator acts on a
//! normal-ordered monomial `E_a K_beta F_b` as `T(E_a) K_{s_i beta} T(F_b)`.
//! The default `T_i` is `T''_{i,1}`, and `T_w = T_{i_1} ... T_{i_k}` for a
//! reduced word `w = s_{i_1} ... s_{i_k}`.

use std::collections::HashMap;

use thiserror::Error;

use crate::cartan::{RootVector, WeylWord};
use crate::scalar::{qfactorial, Scalar};
use crate::uqg::{Algebra, Element, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("node index {0} out of range")]
    BadIndex(usize),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    /// `T'_{i,e}`.
    SinglePrime,
    /// `T''_{i,e}`.
    DoublePrime,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BraidOperator {
    pub i: usize,
    pub family: Family,
    /// `+1` or `-1`.
    pub e: i64,
}

impl BraidOperator {
    /// `T_i = T''_{i,1}`.
    pub fn t(i: usize) -> Self {
        BraidOperator {
            i,
            family: Family::DoublePrime,
            e: 1,
        }
    }

    /// `T_i^{-1} = T'_{i,-1}`.
    pub fn t_inv(i: usize) -> Self {
        BraidOperator::t(i).inverse()
    }

    pub fn single(i: usize, e: i64) -> Self {
        BraidOperator {
            i,
            family: Family::SinglePrime,
            e,
        }
    }

    pub fn double(i: usize, e: i64) -> Self {
        BraidOperator {
            i,
            family: Family::DoublePrime,
            e,
        }
    }

    /// `T''_{i,e}` and `T'_{i,-e}` are mutually inverse.
    pub fn inverse(self) -> Self {
        BraidOperator {
            i: self.i,
            family: match self.family {
                Family::SinglePrime => Family::DoublePrime,
                Family::DoublePrime => Family::SinglePrime,
            },
            e: -self.e,
        }
    }

    /// Image of `E_j` (`is_e`) or `F_j`.
    pub fn generator_image(&self, alg: &Algebra, j: usize, is_e: bool) -> Element {
        let i = self.i;
        let e = self.e;
        let eps = alg.datum().eps(i);
        let alpha = alg.datum().simple(i).scaled(e);
        let minus = Scalar::from_int(-1);
        if j == i {
            return match (self.family, is_e) {
                // -F_i K_{e alpha_i}
                (Family::DoublePrime, true) => alg.mul_k_right(&alg.f(i), &alpha).scale(&minus),
                // -K_{-e alpha_i} E_i
                (Family::DoublePrime, false) => alg.mul_k_left(&-&alpha, &alg.e(i)).scale(&minus),
                // -K_{e alpha_i} F_i
                (Family::SinglePrime, true) => alg.mul_k_left(&alpha, &alg.f(i)).scale(&minus),
                // -E_i K_{-e alpha_i}
                (Family::SinglePrime, false) => alg.mul_k_right(&alg.e(i), &-&alpha).scale(&minus),
            };
        }
        let m = -alg.datum().a(i, j);
        let mut out = Element::zero();
        for r in 0..=m {
            let s = m - r;
            let sign = if r % 2 == 0 { 1 } else { -1 };
            // Exponent of q_i and whether the E_i^{(r)} block sits to the right.
            let (exp, r_right) = match (self.family, is_e) {
                (Family::DoublePrime, true) => (-e * r, true),
                (Family::DoublePrime, false) => (e * r, false),
                (Family::SinglePrime, true) => (e * r, false),
                (Family::SinglePrime, false) => (-e * r, true),
            };
            let coeff = Scalar::from_int(sign).mul_v_pow(2 * eps * exp)
                / (qfactorial(r, eps) * qfactorial(s, eps));
            let (left, right) = if r_right { (s, r) } else { (r, s) };
            let mut word = vec![i as u8; left as usize];
            word.push(j as u8);
            word.extend(std::iter::repeat_n(i as u8, right as usize));
            let mono = if is_e {
                Monomial::e_word(alg.rank(), &word)
            } else {
                Monomial::f_word(alg.rank(), &word)
            };
            out.add_term(mono, coeff);
        }
        out
    }

    pub fn apply(&self, alg: &Algebra, x: &Element) -> Element {
        let mut cache: HashMap<(bool, Vec<u8>), Element> = HashMap::new();
        let images: Vec<(Element, Element)> = (0..alg.rank())
            .map(|j| {
                (
                    self.generator_image(alg, j, true),
                    self.generator_image(alg, j, false),
                )
            })
            .collect();
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let left = word_image(alg, &images, &mut cache, true, &m.e);
            let k = alg.datum().reflect(self.i, &m.k);
            let left = alg.mul_k_right(&left, &k);
            let right = word_image(alg, &images, &mut cache, false, &m.f);
            out += &alg.mul(&left, &right).scale(c);
        }
        out
    }

    /// `K_beta -> K_{s_i beta}` on the lattice level.
    pub fn apply_root(&self, alg: &Algebra, beta: &RootVector) -> RootVector {
        alg.datum().reflect(self.i, beta)
    }
}

fn word_image(
    alg: &Algebra,
    images: &[(Element, Element)],
    cache: &mut HashMap<(bool, Vec<u8>), Element>,
    is_e: bool,
    word: &[u8],
) -> Element {
    if word.is_empty() {
        return alg.one();
    }
    let key = (is_e, word.to_vec());
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    let head = word_image(alg, images, cache, is_e, &word[..word.len() - 1]);
    let last = word[word.len() - 1] as usize;
    let g = if is_e { &images[last].0 } else { &images[last].1 };
    let out = alg.mul(&head, g);
    cache.insert(key, out.clone());
    out
}

/// `T_i(x)`.
pub fn t_i(alg: &Algebra, i: usize, x: &Element) -> Element {
    BraidOperator::t(i).apply(alg, x)
}

fn check_word(alg: &Algebra, w: &WeylWord) -> Result<(), BraidError> {
    if let Some(&bad) = w.0.iter().find(|&&i| i >= alg.rank()) {
        return Err(BraidError::BadIndex(bad));
    }
    if !alg.datum().is_reduced(w) {
        return Err(BraidError::NotReduced(w.0.clone()));
    }
    Ok(())
}

/// `T_w(x) = T_{i_1}( ... T_{i_k}(x))` for a reduced word `w`.
pub fn apply_word(alg: &Algebra, w: &WeylWord, x: &Element) -> Result<Element, BraidError> {
    check_word(alg, w)?;
    Ok(w.0
        .iter()
        .rev()
        .fold(x.clone(), |acc, &i| t_i(alg, i, &acc)))
}

/// `T_w^{-1}(x)` for a reduced word `w`.
pub fn apply_word_inverse(alg: &Algebra, w: &WeylWord, x: &Element) -> Result<Element, BraidError> {
    check_word(alg, w)?;
    Ok(w.0
        .iter()
        .fold(x.clone(), |acc, &i| BraidOperator::t_inv(i).apply(alg, &acc)))
}

#[cfg(test)]
mod tests;
