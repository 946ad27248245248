use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::cartan::{CartanDatum, RootVector};
use crate::scalar::{qbinom, Scalar};

use super::{Element, Monomial, Word};

/// Default bound on the number of functional evaluations in one zero test.
pub const DEFAULT_MAX_BUCKET: usize = 4_000_000;

pub type Straightened = Arc<Vec<(Monomial, Scalar)>>;

/// `U_q(g)` for a fixed Cartan datum: multiplication by straightening into
/// normal order `E...K...F`, using only the commutation relations between
/// generators. Quantum Serre relations are never rewritten; they are only
/// visible through [`Algebra::is_zero`].
///
/// Straightening results are memoized, so an `Algebra` should be shared
/// (it is `Sync`) rather than rebuilt.
pub struct Algebra {
    datum: Arc<CartanDatum>,
    sym: Vec<Vec<i64>>,
    qdiff_inv: Vec<Scalar>,
    cache: Mutex<HashMap<(Word, Word), Straightened>>,
    pub(super) dcache: Mutex<(HashMap<Word, Arc<super::zero::DVector>>, usize)>,
    max_bucket: usize,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Algebra").field("datum", &self.datum).finish()
    }
}

/// Above this many terms, products are computed in parallel.
const PARALLEL_THRESHOLD: usize = 64;

impl Algebra {
    pub fn new(datum: Arc<CartanDatum>) -> Self {
        Algebra::with_max_bucket(datum, DEFAULT_MAX_BUCKET)
    }

    pub fn with_max_bucket(datum: Arc<CartanDatum>, max_bucket: usize) -> Self {
        let n = datum.rank();
        let sym = (0..n)
            .map(|i| (0..n).map(|j| datum.eps(i) * datum.a(i, j)).collect())
            .collect();
        let qdiff_inv = (0..n)
            .map(|i| {
                let e = datum.eps(i);
                (&Scalar::q_pow(e) - &Scalar::q_pow(-e)).inv().unwrap()
            })
            .collect();
        Algebra {
            datum,
            sym,
            qdiff_inv,
            cache: Mutex::new(HashMap::new()),
            dcache: Mutex::new((HashMap::new(), 0)),
            max_bucket,
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn datum_arc(&self) -> &Arc<CartanDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn max_bucket(&self) -> usize {
        self.max_bucket
    }

    /// `(alpha_i, alpha_j)`.
    pub fn sym(&self, i: usize, j: usize) -> i64 {
        self.sym[i][j]
    }

    /// `(alpha_i, deg word)`.
    pub fn form_word(&self, i: usize, word: &[u8]) -> i64 {
        word.iter().map(|&l| self.sym[i][l as usize]).sum()
    }

    /// `(beta, deg word)`.
    pub fn form_root_word(&self, beta: &RootVector, word: &[u8]) -> i64 {
        beta.iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, &b)| b * self.form_word(i, word))
            .sum()
    }

    /// `q_i = q^{eps_i}`.
    pub fn q_i(&self, i: usize) -> Scalar {
        Scalar::q_pow(self.datum.eps(i))
    }

    /// `1 / (q_i - q_i^{-1})`.
    pub fn qdiff_inv(&self, i: usize) -> &Scalar {
        &self.qdiff_inv[i]
    }

    pub fn one(&self) -> Element {
        self.scalar(Scalar::one())
    }

    pub fn scalar(&self, c: Scalar) -> Element {
        Element::from_monomial(Monomial::one(self.rank()), c)
    }

    pub fn e(&self, i: usize) -> Element {
        self.e_word(&[i as u8])
    }

    pub fn f(&self, i: usize) -> Element {
        self.f_word(&[i as u8])
    }

    pub fn e_word(&self, word: &[u8]) -> Element {
        Element::from_monomial(Monomial::e_word(self.rank(), word), Scalar::one())
    }

    pub fn f_word(&self, word: &[u8]) -> Element {
        Element::from_monomial(Monomial::f_word(self.rank(), word), Scalar::one())
    }

    /// `K_beta`.
    pub fn k(&self, beta: &RootVector) -> Element {
        Element::from_monomial(Monomial::k_part(beta.clone()), Scalar::one())
    }

    /// `K_i^n`.
    pub fn k_simple(&self, i: usize, n: i64) -> Element {
        self.k(&self.datum.simple(i).scaled(n))
    }

    /// `x K_beta`.
    pub fn mul_k_right(&self, x: &Element, beta: &RootVector) -> Element {
        x.terms()
            .map(|(m, c)| {
                let shift = self.form_root_word(beta, &m.f);
                let mono = Monomial {
                    e: m.e.clone(),
                    k: &m.k + beta,
                    f: m.f.clone(),
                };
                (mono, c.mul_v_pow(2 * shift))
            })
            .collect()
    }

    /// `K_beta x`.
    pub fn mul_k_left(&self, beta: &RootVector, x: &Element) -> Element {
        x.terms()
            .map(|(m, c)| {
                let shift = self.form_root_word(beta, &m.e);
                let mono = Monomial {
                    e: m.e.clone(),
                    k: &m.k + beta,
                    f: m.f.clone(),
                };
                (mono, c.mul_v_pow(2 * shift))
            })
            .collect()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        if a.is_empty() || b.is_empty() {
            return Element::zero();
        }
        if let Some(c) = a.as_scalar() {
            return b.scale(&c);
        }
        if let Some(c) = b.as_scalar() {
            return a.scale(&c);
        }
        let left: Vec<(&Monomial, &Scalar)> = a.terms().collect();
        let right: Vec<(&Monomial, &Scalar)> = b.terms().collect();
        let chunk = |rows: &[(&Monomial, &Scalar)]| {
            let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
            for (m1, c1) in rows {
                for (m2, c2) in &right {
                    let c12 = *c1 * *c2;
                    for (m, s) in self.mul_monomials(m1, m2).iter() {
                        let term = if s.is_one() { c12.clone() } else { &c12 * s };
                        accumulate(&mut acc, m.clone(), term);
                    }
                }
            }
            acc
        };
        if left.len() * right.len() < PARALLEL_THRESHOLD {
            return chunk(&left).into_iter().collect();
        }
        let parts: Vec<HashMap<Monomial, Scalar>> = left.par_chunks(4).map(chunk).collect();
        let mut total: HashMap<Monomial, Scalar> = HashMap::new();
        for part in parts {
            for (m, c) in part {
                accumulate(&mut total, m, c);
            }
        }
        total.into_iter().collect()
    }

    /// Product of a sequence; the empty product is `1`.
    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(&self, factors: I) -> Element {
        factors
            .into_iter()
            .fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, x: &Element, n: u32) -> Element {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// `xy - c yx`.
    pub fn q_commutator(&self, x: &Element, y: &Element, c: &Scalar) -> Element {
        &self.mul(x, y) - &self.mul(y, x).scale(c)
    }

    /// Product of two normal-ordered monomials, again in normal order.
    pub fn mul_monomials(&self, m1: &Monomial, m2: &Monomial) -> Straightened {
        if m1.f.is_empty() || m2.e.is_empty() {
            let shift = self.form_root_word(&m1.k, &m2.e) + self.form_root_word(&m2.k, &m1.f);
            let mut e = m1.e.clone();
            e.extend_from_slice(&m2.e);
            let mut f = m1.f.clone();
            f.extend_from_slice(&m2.f);
            let mono = Monomial {
                e,
                k: &m1.k + &m2.k,
                f,
            };
            return Arc::new(vec![(mono, Scalar::v_pow(2 * shift))]);
        }
        let mid = self.straighten(&m1.f, &m2.e);
        let out: Vec<(Monomial, Scalar)> = mid
            .iter()
            .map(|(m, c)| {
                let shift =
                    self.form_root_word(&m1.k, &m.e) + self.form_root_word(&m2.k, &m.f);
                let mut e = m1.e.clone();
                e.extend_from_slice(&m.e);
                let mut f = m.f.clone();
                f.extend_from_slice(&m2.f);
                let k = &(&m1.k + &m.k) + &m2.k;
                (Monomial { e, k, f }, c.mul_v_pow(2 * shift))
            })
            .collect();
        Arc::new(out)
    }

    /// Normal form of `F_b E_c`.
    pub fn straighten(&self, b: &[u8], c: &[u8]) -> Straightened {
        let n = self.rank();
        if b.is_empty() || c.is_empty() {
            let mono = Monomial {
                e: c.to_vec(),
                k: RootVector::zero(n),
                f: b.to_vec(),
            };
            return Arc::new(vec![(mono, Scalar::one())]);
        }
        let key = (b.to_vec(), c.to_vec());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let f = *b.last().unwrap() as usize;
        let rest = &b[..b.len() - 1];
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        // F_rest E_c F_f
        for (m, s) in self.straighten(rest, c).iter() {
            let mut fw = m.f.clone();
            fw.push(f as u8);
            let mono = Monomial {
                e: m.e.clone(),
                k: m.k.clone(),
                f: fw,
            };
            accumulate(&mut acc, mono, s.clone());
        }
        // F_f E_c = E_c F_f - sum_p E_{c<p} (K_f - K_f^{-1})/(q_f - q_f^{-1}) E_{c>p}
        let alpha_f = self.datum.simple(f);
        let coef = -self.qdiff_inv[f].clone();
        for p in 0..c.len() {
            if c[p] as usize != f {
                continue;
            }
            let d = self.form_word(f, &c[p + 1..]);
            let mut removed = c.to_vec();
            removed.remove(p);
            let inner = self.straighten(rest, &removed);
            for sign in [1i64, -1] {
                let beta = alpha_f.scaled(sign);
                for (m, s) in inner.iter() {
                    let shift = sign * d + sign * self.form_word(f, &m.f);
                    let mut term = (&coef * s).mul_v_pow(2 * shift);
                    if sign < 0 {
                        term = -term;
                    }
                    let mono = Monomial {
                        e: m.e.clone(),
                        k: &m.k + &beta,
                        f: m.f.clone(),
                    };
                    accumulate(&mut acc, mono, term);
                }
            }
        }
        let mut out: Vec<(Monomial, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|x, y| x.0.cmp(&y.0));
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    /// `ad(E_i)(x) = E_i x - K_i x K_i^{-1} E_i`.
    pub fn adjoint_e(&self, i: usize, x: &Element) -> Element {
        let ai = self.datum.simple(i);
        let conj = self.mul_k_right(&self.mul_k_left(&ai, x), &(-&ai));
        &self.mul(&self.e(i), x) - &self.mul(&conj, &self.e(i))
    }

    /// `F_ij(x, y) = sum_n (-1)^n [1 - a_ij choose n]_{q_i} x^{1-a_ij-n} y x^n`.
    pub fn serre_polynomial(&self, i: usize, j: usize, x: &Element, y: &Element) -> Element {
        let m = 1 - self.datum.a(i, j);
        let eps = self.datum.eps(i);
        let powers: Vec<Element> = {
            let mut v = vec![self.one()];
            for _ in 0..m {
                let next = self.mul(v.last().unwrap(), x);
                v.push(next);
            }
            v
        };
        let mut out = Element::zero();
        for n in 0..=m {
            let mut c = qbinom(m, n, eps);
            if n % 2 == 1 {
                c = -c;
            }
            let term = self.mul(&self.mul(&powers[(m - n) as usize], y), &powers[n as usize]);
            out += &term.scale(&c);
        }
        out
    }
}

pub(crate) fn accumulate(acc: &mut HashMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::hash_map::Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
        }
    }
}
