//! Deciding whether an element of `U_q(g)` (or of a tensor power) vanishes.
//!
//! After straightening, terms are grouped by the degrees of their words and
//! their K-parts; distinct groups are linearly independent by the triangular
//! decomposition. Inside a group each word slot is paired against the
//! functionals `D_u = eps o {}_{u_n}r o ... o {}_{u_1}r` for all words `u` of
//! the same degree (F-words are first sent to E-words by `omega`, which keeps
//! the letters). These functionals separate points of `U^+_gamma` because
//! the bilinear pairing they define is nondegenerate on `U^+`, so the group
//! vanishes exactly when every contraction does.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cartan::RootVector;
use crate::scalar::{Gauss, LaurentPoly, Scalar};

use super::{Algebra, Element, Tensor, UqgError, Word};

/// Laurent polynomial in `v` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPoly {
    low: i32,
    coeffs: Vec<i128>,
}

impl IntPoly {
    fn one() -> Self {
        IntPoly {
            low: 0,
            coeffs: vec![1],
        }
    }

    fn add_shifted(&mut self, other: &IntPoly, shift: i32) {
        if other.coeffs.is_empty() {
            return;
        }
        let olow = other.low + shift;
        if self.coeffs.is_empty() {
            self.low = olow;
            self.coeffs = other.coeffs.clone();
            return;
        }
        let lo = self.low.min(olow);
        let hi = (self.low + self.coeffs.len() as i32).max(olow + other.coeffs.len() as i32);
        if lo < self.low || hi > self.low + self.coeffs.len() as i32 {
            let mut grown = vec![0i128; (hi - lo) as usize];
            let off = (self.low - lo) as usize;
            grown[off..off + self.coeffs.len()].copy_from_slice(&self.coeffs);
            self.coeffs = grown;
            self.low = lo;
        }
        let off = (olow - self.low) as usize;
        for (k, c) in other.coeffs.iter().enumerate() {
            self.coeffs[off + k] += c;
        }
    }

    fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(
            |(k, &c)| {
                (
                    self.low + k as i32,
                    Gauss::new(
                        BigRational::from_integer(BigInt::from(c)),
                        BigRational::zero(),
                    ),
                )
            },
        ))
    }
}

/// All values `D_u(w)` for a fixed word `w`, keyed by `u`.
pub type DVector = HashMap<Word, IntPoly>;

const DCACHE_ENTRIES: usize = 2_000_000;

impl Algebra {
    /// `D_u(w)` for every word `u`, where `w` is read as an element of `U^+`.
    pub fn d_vector(&self, w: &[u8]) -> Arc<DVector> {
        self.d_vectors(&[w]).pop().unwrap()
    }

    /// D-vectors of several words, sharing the work on common subwords.
    pub fn d_vectors(&self, words: &[&[u8]]) -> Vec<Arc<DVector>> {
        let mut memo: HashMap<Word, Arc<DVector>> = HashMap::new();
        let mut out = Vec::with_capacity(words.len());
        for &w in words {
            if let Some(hit) = self.dcache.lock().unwrap().0.get(w) {
                out.push(hit.clone());
                continue;
            }
            let v = self.d_vector_rec(w, &mut memo);
            let mut guard = self.dcache.lock().unwrap();
            let (cache, held) = &mut *guard;
            if *held + v.len() > DCACHE_ENTRIES {
                cache.clear();
                *held = 0;
            }
            if cache.insert(w.to_vec(), v.clone()).is_none() {
                *held += v.len();
            }
            out.push(v);
        }
        out
    }

    fn d_vector_rec(&self, w: &[u8], memo: &mut HashMap<Word, Arc<DVector>>) -> Arc<DVector> {
        if w.is_empty() {
            let mut v = DVector::new();
            v.insert(Vec::new(), IntPoly::one());
            return Arc::new(v);
        }
        if let Some(hit) = memo.get(w) {
            return hit.clone();
        }
        // {}_i r deletes one letter i, weighted by q^{(alpha_i, letters to its left)}.
        let mut out = DVector::new();
        let mut left_form = vec![0i64; self.rank()];
        for p in 0..w.len() {
            let i = w[p] as usize;
            let shift = 2 * left_form[i] as i32;
            let mut rest = w.to_vec();
            rest.remove(p);
            let sub = self.d_vector_rec(&rest, memo);
            for (u, poly) in sub.iter() {
                let mut key = Vec::with_capacity(u.len() + 1);
                key.push(i as u8);
                key.extend_from_slice(u);
                out.entry(key).or_default().add_shifted(poly, shift);
            }
            for (j, lf) in left_form.iter_mut().enumerate() {
                *lf += self.sym(j, i);
            }
        }
        let out = Arc::new(out);
        memo.insert(w.to_vec(), out.clone());
        out
    }

    /// Decides whether `x = 0` in `U_q(g)`.
    pub fn is_zero(&self, x: &Element) -> Result<bool, UqgError> {
        let terms = x.terms().map(|(m, c)| {
            (
                vec![m.e.clone(), m.f.clone()],
                vec![m.k.clone()],
                c.clone(),
            )
        });
        self.vanishes(terms)
    }

    /// Decides `a = b` in `U_q(g)`.
    pub fn equals(&self, a: &Element, b: &Element) -> Result<bool, UqgError> {
        self.is_zero(&(a - b))
    }

    /// Decides whether a tensor vanishes in `U_q(g)^{otimes n}`.
    pub fn tensor_is_zero(&self, t: &Tensor) -> Result<bool, UqgError> {
        let terms = t.terms().map(|(ms, c)| {
            let mut words = Vec::with_capacity(2 * ms.len());
            let mut ks = Vec::with_capacity(ms.len());
            for m in ms {
                words.push(m.e.clone());
                words.push(m.f.clone());
                ks.push(m.k.clone());
            }
            (words, ks, c.clone())
        });
        self.vanishes(terms)
    }

    fn vanishes<I>(&self, terms: I) -> Result<bool, UqgError>
    where
        I: Iterator<Item = (Vec<Word>, Vec<RootVector>, Scalar)>,
    {
        type Key = (Vec<RootVector>, Vec<RootVector>);
        let mut buckets: BTreeMap<Key, Vec<(Vec<Word>, Scalar)>> = BTreeMap::new();
        let n = self.rank();
        for (words, ks, c) in terms {
            let degrees = words
                .iter()
                .map(|w| super::monomial::word_degree(n, w))
                .collect();
            buckets.entry((degrees, ks)).or_default().push((words, c));
        }
        for (_, group) in buckets {
            if !self.bucket_vanishes(group)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn bucket_vanishes(&self, group: Vec<(Vec<Word>, Scalar)>) -> Result<bool, UqgError> {
        // Clear denominators so that all further arithmetic is polynomial.
        let mut lcm = LaurentPoly::one();
        for (_, c) in &group {
            let d = c.denom();
            if !d.is_one() {
                let g = lcm.gcd(d);
                lcm = lcm.mul(&d.div_exact(&g));
            }
        }
        let terms: Vec<(Vec<Word>, LaurentPoly)> = group
            .into_iter()
            .map(|(w, c)| {
                let factor = lcm.div_exact(c.denom());
                (w, c.numer().mul(&factor))
            })
            .collect();
        self.contract(terms)
    }

    fn contract(&self, terms: Vec<(Vec<Word>, LaurentPoly)>) -> Result<bool, UqgError> {
        if terms.is_empty() {
            return Ok(true);
        }
        if terms[0].0.is_empty() {
            let total = terms
                .iter()
                .fold(LaurentPoly::zero(), |acc, (_, c)| acc.add(c));
            return Ok(total.is_zero());
        }
        let first = &terms[0].0[0];
        if terms.iter().all(|(w, _)| &w[0] == first) {
            // A common word only scales every contraction by the same nonzero
            // polynomial D_u(first) for suitable u.
            let rest = merge(terms.into_iter().map(|(mut w, c)| {
                w.remove(0);
                (w, c)
            }));
            return self.contract(rest);
        }
        let mut distinct: Vec<&Word> = terms.iter().map(|(w, _)| &w[0]).collect();
        distinct.sort();
        distinct.dedup();
        let slices: Vec<&[u8]> = distinct.iter().map(|w| w.as_slice()).collect();
        let vectors = self.d_vectors(&slices);
        let index: HashMap<&Word, usize> = distinct.iter().enumerate().map(|(k, w)| (*w, k)).collect();
        let evaluations: usize = terms.iter().map(|(w, _)| vectors[index[&w[0]]].len()).sum();
        if evaluations > self.max_bucket() {
            return Err(UqgError::BucketTooLarge {
                evaluations,
                limit: self.max_bucket(),
            });
        }
        // One functional at a time keeps memory proportional to the D-vectors.
        let mut keys: Vec<&Word> = vectors.iter().flat_map(|v| v.keys()).collect();
        keys.sort();
        keys.dedup();
        let keys = match self.spanning_rows(&keys, &vectors, first) {
            Some(rows) => rows,
            None => keys,
        };
        for u in keys {
            let mut rest: HashMap<Vec<Word>, LaurentPoly> = HashMap::new();
            for (words, c) in &terms {
                let Some(p) = vectors[index[&words[0]]].get(u) else {
                    continue;
                };
                let value = c.mul(&p.to_laurent());
                match rest.get_mut(&words[1..]) {
                    Some(acc) => *acc = acc.add(&value),
                    None => {
                        rest.insert(words[1..].to_vec(), value);
                    }
                }
            }
            let next: Vec<(Vec<Word>, LaurentPoly)> =
                rest.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !self.contract(next)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

const PRIME: u64 = (1 << 61) - 1;
const POINT: u64 = 1_000_003;
const CANDIDATE_BATCH: usize = 64;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut out = 1;
    while e > 0 {
        if e & 1 == 1 {
            out = mul_mod(out, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    out
}

/// Value of an integer Laurent polynomial at `v = POINT` modulo `PRIME`.
fn eval_mod(p: &IntPoly, inv: u64) -> u64 {
    let base = if p.low < 0 { inv } else { POINT };
    let mut power = pow_mod(base, p.low.unsigned_abs() as u64);
    let mut out = 0u64;
    for &c in &p.coeffs {
        let c = c.rem_euclid(PRIME as i128) as u64;
        out = (out + mul_mod(c, power)) % PRIME;
        power = mul_mod(power, POINT);
    }
    out
}

/// Number of ways to write `gamma` as a sum of the given positive roots.
fn partitions(gamma: &RootVector, roots: &[RootVector], k: usize, memo: &mut HashMap<(RootVector, usize), u128>) -> u128 {
    if gamma.is_zero() {
        return 1;
    }
    if k == roots.len() {
        return 0;
    }
    if let Some(&hit) = memo.get(&(gamma.clone(), k)) {
        return hit;
    }
    let mut total = 0;
    let mut rest = gamma.clone();
    loop {
        total += partitions(&rest, roots, k + 1, memo);
        let next = RootVector(rest.iter().zip(roots[k].iter()).map(|(a, b)| a - b).collect());
        if next.iter().any(|&x| x < 0) {
            break;
        }
        rest = next;
    }
    memo.insert((gamma.clone(), k), total);
    total
}

impl Algebra {
    /// Words `u` whose functionals `D_u` separate the span of the given
    /// D-vectors, or `None` when no such subset can be certified.
    ///
    /// Rows are picked by elimination at one point modulo a prime. A nonzero
    /// minor there is nonzero over `Q(v)`. So the picked rows span once their
    /// rank reaches the number of columns, or `dim U^+_gamma` in finite type;
    /// in the latter case further words of the same degree are added as
    /// columns until the columns span `U^+_gamma`.
    fn spanning_rows<'a>(&self, keys: &[&'a Word], vectors: &[Arc<DVector>], sample: &[u8]) -> Option<Vec<&'a Word>> {
        let m = vectors.len();
        if keys.len() <= m {
            return None;
        }
        let inv = pow_mod(POINT, PRIME - 2);
        let position: HashMap<&Word, usize> = keys.iter().enumerate().map(|(k, u)| (*u, k)).collect();
        let column = |v: &DVector| -> Vec<u64> {
            let mut col = vec![0u64; keys.len()];
            for (u, p) in v {
                if let Some(&k) = position.get(u) {
                    col[k] = eval_mod(p, inv);
                }
            }
            col
        };
        let mut columns = Echelon::default();
        for v in vectors {
            columns.insert(column(v));
        }
        let mut target = columns.rank();
        if target < m {
            let roots = self.datum().positive_roots(&(0..self.rank()).collect::<Vec<_>>()).ok()?;
            let gamma = super::monomial::word_degree(self.rank(), sample);
            let dim = usize::try_from(partitions(&gamma, &roots, 0, &mut HashMap::new())).ok()?;
            for words in root_word_candidates(&roots, &gamma) {
                if columns.rank() == dim {
                    break;
                }
                let slices: Vec<&[u8]> = words.iter().map(|w| w.as_slice()).collect();
                for v in self.d_vectors(&slices) {
                    columns.insert(column(&v));
                }
            }
            // A stride coprime to the key count spreads candidates over the
            // whole degree instead of one block of similar words.
            let n = keys.len();
            let mut stride = n / 2 + 1;
            while gcd(stride, n) != 1 {
                stride += 1;
            }
            let order: Vec<&[u8]> = (0..n).map(|k| keys[k * stride % n].as_slice()).collect();
            for batch in order.chunks(CANDIDATE_BATCH) {
                if columns.rank() == dim {
                    break;
                }
                for v in self.d_vectors(batch) {
                    if columns.rank() == dim {
                        break;
                    }
                    columns.insert(column(&v));
                }
            }
            if columns.rank() != dim {
                return None;
            }
            target = dim;
        }
        // Rows of the column basis, read off one word `u` at a time.
        let mut rows = Echelon::default();
        let mut chosen = Vec::new();
        for (k, &u) in keys.iter().enumerate() {
            if rows.rank() == target {
                break;
            }
            let row: Vec<u64> = columns.vectors.iter().map(|c| c[k]).collect();
            if rows.insert(row) {
                chosen.push(u);
            }
        }
        (rows.rank() == target).then_some(chosen)
    }
}

/// Candidate spanning sets of words of degree `gamma`: one concatenation of
/// root words per multiset of positive roots, where the word of a root is
/// the extreme Lyndon concatenation of the words of two smaller roots.
fn root_word_candidates(roots: &[RootVector], gamma: &RootVector) -> Vec<Vec<Word>> {
    let mut sorted: Vec<&RootVector> = roots.iter().collect();
    sorted.sort_by_key(|r| r.height());
    let mut sets = Vec::new();
    for take_max in [true, false] {
        let mut words: HashMap<&RootVector, Word> = HashMap::new();
        for &beta in &sorted {
            if beta.height() == 1 {
                let i = beta.iter().position(|&c| c == 1).unwrap();
                words.insert(beta, vec![i as u8]);
                continue;
            }
            let mut best: Option<Word> = None;
            for (&b1, w1) in &words {
                let b2 = RootVector(beta.iter().zip(b1.iter()).map(|(a, b)| a - b).collect());
                let Some(w2) = words.get(&b2) else {
                    continue;
                };
                if w1 >= w2 {
                    continue;
                }
                let w: Word = w1.iter().chain(w2).copied().collect();
                let better = match &best {
                    None => true,
                    Some(b) => (w > *b) == take_max,
                };
                if better {
                    best = Some(w);
                }
            }
            if let Some(w) = best {
                words.insert(beta, w);
            }
        }
        let mut multisets = Vec::new();
        root_multisets(gamma, &sorted, 0, &mut Vec::new(), &mut multisets);
        for decreasing in [true, false] {
            let mut set = Vec::with_capacity(multisets.len());
            for ms in &multisets {
                let mut parts: Vec<&Word> = ms.iter().filter_map(|b| words.get(b)).collect();
                if parts.len() != ms.len() {
                    continue;
                }
                parts.sort();
                if decreasing {
                    parts.reverse();
                }
                set.push(parts.into_iter().flatten().copied().collect());
            }
            sets.push(set);
        }
    }
    sets
}

fn root_multisets<'a>(
    gamma: &RootVector,
    roots: &[&'a RootVector],
    k: usize,
    current: &mut Vec<&'a RootVector>,
    out: &mut Vec<Vec<&'a RootVector>>,
) {
    if gamma.is_zero() {
        out.push(current.clone());
        return;
    }
    if k == roots.len() {
        return;
    }
    root_multisets(gamma, roots, k + 1, current, out);
    let rest = RootVector(gamma.iter().zip(roots[k].iter()).map(|(a, b)| a - b).collect());
    if rest.iter().all(|&x| x >= 0) {
        current.push(roots[k]);
        root_multisets(&rest, roots, k, current, out);
        current.pop();
    }
}

/// Reduced vectors over the prime field, each with a unit at its pivot and
/// zeros at the pivots of the others inserted before it.
#[derive(Default)]
struct Echelon {
    pivots: Vec<usize>,
    vectors: Vec<Vec<u64>>,
}

impl Echelon {
    fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Adds `x` if it is independent of the vectors held so far.
    fn insert(&mut self, mut x: Vec<u64>) -> bool {
        for (pivot, b) in self.pivots.iter().zip(&self.vectors) {
            let f = x[*pivot];
            if f != 0 {
                for (a, y) in x.iter_mut().zip(b) {
                    if *y != 0 {
                        *a = (*a + PRIME - mul_mod(f, *y)) % PRIME;
                    }
                }
            }
        }
        let Some(pivot) = x.iter().position(|&a| a != 0) else {
            return false;
        };
        let scale = pow_mod(x[pivot], PRIME - 2);
        for a in x.iter_mut() {
            *a = mul_mod(*a, scale);
        }
        self.pivots.push(pivot);
        self.vectors.push(x);
        true
    }
}

fn merge<I: Iterator<Item = (Vec<Word>, LaurentPoly)>>(it: I) -> Vec<(Vec<Word>, LaurentPoly)> {
    let mut acc: HashMap<Vec<Word>, LaurentPoly> = HashMap::new();
    for (w, c) in it {
        match acc.get_mut(&w) {
            Some(x) => *x = x.add(&c),
            None => {
                acc.insert(w, c);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}
