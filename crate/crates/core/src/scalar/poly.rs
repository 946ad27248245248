use num_traits::{One, Zero};

use super::gauss::Gauss;

/// Laurent polynomial `sum_k coeffs[k] * v^(low + k)` over the Gaussian
/// rationals.
///
/// Invariant: either `coeffs` is empty (the zero polynomial, with `low == 0`)
/// or both its first and last entries are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Gauss>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Gauss::one(), 0)
    }

    pub fn monomial(c: Gauss, exp: i32) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, Gauss)>>(terms: I) -> Self {
        let terms: Vec<(i32, Gauss)> = terms.into_iter().collect();
        if terms.is_empty() {
            return LaurentPoly::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Gauss::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += &c;
        }
        LaurentPoly::from_raw(lo, coeffs)
    }

    pub(crate) fn from_raw(low: i32, mut coeffs: Vec<Gauss>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return LaurentPoly::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
        }
        LaurentPoly {
            low: low + lead_zeros as i32,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest exponent present; `None` for zero.
    pub fn high(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.low + self.coeffs.len() as i32 - 1)
        }
    }

    pub fn coeffs(&self) -> &[Gauss] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Gauss)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    pub fn lead(&self) -> Option<&Gauss> {
        self.coeffs.last()
    }

    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub(crate) fn shift_in_place(&mut self, k: i32) {
        if !self.is_zero() {
            self.low += k;
        }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Gauss) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Substitution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly {
            low: -self.high().unwrap(),
            coeffs,
        }
    }

    /// Complex conjugation of every coefficient.
    pub fn conj(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(Gauss::conj).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { other.neg() } else { other.clone() };
        }
        let lo = self.low.min(other.low);
        let hi = self.high().unwrap().max(other.high().unwrap());
        let mut coeffs = vec![Gauss::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + k] = c.clone();
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - lo) as usize + k];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        LaurentPoly::from_raw(lo, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        if self.coeffs.len() == 1 {
            return other.scale(&self.coeffs[0]).shift(self.low);
        }
        if other.coeffs.len() == 1 {
            return self.scale(&other.coeffs[0]).shift(other.low);
        }
        let mut coeffs = vec![Gauss::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                coeffs[a + b] += &(x * y);
            }
        }
        LaurentPoly::from_raw(self.low + other.low, coeffs)
    }

    /// Division with remainder of ordinary polynomials; both operands are
    /// read with their exponents as given, and must have `low >= 0`.
    pub(crate) fn divrem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        debug_assert!(self.low >= 0 && divisor.low >= 0);
        let num = self.dense_from_zero();
        let den = divisor.dense_from_zero();
        if num.len() < den.len() {
            return (LaurentPoly::zero(), self.clone());
        }
        let lead_inv = den.last().unwrap().inv().unwrap();
        let mut rem = num;
        let mut quot = vec![Gauss::zero(); rem.len() - den.len() + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + den.len() - 1];
            if top.is_zero() {
                continue;
            }
            let factor = top * &lead_inv;
            for (j, d) in den.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &(&factor * d);
                }
            }
            quot[k] = factor;
        }
        rem.truncate(den.len() - 1);
        (LaurentPoly::from_raw(0, quot), LaurentPoly::from_raw(0, rem))
    }

    fn dense_from_zero(&self) -> Vec<Gauss> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut out = vec![Gauss::zero(); self.low as usize];
        out.extend(self.coeffs.iter().cloned());
        out
    }

    /// Monic gcd of two polynomials after shifting each to `low == 0`. Powers
    /// of `v` are therefore never part of the result.
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let mut a = self.shift(-self.low);
        let mut b = other.shift(-other.low);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.len() == 1 {
                return LaurentPoly::one();
            }
            let (_, r) = a.divrem(&b);
            let r = r.shift(-r.low);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Exact quotient of `self` by a polynomial with nonzero constant term.
    pub(crate) fn div_exact(&self, divisor: &Self) -> Self {
        if divisor.len() == 1 {
            let inv = divisor.coeffs[0].inv().unwrap();
            return self.scale(&inv).shift(-divisor.low);
        }
        let shift = self.low;
        let (q, r) = self.shift(-shift).divrem(&divisor.shift(-divisor.low));
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q.shift(shift - divisor.low)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}
