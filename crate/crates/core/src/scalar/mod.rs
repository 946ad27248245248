//! Exact arithmetic in the field `Q(i)(v)`, where `v = q^{1/2}`.
//!
//! A [`Scalar`] is stored as a reduced fraction of Laurent polynomials. The
//! denominator is a genuine polynomial with nonzero constant term and leading
//! coefficient one, so two scalars are equal exactly when their stored forms
//! are equal.

mod gauss;
mod poly;
mod qcomb;
mod text;

pub(crate) use text::is_atomic;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub use gauss::Gauss;
pub use poly::LaurentPoly;
pub use qcomb::{qbinom, qfactorial, qint, qshifted_factorial};
pub use text::ParseScalarError;

use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_poly(LaurentPoly::monomial(Gauss::from_int(n), 0))
    }

    pub fn from_gauss(c: Gauss) -> Self {
        Scalar::from_poly(LaurentPoly::monomial(c, 0))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::from_gauss(Gauss::i())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Scalar {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    /// `v^k = q^{k/2}`.
    pub fn v_pow(k: i64) -> Self {
        Scalar::from_poly(LaurentPoly::monomial(Gauss::one(), k as i32))
    }

    /// `q^k = v^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Scalar::v_pow(2 * k)
    }

    /// Builds `num / den`, reducing to canonical form. Panics if `den` is zero.
    pub fn from_fraction(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Scalar::normalized(num, den)
    }

    fn normalized(mut num: LaurentPoly, mut den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        let shift = den.low();
        if shift != 0 {
            den.shift_in_place(-shift);
            num.shift_in_place(-shift);
        }
        if den.len() > 1 {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g);
                den = den.div_exact(&g);
            }
        }
        let lead = den.lead().unwrap();
        if !lead.is_one() {
            let inv = lead.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Scalar { num, den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// If this is `c * v^k`, returns `(c, k)`.
    pub fn as_monomial(&self) -> Option<(Gauss, i32)> {
        if self.den.is_one() && self.num.len() == 1 {
            Some((self.num.coeffs()[0].clone(), self.num.low()))
        } else {
            None
        }
    }

    /// Multiplies by `v^k`.
    pub fn mul_v_pow(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.num.shift_in_place(k as i32);
        out
    }

    pub fn scale_gauss(&self, c: &Gauss) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        let mut out = self.clone();
        out.num = out.num.scale(c);
        out
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self
                .inv()
                .expect("negative power of zero")
                .pow(-n);
        }
        let n = n as u32;
        // numerator and denominator stay coprime under powers
        Scalar {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }

    /// Field automorphism `v -> v^{-1}` fixing all Gaussian rationals.
    pub fn bar(&self) -> Self {
        if self.den.is_one() {
            return Scalar::from_poly(self.num.bar());
        }
        Scalar::normalized(self.num.bar(), self.den.bar())
    }

    pub fn is_bar_fixed(&self) -> bool {
        self.bar() == *self
    }

    fn add_impl(&self, other: &Scalar, negate: bool) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        let combine = |a: &LaurentPoly, b: &LaurentPoly| {
            if negate {
                a.sub(b)
            } else {
                a.add(b)
            }
        };
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(combine(&self.num, &other.num));
        }
        if self.den == other.den {
            return Scalar::normalized(combine(&self.num, &other.num), self.den.clone());
        }
        if other.den.is_one() {
            return Scalar::normalized(
                combine(&self.num, &other.num.mul(&self.den)),
                self.den.clone(),
            );
        }
        if self.den.is_one() {
            return Scalar::normalized(
                combine(&self.num.mul(&other.den), &other.num),
                other.den.clone(),
            );
        }
        let g = self.den.gcd(&other.den);
        if g.is_one() {
            let num = combine(&self.num.mul(&other.den), &other.num.mul(&self.den));
            Scalar::normalized(num, self.den.mul(&other.den))
        } else {
            let d1 = self.den.div_exact(&g);
            let d2 = other.den.div_exact(&g);
            let num = combine(&self.num.mul(&d2), &other.num.mul(&d1));
            Scalar::normalized(num, self.den.mul(&d2))
        }
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar::from_poly(self.num.mul(&other.num));
        }
        if other.den.is_one() && other.num.len() == 1 {
            let mut out = self.clone();
            out.num = out.num.mul(&other.num);
            return out;
        }
        if self.den.is_one() && self.num.len() == 1 {
            let mut out = other.clone();
            out.num = out.num.mul(&self.num);
            return out;
        }
        Scalar::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Gauss> for Scalar {
    fn from(c: Gauss) -> Self {
        Scalar::from_gauss(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_impl(rhs, false)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_impl(&rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_impl(rhs, true)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.add_impl(&rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_impl(&rhs)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.mul_impl(&rhs.inv().expect("division by zero scalar"))
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        &self / &rhs
    }
}

macro_rules! mixed_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }

        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    )*};
}

mixed_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = self.mul_impl(rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_scalar(self))
    }
}

impl std::str::FromStr for Scalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        text::parse_scalar(s)
    }
}

/// Serialized as its text form.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Accepts a string in the scalar grammar or a bare integer.
impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(n) => Ok(Scalar::from_int(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
