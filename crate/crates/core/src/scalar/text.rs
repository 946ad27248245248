//! Text form of scalars.
//!
//! Printing produces sums of `coeff*v^k` terms in ascending exponent, with
//! non-polynomial values written `(num)/(den)`. Parsing accepts any
//! arithmetic expression over integers, `i`, `v` and `q` (with `q = v^2`)
//! built from `+ - * / ^` and parentheses, so every printed form reads back
//! to the same value.

use num_traits::One;
use thiserror::Error;

use super::{Gauss, LaurentPoly, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse scalar at byte {pos}: {msg}")]
pub struct ParseScalarError {
    pub pos: usize,
    pub msg: String,
}

pub(crate) fn format_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms().enumerate() {
        let term = format_term(c, e);
        if idx == 0 {
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    out
}

fn format_term(c: &Gauss, e: i32) -> String {
    let base = match e {
        0 => return c.to_string(),
        1 => "v".to_string(),
        _ => format!("v^{e}"),
    };
    if c.is_one() {
        base
    } else if c.is_real() && (-c.clone()).is_one() {
        format!("-{base}")
    } else {
        format!("{c}*{base}")
    }
}

pub(crate) fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        format_poly(s.numer())
    } else {
        format!("({})/({})", format_poly(s.numer()), format_poly(s.denom()))
    }
}

/// True when the printed form is a single signed factor, safe to juxtapose
/// with `*` without parentheses.
pub(crate) fn is_atomic(s: &Scalar) -> bool {
    s.denom().is_one() && s.numer().len() <= 1
}

pub(crate) fn parse_scalar(s: &str) -> Result<Scalar, ParseScalarError> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ParseScalarError {
        ParseScalarError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                if rhs.is_zero() {
                    return Err(self.err("division by zero"));
                }
                acc = &acc / &rhs;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ParseScalarError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ParseScalarError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.exponent()?;
            if base.is_zero() && exp < 0 {
                return Err(self.err("negative power of zero"));
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64, ParseScalarError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(if neg { -n } else { n });
        }
        let neg = self.eat(b'-');
        let n = self.integer()?;
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<i64, ParseScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<Scalar, ParseScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Scalar::i())
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(Scalar::v_pow(1))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(Scalar::q_pow(1))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: num_bigint::BigInt = digits.parse().unwrap();
                let r = num_rational::BigRational::from_integer(n);
                Ok(Scalar::from_gauss(Gauss::new(
                    r,
                    num_rational::BigRational::from_integer(0.into()),
                )))
            }
            _ => Err(self.err("expected number, 'i', 'v', 'q' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_and_parses_polynomials() {
        let s: Scalar = "q + q^-1".parse().unwrap();
        assert_eq!(s.to_string(), "v^-2 + v^2");
        let t: Scalar = "(1 - q^2)/(1 - q^4)".parse().unwrap();
        assert_eq!(t.to_string(), "(1)/(1 + v^4)");
        let u: Scalar = "(1/2+3*i)*v^3 - 2/3".parse().unwrap();
        assert_eq!(u.to_string(), "-2/3 + (1/2+3*i)*v^3");
        assert_eq!(u.to_string().parse::<Scalar>().unwrap(), u);
        let w: Scalar = "-i*v - v^(-4)".parse().unwrap();
        assert_eq!(w.to_string(), "-v^-4 - i*v");
    }

    #[test]
    fn rejects_garbage() {
        assert!("1 +".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("(1".parse::<Scalar>().is_err());
    }

    #[test]
    fn atomic_forms() {
        assert!(is_atomic(&Scalar::from_int(-3)));
        assert!(is_atomic(&Scalar::q_pow(2)));
        assert!(!is_atomic(&"1 + v".parse().unwrap()));
        assert!(!is_atomic(&"1/(1 + v)".parse().unwrap()));
    }
}
