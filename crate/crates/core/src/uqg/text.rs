//! Text form of elements.
//!
//! A monomial prints as `E[1,2] K{1:-1,3:2} F[3]` using node labels, with empty
//! parts omitted, and a term as `coeff*monomial` (coefficients that are not a
//! single signed factor are parenthesized). Parsing evaluates any expression
//! built from scalars, generators, `+ - * / ^` and parentheses inside the
//! algebra, so printed forms read back to the identical element.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cartan::RootVector;
use crate::scalar::{Gauss, Scalar};

use super::{Algebra, Element, Monomial, UqgError};

impl Algebra {
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let datum = self.datum();
        let mut parts = Vec::new();
        let letters = |w: &[u8]| {
            w.iter()
                .map(|&l| datum.label(l as usize).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if !m.e.is_empty() {
            parts.push(format!("E[{}]", letters(&m.e)));
        }
        if !m.k.is_zero() {
            let entries: Vec<String> = m
                .k
                .iter()
                .enumerate()
                .filter(|(_, &n)| n != 0)
                .map(|(i, n)| format!("{}:{}", datum.label(i), n))
                .collect();
            parts.push(format!("K{{{}}}", entries.join(",")));
        }
        if !m.f.is_empty() {
            parts.push(format!("F[{}]", letters(&m.f)));
        }
        parts.join(" ")
    }

    pub fn format(&self, x: &Element) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in x.terms().enumerate() {
            let term = self.format_term(m, c);
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

    fn format_term(&self, m: &Monomial, c: &Scalar) -> String {
        if m.is_one() {
            let s = c.to_string();
            return if crate::scalar::is_atomic(c) {
                s
            } else {
                format!("({s})")
            };
        }
        let mono = self.format_monomial(m);
        if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else if crate::scalar::is_atomic(c) {
            format!("{c}*{mono}")
        } else {
            format!("({c})*{mono}")
        }
    }

    /// Parses an element expression; see the module documentation.
    pub fn parse(&self, src: &str) -> Result<Element, UqgError> {
        let mut p = Parser {
            alg: self,
            src: src.as_bytes(),
            pos: 0,
        };
        let value = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(value)
    }
}

struct Parser<'a> {
    alg: &'a Algebra,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> UqgError {
        UqgError::Parse {
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

    fn expect(&mut self, c: u8) -> Result<(), UqgError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Element, UqgError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element, UqgError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.unary()?;
                acc = self.alg.mul(&acc, &rhs);
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                let s = rhs.as_scalar().ok_or(UqgError::DivisionByNonScalar)?;
                let inv = s.inv().ok_or_else(|| self.err("division by zero"))?;
                acc = acc.scale(&inv);
            } else if matches!(self.peek(), Some(b'E' | b'K' | b'F')) {
                let rhs = self.power()?;
                acc = self.alg.mul(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Element, UqgError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Element, UqgError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let exp = self.exponent()?;
        if exp >= 0 {
            return Ok(self.alg.pow(&base, exp as u32));
        }
        let s = base.as_scalar().ok_or(UqgError::DivisionByNonScalar)?;
        if s.is_zero() {
            return Err(self.err("negative power of zero"));
        }
        Ok(self.alg.scalar(s.pow(exp)))
    }

    fn exponent(&mut self) -> Result<i64, UqgError> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let n = self.integer()?;
        if paren {
            self.expect(b')')?;
        }
        Ok(if neg { -n } else { n })
    }

    fn integer(&mut self) -> Result<i64, UqgError> {
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

    fn signed_integer(&mut self) -> Result<i64, UqgError> {
        let neg = self.eat(b'-');
        let n = self.integer()?;
        Ok(if neg { -n } else { n })
    }

    fn node(&mut self) -> Result<usize, UqgError> {
        let label = self.signed_integer()?;
        self.alg
            .datum()
            .index_of(label)
            .map_err(|_| UqgError::UnknownLabel(label))
    }

    fn word(&mut self) -> Result<Vec<u8>, UqgError> {
        self.expect(b'[')?;
        let mut w = Vec::new();
        if self.eat(b']') {
            return Ok(w);
        }
        loop {
            w.push(self.node()? as u8);
            if self.eat(b']') {
                return Ok(w);
            }
            self.expect(b',')?;
        }
    }

    fn atom(&mut self) -> Result<Element, UqgError> {
        let alg = self.alg;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'E') => {
                self.pos += 1;
                Ok(alg.e_word(&self.word()?))
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(alg.f_word(&self.word()?))
            }
            Some(b'K') => {
                self.pos += 1;
                self.expect(b'{')?;
                let mut beta = RootVector::zero(alg.rank());
                if !self.eat(b'}') {
                    loop {
                        let i = self.node()?;
                        self.expect(b':')?;
                        beta[i] += self.signed_integer()?;
                        if self.eat(b'}') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(alg.k(&beta))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(alg.scalar(Scalar::i()))
            }
            Some(b'v') => {
                self.pos += 1;
                Ok(alg.scalar(Scalar::v_pow(1)))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(alg.scalar(Scalar::q_pow(1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = digits.parse().unwrap();
                let g = Gauss::new(BigRational::from_integer(n), BigRational::from_integer(0.into()));
                Ok(alg.scalar(Scalar::from_gauss(g)))
            }
            _ => Err(self.err("expected number, generator, 'i', 'v', 'q' or '('")),
        }
    }
}
