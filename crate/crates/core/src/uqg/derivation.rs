use crate::cartan::RootVector;

use super::{Algebra, Element, Monomial, UqgError};

impl Algebra {
    /// Splits `x = u K_gamma` with `u` in `U^+` homogeneous and a single
    /// K-part `gamma` shared by all terms.
    fn positive_part(&self, x: &Element) -> Result<(Element, RootVector), UqgError> {
        let mut gamma: Option<RootVector> = None;
        let mut degree: Option<RootVector> = None;
        let mut u = Element::zero();
        for (m, c) in x.terms() {
            if !m.f.is_empty() {
                return Err(UqgError::NotPositive);
            }
            match &gamma {
                None => gamma = Some(m.k.clone()),
                Some(g) if g != &m.k => return Err(UqgError::NotPositive),
                _ => {}
            }
            let d = m.e_degree();
            match &degree {
                None => degree = Some(d),
                Some(g) if g != &d => return Err(UqgError::NotHomogeneous),
                _ => {}
            }
            u.add_term(Monomial::e_word(self.rank(), &m.e), c.clone());
        }
        Ok((u, gamma.unwrap_or_else(|| RootVector::zero(self.rank()))))
    }

    /// The skew derivation `r_i` on `U^+`: each occurrence of the letter `i` is
    /// deleted with weight `q^{(alpha_i, letters to its right)}`. A common
    /// K-part on the right is carried along, `r_i(u K) = r_i(u) K`.
    pub fn skew_r(&self, i: usize, x: &Element) -> Result<Element, UqgError> {
        let (u, gamma) = self.positive_part(x)?;
        let mut out = Element::zero();
        for (m, c) in u.terms() {
            let w = &m.e;
            let mut right = 0i64;
            for p in (0..w.len()).rev() {
                if w[p] as usize == i {
                    let mut rest = w.clone();
                    rest.remove(p);
                    let mono = Monomial {
                        e: rest,
                        k: gamma.clone(),
                        f: Vec::new(),
                    };
                    out.add_term(mono, c.mul_v_pow(2 * right));
                }
                right += self.sym(i, w[p] as usize);
            }
        }
        Ok(out)
    }

    /// The skew derivation `{}_i r = sigma o r_i o sigma` on `U^+`, with a
    /// common right K-part carried along as for [`Algebra::skew_r`].
    pub fn skew_ir(&self, i: usize, x: &Element) -> Result<Element, UqgError> {
        let (u, gamma) = self.positive_part(x)?;
        let inner = self.sigma(&self.skew_r(i, &self.sigma(&u))?);
        Ok(self.mul_k_right(&inner, &gamma))
    }
}
