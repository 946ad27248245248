use crate::cartan::RootVector;

use super::{Algebra, Element, Monomial};

impl Algebra {
    /// The bar involution: fixes `E_i` and `F_i`, inverts `K_beta`, and acts
    /// on scalars by `v -> v^{-1}`.
    pub fn bar(&self, x: &Element) -> Element {
        x.terms()
            .map(|(m, c)| {
                let mono = Monomial {
                    e: m.e.clone(),
                    k: -&m.k,
                    f: m.f.clone(),
                };
                (mono, c.bar())
            })
            .collect()
    }

    /// The antiautomorphism with `sigma(E_i) = E_i`, `sigma(F_i) = F_i`,
    /// `sigma(K_beta) = K_{-beta}`.
    pub fn sigma(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let mut f = m.f.clone();
            f.reverse();
            let mut e = m.e.clone();
            e.reverse();
            let fk = Monomial {
                e: Vec::new(),
                k: -&m.k,
                f,
            };
            // F_b K_{-k} = q^{-(k, deg b)} K_{-k} F_b
            let c = c.mul_v_pow(-2 * self.form_root_word(&m.k, &m.f));
            let em = Monomial::e_word(self.rank(), &e);
            for (mono, s) in self.mul_monomials(&fk, &em).iter() {
                out.add_term(mono.clone(), &c * s);
            }
        }
        out
    }

    /// The automorphism exchanging `E_i` and `F_i` and sending `K_beta` to `K_{-beta}`.
    pub fn omega(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in x.terms() {
            let fk = Monomial {
                e: Vec::new(),
                k: -&m.k,
                f: m.e.clone(),
            };
            let c = c.mul_v_pow(-2 * self.form_root_word(&m.k, &m.e));
            let em = Monomial::e_word(self.rank(), &m.f);
            for (mono, s) in self.mul_monomials(&fk, &em).iter() {
                out.add_term(mono.clone(), &c * s);
            }
        }
        out
    }

    /// The automorphism induced by a diagram automorphism `tau`, renaming
    /// every letter `i` to `tau(i)`.
    pub fn relabel(&self, tau: &[usize], x: &Element) -> Element {
        let rename = |w: &[u8]| w.iter().map(|&l| tau[l as usize] as u8).collect::<Vec<u8>>();
        x.map_monomials(|m| {
            let mut k = RootVector::zero(self.rank());
            for (i, &c) in m.k.iter().enumerate() {
                k[tau[i]] = c;
            }
            Monomial {
                e: rename(&m.e),
                k,
                f: rename(&m.f),
            }
        })
    }
}
