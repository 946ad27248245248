use std::sync::Arc;

use crate::braid::apply_word;
use crate::cartan::{AdmissiblePair, RootVector};
use crate::scalar::{Gauss, Scalar};
use crate::uqg::{word_degree, Algebra, Element};

use super::QspError;

/// Data attached to an admissible pair that does not depend on parameters.
#[derive(Debug)]
pub struct QspContext {
    alg: Arc<Algebra>,
    pair: Arc<AdmissiblePair>,
    s_sign: Vec<Scalar>,
    theta: Vec<Option<Element>>,
    z: Vec<Option<Element>>,
}

impl QspContext {
    pub fn new(pair: Arc<AdmissiblePair>) -> Result<Self, QspError> {
        let alg = Arc::new(Algebra::new(pair.datum_arc().clone()));
        QspContext::with_algebra(alg, pair)
    }

    /// Uses an existing algebra, which must be built on the pair's datum.
    pub fn with_algebra(alg: Arc<Algebra>, pair: Arc<AdmissiblePair>) -> Result<Self, QspError> {
        if alg.datum() != pair.datum() {
            return Err(QspError::Inconsistent("algebra and pair use different Cartan data".into()));
        }
        let n = pair.rank();
        let s_sign = (0..n).map(|j| sign_value(&pair, j)).collect();
        let mut ctx = QspContext {
            alg,
            pair,
            s_sign,
            theta: vec![None; n],
            z: vec![None; n],
        };
        for i in ctx.pair.outside_x() {
            let t = ctx.pair.tau(i);
            let twx = apply_word(&ctx.alg, ctx.pair.w_x(), &ctx.alg.e(t))?;
            let theta = twx.scale(&-&ctx.s_sign[t]);
            let deg = ctx.pair.w_x_action(&ctx.alg.datum().simple(t));
            check_graded(&ctx.alg, &theta, &deg, &RootVector::zero(n), "theta_q(F_i K_i)")?;
            let kpart = &ctx.alg.datum().simple(t) - &ctx.alg.datum().simple(i);
            let r = ctx.alg.skew_r(t, &theta)?;
            let z = ctx.alg.mul_k_right(&r, &kpart);
            let zdeg = &deg - &ctx.alg.datum().simple(t);
            check_graded(&ctx.alg, &z, &zdeg, &kpart, "Z_i")?;
            ctx.theta[i] = Some(theta);
            ctx.z[i] = Some(z);
        }
        Ok(ctx)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn pair(&self) -> &AdmissiblePair {
        &self.pair
    }

    pub fn pair_arc(&self) -> &Arc<AdmissiblePair> {
        &self.pair
    }

    pub(crate) fn label(&self, i: usize) -> i64 {
        self.pair.datum().label(i)
    }

    fn outside(&self, i: usize) -> Result<(), QspError> {
        if self.pair.in_x(i) {
            Err(QspError::NodeInX(self.label(i)))
        } else {
            Ok(())
        }
    }

    /// `s(X,tau)(alpha_j)`, a fourth root of unity.
    pub fn s_value(&self, j: usize) -> &Scalar {
        &self.s_sign[j]
    }

    /// `theta_q(F_i K_i)` for `i` outside `X`.
    pub fn theta_q_fk(&self, i: usize) -> Result<&Element, QspError> {
        self.outside(i)?;
        Ok(self.theta[i].as_ref().unwrap())
    }

    /// `Z_i` for `i` outside `X`.
    pub fn z(&self, i: usize) -> Result<&Element, QspError> {
        self.outside(i)?;
        Ok(self.z[i].as_ref().unwrap())
    }

    /// `T_{w_X}(x)`.
    pub fn t_wx(&self, x: &Element) -> Element {
        apply_word(&self.alg, self.pair.w_x(), x).expect("w_X word is reduced")
    }

    /// `W_ij` for `i` outside `X` and `j` in `X`, from
    /// `r_j r_{tau(i)}(theta_q(F_i K_i)) K_{tau(i)} K_i^{-1} = (1 - q^{2(alpha_i, alpha_j)}) W_ij`.
    pub fn w(&self, i: usize, j: usize) -> Result<Element, QspError> {
        self.outside(i)?;
        if !self.pair.in_x(j) {
            return Err(QspError::NodeNotInX(self.label(j)));
        }
        let t = self.pair.tau(i);
        let datum = self.alg.datum();
        let rr = self
            .alg
            .skew_r(j, &self.alg.skew_r(t, self.theta_q_fk(i)?)?)?;
        let left = self
            .alg
            .mul_k_right(&rr, &(&datum.simple(t) - &datum.simple(i)));
        let form = datum.form(&datum.simple(i), &datum.simple(j));
        if form == 0 {
            return if self.alg.is_zero(&left)? {
                Ok(Element::zero())
            } else {
                Err(QspError::WUndefined {
                    i: self.label(i),
                    j: self.label(j),
                })
            };
        }
        let denom = Scalar::one() - Scalar::q_pow(2 * form);
        Ok(left.scale(&denom.inv().unwrap()))
    }
}

fn sign_value(pair: &AdmissiblePair, j: usize) -> Scalar {
    let t = pair.tau(j);
    if pair.in_x(j) || t == j {
        return Scalar::one();
    }
    let k = pair.two_rho_coroot(&pair.datum().simple(j));
    let up = pair.datum().label(t) > pair.datum().label(j);
    // (-i)^k = i^{-k}
    Scalar::from_gauss(Gauss::i_pow(if up { k } else { -k }))
}

fn check_graded(
    alg: &Algebra,
    x: &Element,
    e_degree: &RootVector,
    k: &RootVector,
    what: &str,
) -> Result<(), QspError> {
    let n = alg.rank();
    let ok = x
        .terms()
        .all(|(m, _)| m.f.is_empty() && &m.k == k && &word_degree(n, &m.e) == e_degree);
    if ok && !x.is_empty() {
        Ok(())
    } else {
        Err(QspError::Inconsistent(format!("{what} has unexpected degree")))
    }
}
