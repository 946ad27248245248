use crate::scalar::{qint, qshifted_factorial, Scalar};
use crate::uqg::{Algebra, Element};

use super::{QspError, QspParams};

/// A factor of a product in a closed formula: a generator `B_k` or a
/// coefficient from `M_X U^0_Theta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    B(usize),
    Coeff(Element),
}

/// A sum of scalar multiples of products of factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosedForm {
    pub terms: Vec<(Scalar, Vec<Factor>)>,
}

/// Which family of closed formulas to use when `tau(i) = i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// Formulas in `Z_i` and, for `j` in `X`, `W_ij`.
    Standard,
    /// Formulas in `Z_i`, `r_j(Z_i)` and `{}_j r(Z_i)`, valid for `-2 <= a_ij <= 0`.
    Unified,
}

impl ClosedForm {
    fn push(&mut self, c: Scalar, factors: Vec<Factor>) {
        self.terms.push((c, factors));
    }

    pub fn evaluate(&self, params: &QspParams) -> Element {
        let alg = params.context().algebra();
        let mut out = Element::zero();
        for (c, factors) in &self.terms {
            let mut acc = alg.scalar(c.clone());
            for f in factors {
                acc = match f {
                    Factor::B(k) => alg.mul(&acc, params.b(*k)),
                    Factor::Coeff(x) => alg.mul(&acc, x),
                };
            }
            out += &acc;
        }
        out
    }

    /// The image under `B_k -> B_k`, `q -> q^{-1}` and the bar involution on
    /// coefficients.
    pub fn bar_twisted(&self, alg: &Algebra) -> ClosedForm {
        ClosedForm {
            terms: self
                .terms
                .iter()
                .map(|(c, factors)| {
                    let fs = factors
                        .iter()
                        .map(|f| match f {
                            Factor::B(k) => Factor::B(*k),
                            Factor::Coeff(x) => Factor::Coeff(alg.bar(x)),
                        })
                        .collect();
                    (c.bar(), fs)
                })
                .collect(),
        }
    }
}

/// The closed formula for `C_ij(c)` with `i` outside `X` and `j != i`.
pub fn closed_form(
    params: &QspParams,
    i: usize,
    j: usize,
    presentation: Presentation,
) -> Result<ClosedForm, QspError> {
    let ctx = params.context();
    let pair = ctx.pair();
    let alg = ctx.algebra();
    let datum = pair.datum();
    if i == j {
        return Err(QspError::SameNode);
    }
    if pair.in_x(i) {
        return Err(QspError::NodeInX(datum.label(i)));
    }
    let t = pair.tau(i);
    let eps_i = datum.eps(i);
    let eps_j = datum.eps(j);
    let qi = |n: i64| Scalar::q_pow(eps_i * n);
    let qj = |n: i64| Scalar::q_pow(eps_j * n);
    let bracket = |n: i64| qint(n, eps_i);
    let inv = |x: Scalar| x.inv().expect("nonzero");
    let di = qi(1) - qi(-1);
    let dj = qj(1) - qj(-1);
    let c_i = params.c(i).clone();
    let z = Factor::Coeff(ctx.z(i)?.clone());
    let bi = Factor::B(i);
    let bj = Factor::B(j);
    let a = datum.a(i, j);
    let mut out = ClosedForm::default();

    if t != i {
        if j != t {
            return Ok(out);
        }
        let m = 1 - a;
        let mut prefix = vec![bi.clone(); (m - 1) as usize];
        let pre = -inv(&di * &di);
        let k1 = &pre * &(qi(-m) * qshifted_factorial(&qi(2), m as u32));
        let k2 = &pre * &(qi(1) * qshifted_factorial(&qi(-2), m as u32));
        let mut first = prefix.clone();
        first.push(z);
        out.push(k1 * &c_i, first);
        prefix.push(Factor::Coeff(ctx.z(t)?.clone()));
        out.push(k2 * params.c(t), prefix);
        return Ok(out);
    }

    let no_formula = || QspError::NoClosedFormula {
        i: datum.label(i),
        j: datum.label(j),
        a,
    };
    if a == 0 {
        return Ok(out);
    }
    let j_in_x = pair.in_x(j);
    match presentation {
        Presentation::Unified => {
            let z_i = ctx.z(i)?;
            let rj = alg.mul_k_right(&alg.skew_r(j, z_i)?, &datum.simple(j));
            let jr = alg.mul_k_right(&alg.skew_ir(j, z_i)?, &-&datum.simple(j));
            match a {
                -1 => {
                    out.push(qi(1) * &c_i, vec![bj, z]);
                    let d = inv(&di * &dj);
                    out.push(&(qi(2) * &d) * &c_i, vec![Factor::Coeff(rj)]);
                    out.push(&(&(qj(2) * qi(-2)) * &d) * &c_i, vec![Factor::Coeff(jr)]);
                }
                -2 => {
                    let k = &(qi(1) * bracket(2).pow(2)) * &c_i;
                    out.push(k.clone(), vec![bi.clone(), bj.clone(), z.clone()]);
                    out.push(-k, vec![bj, bi.clone(), z]);
                    let d = inv(dj);
                    out.push(
                        -(&(&(qi(4) * bracket(2)) * &d) * &c_i),
                        vec![bi.clone(), Factor::Coeff(rj)],
                    );
                    out.push(
                        &(&(&(qj(2) * qi(-6)) * &bracket(2)) * &d) * &c_i,
                        vec![bi, Factor::Coeff(jr)],
                    );
                }
                _ => return Err(no_formula()),
            }
        }
        Presentation::Standard if j_in_x => {
            let wk = alg.mul_k_right(&ctx.w(i, j)?, &datum.simple(j));
            match a {
                -1 => {
                    let d = inv(di.clone());
                    out.push(&(&qi(2) * &d) * &c_i, vec![bj.clone(), z.clone()]);
                    out.push(-(&d * &c_i), vec![z, bj]);
                    out.push(&(&(qi(1) + qi(-1)) * &inv(dj)) * &c_i, vec![Factor::Coeff(wk)]);
                }
                -2 => {
                    let d = inv(di.clone());
                    let b3 = bracket(3);
                    out.push(&(&(&qi(2) * &b3) * &d) * &c_i, vec![bi.clone(), bj.clone(), z.clone()]);
                    out.push(
                        -(&(&(&qi(2) * &(qi(2) + Scalar::from_int(2))) * &d) * &c_i),
                        vec![bj.clone(), bi.clone(), z.clone()],
                    );
                    out.push(
                        -(&(&(Scalar::from_int(2) + qi(-2)) * &d) * &c_i),
                        vec![z.clone(), bi.clone(), bj.clone()],
                    );
                    out.push(&(&b3 * &d) * &c_i, vec![z, bj, bi.clone()]);
                    let sum = qi(1) + qi(-1);
                    let k = &(&(&(&di * &inv(dj)) * &sum) * &sum) * &b3;
                    out.push(-(&k * &c_i), vec![bi, Factor::Coeff(wk)]);
                }
                _ => return Err(no_formula()),
            }
        }
        Presentation::Standard => {
            let qz = &qi(1) * &c_i;
            match a {
                -1 => out.push(qz, vec![z, bj]),
                -2 => {
                    let k = &bracket(2).pow(2) * &qz;
                    out.push(k.clone(), vec![z.clone(), bi.clone(), bj.clone()]);
                    out.push(-k, vec![z, bj, bi]);
                }
                -3 => {
                    let b2 = bracket(2);
                    let b3 = bracket(3);
                    // the terms linear in c_i Z_i carry these signs; flipping both
                    // breaks the relation (checked directly against F_ij(B_i, B_j))
                    let k1 = &b3.pow(2) + &Scalar::one();
                    let k2 = -(&b2 * &(&(&b2 * &bracket(4)) + &(qi(2) + qi(-2))));
                    let k3 = -b3.pow(2);
                    out.push(&k1 * &qz, vec![bi.clone(), bi.clone(), bj.clone(), z.clone()]);
                    out.push(&k1 * &qz, vec![bj.clone(), bi.clone(), bi.clone(), z.clone()]);
                    out.push(&k2 * &qz, vec![bi.clone(), bj.clone(), bi, z.clone()]);
                    out.push(&k3 * &(&qz * &qz), vec![bj, z.clone(), z]);
                }
                _ => return Err(no_formula()),
            }
        }
    }
    Ok(out)
}
