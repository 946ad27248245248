use crate::cartan::RootVector;
use crate::uqg::{Element, Monomial};

use super::{closed_form, Presentation, QspError, QspParams};

/// Where the right-hand side `C_ij` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CSource {
    Closed(Presentation),
    Oracle,
}

/// `C_ij(c) = -(id (x) eps) Q_{-lambda}(Delta(Y) - Y (x) K_{-lambda})` with
/// `Y = F_ij(B_i, B_j)`, `lambda = (1 - a_ij) alpha_i + alpha_j` and
/// `Q_{-lambda} = id (x) P_{-lambda} o pi_{0,0}`.
pub fn c_oracle(params: &QspParams, i: usize, j: usize) -> Result<Element, QspError> {
    let ctx = params.context();
    let alg = ctx.algebra();
    let datum = alg.datum();
    if i == j {
        return Err(QspError::SameNode);
    }
    let n = alg.rank();
    let y = alg.serre_polynomial(i, j, params.b(i), params.b(j));
    let lambda = &datum.simple(i).scaled(1 - datum.a(i, j)) + &datum.simple(j);
    let k_minus = Monomial::k_part(-&lambda);
    let zero = RootVector::zero(n);
    // pi_{0,0} on the second factor, then Y (x) K_{-lambda} subtracted.
    let mut t = alg.coproduct_projected(&y, &zero, &zero);
    for (m, c) in y.terms() {
        t.add_term(vec![m.clone(), k_minus.clone()], -c);
    }
    // P_{-lambda} on U^0 keeps the K_{-lambda} line; eps(K_{-lambda}) = 1.
    let projected = t.filter(|ms| ms[1] == k_minus);
    let reduced = alg.counit_at(&projected, 1);
    Ok(-alg.tensor_to_element(&reduced))
}

/// `F_ij(B_i, B_j) - C_ij(c)`.
pub fn serre_defect(
    params: &QspParams,
    i: usize,
    j: usize,
    source: CSource,
) -> Result<Element, QspError> {
    let alg = params.context().algebra();
    let y = alg.serre_polynomial(i, j, params.b(i), params.b(j));
    let c = match source {
        CSource::Oracle => c_oracle(params, i, j)?,
        CSource::Closed(p) => closed_form(params, i, j, p)?.evaluate(params),
    };
    Ok(y - c)
}
