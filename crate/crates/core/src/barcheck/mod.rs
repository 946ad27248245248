//! Bar involutions on coideal subalgebras.
//!
//! The sign `nu_i` compares `P_i = r_i(T_{w_X}(E_i))` with its image under
//! `sigma` composed with the diagram relabelling, and
//! `ell_i = q^{(alpha_i, alpha_i - w_X(alpha_i) - 2 rho_X)}` records the
//! accompanying power of `q`. With these, `bar(Z_i) = nu_i ell_i Z_{tau(i)}`.
//!
//! A bar involution on `B_{c,s}` fixing every `B_i` exists exactly when
//! `bar(c_i Z_i) = q^{(alpha_i, alpha_tau(i))} c_tau(i) Z_tau(i)` for every
//! node outside `X` that is not an isolated `tau`-fixed node. When all signs
//! are `+1` this becomes a condition on the parameters alone, checked by
//! [`corollary_conditions`]. [`canonical_params`] picks parameters for which
//! the involution always exists.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cartan::{AdmissiblePair, RootVector};
use crate::qsp::{QspContext, QspError, QspParams};
use crate::scalar::Scalar;
use crate::uqg::{Algebra, Element, UqgError};

#[cfg(test)]
mod tests;

#[derive(Debug, Error)]
pub enum BarError {
    /// Neither `Q - P` nor `Q + P` vanishes; this contradicts the sign theorem
    /// and signals a bug in the engine.
    #[error("engine inconsistency: sigma(tau(P)) is neither P nor -P at node {0}")]
    SignInconsistent(i64),
    #[error("a_ij = {a} at i = {i}, j = {j} is outside the range where the bar criterion is proved")]
    OutOfScope { i: i64, j: i64, a: i64 },
    #[error("parameters are not in D^(1/2): {0:?}")]
    NotInD(Vec<DViolation>),
    #[error("parameters s are invalid: {0:?}")]
    NotInS(Vec<crate::qsp::ParamViolation>),
    #[error("character value at node {0} is zero")]
    ZeroCharacter(i64),
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error(transparent)]
    Qsp(#[from] QspError),
    #[error(transparent)]
    Uqg(#[from] UqgError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Exists,
    Fails,
}

/// Outcome of [`bar_exists`]. Maps are keyed by node label.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BarReport {
    pub nu: BTreeMap<i64, i8>,
    pub ell: BTreeMap<i64, Scalar>,
    /// Whether `bar(c_i Z_i) = q^{(alpha_i, alpha_tau(i))} c_tau(i) Z_tau(i)`
    /// holds, for every node the criterion looks at.
    #[serde(rename = "ocZ")]
    pub oc_z: BTreeMap<i64, bool>,
    pub verdict: Verdict,
    pub failing_nodes: Vec<i64>,
}

impl BarReport {
    pub fn exists(&self) -> bool {
        self.verdict == Verdict::Exists
    }
}

/// Outcome of [`corollary_conditions`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CorollaryReport {
    pub holds: bool,
    pub failing_nodes: Vec<i64>,
    /// Nodes with `nu_i = -1`, whose parameter was divided by `q - q^{-1}`
    /// before testing.
    pub rescaled: Vec<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DViolation {
    /// `d_i` differs from `q^{(alpha_i, Theta(alpha_i) - 2 rho_X)/2}`.
    FixedValue { node: i64 },
    /// `d_tau(i) != q^{(alpha_i, Theta(alpha_i) - 2 rho_X)} bar(d_i)`.
    Twisted { node: i64 },
    Zero { node: i64 },
}

fn label(pair: &AdmissiblePair, i: usize) -> i64 {
    pair.datum().label(i)
}

/// `r_i(T_{w_X}(E_i))`.
pub fn r_twx(ctx: &QspContext, i: usize) -> Result<Element, BarError> {
    let alg = ctx.algebra();
    Ok(alg.skew_r(i, &ctx.t_wx(&alg.e(i)))?)
}

/// The sign `nu_i` with `sigma(tau(P_i)) = nu_i P_i`.
pub fn nu_sign(ctx: &QspContext, i: usize) -> Result<i8, BarError> {
    let alg = ctx.algebra();
    let p = r_twx(ctx, i)?;
    let q = alg.sigma(&alg.relabel(ctx.pair().tau_map(), &p));
    if alg.equals(&q, &p)? {
        Ok(1)
    } else if alg.is_zero(&(&q + &p))? {
        Ok(-1)
    } else {
        Err(BarError::SignInconsistent(label(ctx.pair(), i)))
    }
}

/// `ell_i = q^{(alpha_i, alpha_i - w_X(alpha_i) - 2 rho_X)}`.
pub fn ell(pair: &AdmissiblePair, i: usize) -> Scalar {
    Scalar::q_pow(ell_exponent(pair, i))
}

fn ell_exponent(pair: &AdmissiblePair, i: usize) -> i64 {
    let d = pair.datum();
    let a = d.simple(i);
    let rhs = &(&a - &pair.w_x_action(&a)) - pair.two_rho();
    d.form(&a, &rhs)
}

/// Checks `bar(Z_i) = nu_i ell_i Z_tau(i)`; `false` signals an engine bug.
pub fn check_ocz(ctx: &QspContext, i: usize) -> Result<bool, BarError> {
    let alg = ctx.algebra();
    let nu = nu_sign(ctx, i)?;
    let lhs = alg.bar(ctx.z(i)?);
    let factor = ell(ctx.pair(), i) * Scalar::from_int(nu.into());
    let rhs = ctx.z(ctx.pair().tau(i))?.scale(&factor);
    Ok(alg.equals(&lhs, &rhs)?)
}

/// Checks `bar(P_i) = nu_i (-1)^{alpha_i(2 rho_X^vee)} ell_i P_tau(i)`.
pub fn check_bar_r_twx(ctx: &QspContext, i: usize) -> Result<bool, BarError> {
    let alg = ctx.algebra();
    let pair = ctx.pair();
    let nu = nu_sign(ctx, i)?;
    let t = pair.tau(i);
    let parity = pair.two_rho_coroot(&pair.datum().simple(i));
    let sign = if parity % 2 != 0 { -i64::from(nu) } else { i64::from(nu) };
    let rhs = r_twx(ctx, t)?.scale(&(ell(pair, i) * Scalar::from_int(sign)));
    Ok(alg.equals(&alg.bar(&r_twx(ctx, i)?), &rhs)?)
}

/// Whether node `i` outside `X` is a `tau`-fixed component of type `A_1`.
pub fn is_isolated_fixed(pair: &AdmissiblePair, i: usize) -> bool {
    pair.tau(i) == i && (0..pair.rank()).all(|j| j == i || pair.datum().a(i, j) == 0)
}

/// Checks the hypotheses under which the bar criterion is proved: for
/// `tau(i) = i` outside `X`, `a_ij` lies in `{0,-1,-2}` for `j` in `X` and in
/// `{0,-1,-2,-3}` for other `j` outside `X`.
pub fn check_scope(pair: &AdmissiblePair) -> Result<(), BarError> {
    let d = pair.datum();
    for i in pair.outside_x() {
        if pair.tau(i) != i {
            continue;
        }
        for j in 0..pair.rank() {
            if j == i {
                continue;
            }
            let a = d.a(i, j);
            let bound = if pair.in_x(j) { -2 } else { -3 };
            if a < bound {
                return Err(BarError::OutOfScope {
                    i: d.label(i),
                    j: d.label(j),
                    a,
                });
            }
        }
    }
    Ok(())
}

/// Decides whether `B_{c,s}` carries a bar involution fixing every `B_i`.
pub fn bar_exists(params: &QspParams) -> Result<BarReport, BarError> {
    let ctx = params.context();
    let pair = ctx.pair();
    let alg = ctx.algebra();
    check_scope(pair)?;
    let mut report = BarReport {
        nu: BTreeMap::new(),
        ell: BTreeMap::new(),
        oc_z: BTreeMap::new(),
        verdict: Verdict::Exists,
        failing_nodes: Vec::new(),
    };
    let d = pair.datum();
    for i in pair.outside_x() {
        let l = d.label(i);
        report.nu.insert(l, nu_sign(ctx, i)?);
        report.ell.insert(l, ell(pair, i));
        if is_isolated_fixed(pair, i) {
            continue;
        }
        let t = pair.tau(i);
        let lhs = alg.bar(&ctx.z(i)?.scale(params.c(i)));
        let factor = Scalar::q_pow(d.form(&d.simple(i), &d.simple(t))) * params.c(t);
        let rhs = ctx.z(t)?.scale(&factor);
        let ok = alg.equals(&lhs, &rhs)?;
        report.oc_z.insert(l, ok);
        if !ok {
            report.failing_nodes.push(l);
        }
    }
    if !report.failing_nodes.is_empty() {
        report.verdict = Verdict::Fails;
    }
    Ok(report)
}

fn theta_pairing(pair: &AdmissiblePair, i: usize) -> i64 {
    let a = pair.datum().simple(i);
    pair.datum().form(&a, &pair.theta(&a))
}

/// Tests the parameter conditions equivalent to [`bar_exists`] when every
/// `nu_i = 1`. Nodes with `nu_i = -1` are first rescaled by `(q - q^{-1})^{-1}`,
/// so that the test again matches [`bar_exists`] on the given parameters.
///
/// A `tau`-fixed node with some neighbour, in `X` or not, or a node with
/// `(alpha_i, Theta(alpha_i)) = 0` needs `c_i = c_tau(i)` with
/// `c_i q^{-(alpha_i, Theta(alpha_i) - 2 rho_X)/2}` bar-invariant; a node with
/// `tau(i) != i` otherwise needs `c_tau(i) = q^{(alpha_i, Theta(alpha_i) - 2 rho_X)} bar(c_i)`.
pub fn corollary_conditions(params: &QspParams) -> Result<CorollaryReport, BarError> {
    let ctx = params.context();
    let pair = ctx.pair();
    let d = pair.datum();
    let qdiff = Scalar::q_pow(1) - Scalar::q_pow(-1);
    let mut c = params.c_values().to_vec();
    let mut rescaled = Vec::new();
    for i in pair.outside_x() {
        if nu_sign(ctx, i)? < 0 {
            c[i] = &c[i] / &qdiff;
            rescaled.push(d.label(i));
        }
    }
    let mut failing = Vec::new();
    for i in pair.outside_x() {
        let t = pair.tau(i);
        let e = pair.theta_rho_exponent(i);
        // any neighbour counts, including those in X
        let coupled = (0..pair.rank()).any(|j| j != i && d.a(i, j) != 0);
        let ok = if (t == i && coupled) || theta_pairing(pair, i) == 0 {
            c[i] == c[t] && c[i].mul_v_pow(-e).is_bar_fixed()
        } else if t != i {
            c[t] == c[i].bar().mul_v_pow(2 * e)
        } else {
            true
        };
        if !ok {
            failing.push(d.label(i));
        }
    }
    Ok(CorollaryReport {
        holds: failing.is_empty(),
        failing_nodes: failing,
        rescaled,
    })
}

/// Membership test for `D^(1/2)`; `d` has one entry per node, ignored on `X`.
pub fn check_d(pair: &AdmissiblePair, d: &[Scalar]) -> Vec<DViolation> {
    let mut out = Vec::new();
    for i in pair.outside_x() {
        let l = label(pair, i);
        if d[i].is_zero() {
            out.push(DViolation::Zero { node: l });
            continue;
        }
        let t = pair.tau(i);
        let e = pair.theta_rho_exponent(i);
        if t == i || theta_pairing(pair, i) == 0 {
            if d[i] != Scalar::v_pow(e) {
                out.push(DViolation::FixedValue { node: l });
            }
        } else if d[t] != d[i].bar().mul_v_pow(2 * e) {
            out.push(DViolation::Twisted { node: l });
        }
    }
    out
}

/// Parameters in `D^(1/2)`: `q^{(alpha_i, Theta(alpha_i) - 2 rho_X)/2}` on every
/// node, with the free value on a `tau`-orbit `{i, tau(i)}` with
/// `(alpha_i, Theta(alpha_i)) != 0` fixed at the smaller label by the same
/// formula. Entries on `X` are zero.
pub fn canonical_params(pair: &AdmissiblePair) -> Vec<Scalar> {
    let mut d = vec![Scalar::zero(); pair.rank()];
    for i in pair.outside_x() {
        let t = pair.tau(i);
        let e = pair.theta_rho_exponent(i);
        if t == i || theta_pairing(pair, i) == 0 || i < t {
            d[i] = Scalar::v_pow(e);
        }
    }
    for i in pair.outside_x() {
        let t = pair.tau(i);
        if t != i && theta_pairing(pair, i) != 0 && t < i {
            d[i] = d[t].bar().mul_v_pow(2 * pair.theta_rho_exponent(t));
        }
    }
    debug_assert!(check_d(pair, &d).is_empty());
    d
}

fn check_len(pair: &AdmissiblePair, v: &[Scalar]) -> Result<(), BarError> {
    if v.len() != pair.rank() {
        return Err(BarError::Length {
            expected: pair.rank(),
            got: v.len(),
        });
    }
    Ok(())
}

/// `d ~ d'`: `d'_i / d_i` is bar-fixed on every node with `tau(i) != i`.
pub fn equiv_d(pair: &AdmissiblePair, d: &[Scalar], d2: &[Scalar]) -> Result<bool, BarError> {
    check_len(pair, d)?;
    check_len(pair, d2)?;
    let mut bad = check_d(pair, d);
    bad.extend(check_d(pair, d2));
    if !bad.is_empty() {
        return Err(BarError::NotInD(bad));
    }
    Ok(pair
        .outside_x()
        .into_iter()
        .filter(|&i| pair.tau(i) != i)
        .all(|i| (&d2[i] / &d[i]).is_bar_fixed()))
}

/// `s ~ s'`: `s_i = +-s'_i` on every node of `I_ns`.
pub fn equiv_s(ctx: &QspContext, s: &[Scalar], s2: &[Scalar]) -> Result<bool, BarError> {
    let pair = ctx.pair();
    check_len(pair, s)?;
    check_len(pair, s2)?;
    let mut bad = QspParams::check_s(ctx, s);
    bad.extend(QspParams::check_s(ctx, s2));
    if !bad.is_empty() {
        return Err(BarError::NotInS(bad));
    }
    Ok(pair
        .i_ns()
        .into_iter()
        .all(|i| s[i] == s2[i] || s[i] == -s2[i].clone()))
}

/// `Ad(x)`: multiplies the weight-`beta` component by `x(beta)`, where `x` is
/// the character with values `x[i]` on the simple roots.
pub fn ad_x(alg: &Algebra, x: &[Scalar], a: &Element) -> Result<Element, BarError> {
    if x.len() != alg.rank() {
        return Err(BarError::Length {
            expected: alg.rank(),
            got: x.len(),
        });
    }
    if let Some(i) = x.iter().position(Scalar::is_zero) {
        return Err(BarError::ZeroCharacter(alg.datum().label(i)));
    }
    let value = |beta: &RootVector| -> Scalar {
        beta.iter()
            .zip(x)
            .map(|(&k, s)| s.pow(k))
            .product()
    };
    let mut out = Element::zero();
    for (m, c) in a.terms() {
        out.add_term(m.clone(), c * &value(&m.weight()));
    }
    Ok(out)
}
