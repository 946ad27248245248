use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::scalar::Scalar;
use crate::uqg::Element;

use super::{QspContext, QspError};

/// A failed membership condition for the parameter sets `C` or `S`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamViolation {
    /// `c_i` is missing or zero.
    ZeroC { node: i64 },
    /// `c_i != c_{tau(i)}` although `tau(i) != i` and `(alpha_i, Theta(alpha_i)) = 0`.
    CNotTauSymmetric { i: i64, j: i64 },
    /// A parameter was given for a node of `X`.
    NodeInX { node: i64 },
    /// `s_i != 0` for `i` outside `I_ns`.
    SOutsideIns { node: i64 },
    /// `s_i != 0` but `a_ji` is not in `-2 N_0` for some other `j` in `I_ns`.
    SCoupling { i: i64, j: i64, a_ji: i64 },
}

impl fmt::Display for ParamViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamViolation::ZeroC { node } => write!(f, "c_{node} must be nonzero"),
            ParamViolation::CNotTauSymmetric { i, j } => write!(f, "c_{i} must equal c_{j}"),
            ParamViolation::NodeInX { node } => write!(f, "node {node} lies in X and takes no parameter"),
            ParamViolation::SOutsideIns { node } => write!(f, "s_{node} must vanish: node not in I_ns"),
            ParamViolation::SCoupling { i, j, a_ji } => {
                write!(f, "s_{i} must vanish: a_{j}{i} = {a_ji} is not in -2N")
            }
        }
    }
}

/// Parameters `c` and `s` for a context, with the generators `B_i`.
#[derive(Debug, Clone)]
pub struct QspParams {
    ctx: Arc<QspContext>,
    c: Vec<Scalar>,
    s: Vec<Scalar>,
    b: Vec<Element>,
}

impl QspParams {
    /// `c` and `s` are indexed by node; entries for nodes of `X` must be zero.
    pub fn new(ctx: Arc<QspContext>, c: Vec<Scalar>, s: Vec<Scalar>) -> Result<Self, QspError> {
        let n = ctx.pair().rank();
        let mut c = c;
        let mut s = s;
        c.resize(n, Scalar::zero());
        s.resize(n, Scalar::zero());
        let mut violations = QspParams::check_c(&ctx, &c);
        violations.extend(QspParams::check_s(&ctx, &s));
        if !violations.is_empty() {
            return Err(QspError::Params(violations));
        }
        let alg = ctx.algebra();
        let b = (0..n)
            .map(|i| {
                if ctx.pair().in_x(i) {
                    return alg.f(i);
                }
                let ai = alg.datum().simple(i);
                let theta = ctx.theta_q_fk(i).unwrap();
                let mut out = alg.f(i);
                out += &alg.mul_k_right(theta, &-&ai).scale(&c[i]);
                out += &alg.k(&-&ai).scale(&s[i]);
                out
            })
            .collect();
        Ok(QspParams { ctx, c, s, b })
    }

    /// Parameters keyed by node label; absent `s` entries are zero.
    pub fn from_labels(
        ctx: Arc<QspContext>,
        c: &[(i64, Scalar)],
        s: &[(i64, Scalar)],
    ) -> Result<Self, QspError> {
        let n = ctx.pair().rank();
        let datum = ctx.pair().datum();
        let mut cv = vec![Scalar::zero(); n];
        let mut sv = vec![Scalar::zero(); n];
        let mut violations = Vec::new();
        for (target, given) in [(&mut cv, c), (&mut sv, s)] {
            for (label, value) in given {
                let i = datum
                    .index_of(*label)
                    .map_err(|e| QspError::Pair(e.into()))?;
                if ctx.pair().in_x(i) {
                    if !value.is_zero() {
                        violations.push(ParamViolation::NodeInX { node: *label });
                    }
                    continue;
                }
                target[i] = value.clone();
            }
        }
        if !violations.is_empty() {
            return Err(QspError::Params(violations));
        }
        QspParams::new(ctx, cv, sv)
    }

    /// Membership of `c` in `C`.
    pub fn check_c(ctx: &QspContext, c: &[Scalar]) -> Vec<ParamViolation> {
        let pair = ctx.pair();
        let datum = pair.datum();
        let mut out = Vec::new();
        for i in 0..pair.rank() {
            let label = datum.label(i);
            if pair.in_x(i) {
                if !c[i].is_zero() {
                    out.push(ParamViolation::NodeInX { node: label });
                }
                continue;
            }
            if c[i].is_zero() {
                out.push(ParamViolation::ZeroC { node: label });
            }
            let t = pair.tau(i);
            let ai = datum.simple(i);
            if t > i && datum.form(&ai, &pair.theta(&ai)) == 0 && c[i] != c[t] {
                out.push(ParamViolation::CNotTauSymmetric {
                    i: label,
                    j: datum.label(t),
                });
            }
        }
        out
    }

    /// Membership of `s` in `S`: `s_i != 0` only if `i` is in `I_ns` and
    /// `a_ji` is in `-2 N_0` for every other `j` in `I_ns`.
    pub fn check_s(ctx: &QspContext, s: &[Scalar]) -> Vec<ParamViolation> {
        let pair = ctx.pair();
        let datum = pair.datum();
        let ins = pair.i_ns();
        let mut out = Vec::new();
        for i in 0..pair.rank() {
            if s[i].is_zero() {
                continue;
            }
            let label = datum.label(i);
            if pair.in_x(i) {
                out.push(ParamViolation::NodeInX { node: label });
                continue;
            }
            if !ins.contains(&i) {
                out.push(ParamViolation::SOutsideIns { node: label });
                continue;
            }
            for &j in &ins {
                let a = datum.a(j, i);
                if j != i && (a > 0 || a % 2 != 0) {
                    out.push(ParamViolation::SCoupling {
                        i: label,
                        j: datum.label(j),
                        a_ji: a,
                    });
                }
            }
        }
        out
    }

    pub fn context(&self) -> &QspContext {
        &self.ctx
    }

    pub fn context_arc(&self) -> &Arc<QspContext> {
        &self.ctx
    }

    pub fn c(&self, i: usize) -> &Scalar {
        &self.c[i]
    }

    pub fn s(&self, i: usize) -> &Scalar {
        &self.s[i]
    }

    pub fn c_values(&self) -> &[Scalar] {
        &self.c
    }

    pub fn s_values(&self) -> &[Scalar] {
        &self.s
    }

    /// `B_i`, equal to `F_i` for `i` in `X`.
    pub fn b(&self, i: usize) -> &Element {
        &self.b[i]
    }
}
