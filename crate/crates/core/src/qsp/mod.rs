//! Quantum symmetric pair coideal subalgebras `B_{c,s}`.
//!
//! A [`QspContext`] fixes an admissible pair and caches the sign function
//! `s(X,tau)`, the elements `theta_q(F_i K_i) = -s(tau(i)) T_{w_X}(E_{tau(i)})`
//! and `Z_i = r_{tau(i)}(theta_q(F_i K_i)) K_{tau(i)} K_i^{-1}`. [`QspParams`]
//! adds validated parameters `c`, `s` and the generators
//! `B_i = F_i + c_i theta_q(F_i K_i) K_i^{-1} + s_i K_i^{-1}`. The inhomogeneous
//! right-hand sides `C_ij` of the relations `F_ij(B_i, B_j) = C_ij` are given
//! in closed form where known and by a coproduct projection in general.

mod closed;
mod context;
mod oracle;
mod params;

use thiserror::Error;

use crate::braid::BraidError;
use crate::cartan::PairError;
use crate::uqg::UqgError;

pub use closed::{closed_form, ClosedForm, Factor, Presentation};
pub use context::QspContext;
pub use oracle::{c_oracle, serre_defect, CSource};
pub use params::{ParamViolation, QspParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QspError {
    #[error("node {0} lies in X")]
    NodeInX(i64),
    #[error("node {0} does not lie in X")]
    NodeNotInX(i64),
    #[error("i and j must differ")]
    SameNode,
    #[error("no closed formula in scope for tau(i) = i and a_ij = {a} (i = {i}, j = {j}); the general case is open")]
    NoClosedFormula { i: i64, j: i64, a: i64 },
    #[error("(alpha_i, alpha_j) = 0 but r_j r_tau(i)(theta) is nonzero for i = {i}, j = {j}")]
    WUndefined { i: i64, j: i64 },
    #[error("invalid parameters: {0:?}")]
    Params(Vec<ParamViolation>),
    #[error("engine inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Uqg(#[from] UqgError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

#[cfg(test)]
mod tests;
