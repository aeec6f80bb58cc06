//! Scalar special functions used throughout the workspace.
//!
//! Everything is double precision with deterministic truncation rules, so
//! repeated runs produce bit-identical values. The asymptotic-expansion
//! evaluators (`expansion_gq`, `expansion_cq`, `expansion_qdilog`) implement
//! truncated series in the small parameter `hbar < 0` whose residuals shrink
//! like the first omitted power; they are the backbone of the stationary
//! phase analysis downstream.

mod bernoulli;
mod expansion;
mod gamma;
mod lobachevsky;
mod polylog;
mod qseries;

pub use bernoulli::{bernoulli_number, bernoulli_poly, factorial};
pub use expansion::{expansion_cq, expansion_gq, expansion_qdilog};
pub use gamma::{euler_beta, log_beta, log_gamma};
pub use lobachevsky::{clausen, dilog_unit, lobachevsky};
pub use polylog::polylog_nonpos;
pub use qseries::{c_q, g_q, qdilog, qpochhammer, QParam};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SfError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole encountered: {0}")]
    Pole(String),
}

pub type Complex = num_complex::Complex64;
