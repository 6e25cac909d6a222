//! Exact constructions for groups acting on the real line by
//! piecewise-linear homeomorphisms.
//!
//! All arithmetic is over arbitrary-precision rationals; no floating point
//! enters any evaluation or decision path. The crate provides:
//!
//! - a piecewise-linear kernel: breakpoints plus affine or periodic tail
//!   laws, with exact composition, inversion, envelopes, and total sign
//!   profiles of differences;
//! - monotone surjections and their duals, for semiconjugacy bookkeeping;
//! - dyadic collapse maps identifying the line with bounded intervals, and
//!   zone-structured homeomorphisms built from them;
//! - evaluation programs for maps defined by equivariant extension over a
//!   fundamental domain (promotions of partial conjugacies, k-th roots);
//! - words, presentations, balls, and representations by homeomorphisms;
//! - left orders on finitely generated groups realized from orbit data;
//! - a perturbation toolkit that retargets the germ of a word at infinity,
//!   realizes commutators with prescribed asymptotics, tames and removes
//!   fixed points, and perturbs orders, returning certificates that an
//!   independent verifier re-checks.

pub mod num;

pub mod interval;

pub mod tail;

pub mod pl;

pub mod profile;

use thiserror::Error;

/// Errors raised by the exact kernel.
#[derive(Debug, Error)]
pub enum ExactError {
    /// A constructor was handed data violating its invariants.
    #[error("invalid object: {0}")]
    Invalid(String),
    /// Two tail laws admit no piecewise-linear composition.
    #[error("tail laws have no piecewise-linear composition")]
    TailClash,
    /// A difference of tails oscillates, so it has no finite sign
    /// decomposition.
    #[error("tail difference oscillates; no finite sign decomposition")]
    OscillatingTails,
    /// An exact equality that an operation relies on failed.
    #[error("maps disagree: {0}")]
    Disagree(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> ExactError {
    ExactError::Invalid(msg.into())
}
