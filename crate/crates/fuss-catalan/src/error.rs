//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the numerics kernel and the distribution modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameter pair outside the admissible region, or a malformed sequence.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Argument outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Root finder was started on an interval without a sign change.
    #[error("root not bracketed on [{lo}, {hi}]: f has the same sign at both ends")]
    NotBracketed { lo: f64, hi: f64 },

    /// Quadrature refinement hit the level cap before meeting tolerance.
    #[error("quadrature did not converge within {levels} levels (last correction {last_delta:e})")]
    QuadratureNonConvergence { levels: usize, last_delta: f64 },

    /// Bracketed root iteration hit the iteration cap.
    #[error("root finding did not converge within {0} iterations")]
    RootNonConvergence(usize),

    /// Requested point lies outside the estimated convergence disc of a series.
    #[error("series argument outside estimated convergence disc (|z| * {growth:e} >= 0.5)")]
    SeriesDivergence { growth: f64 },

    /// Closed form requested for a parameter family that has none.
    #[error("no closed form for (p, r) = ({p}, {r}); supported families are r = p and r = p - 1")]
    UnsupportedFamily { p: f64, r: f64 },

    /// Sequence does not reach the index required by the operation.
    #[error("sequence too short: need entries up to index {needed}, have up to {have}")]
    SequenceTooShort { needed: usize, have: usize },

    /// The measure is a point mass and has no density.
    #[error("measure is a point mass; no density to evaluate")]
    DegenerateMeasure,

    /// Density evaluation outside the open support interval.
    #[error("x = {x} outside the open support ({lo}, {hi})")]
    OutsideSupport { x: f64, lo: f64, hi: f64 },

    /// Bisection predicate did not flip over the scan bracket.
    #[error("predicate constant over [{lo}, {hi}]: no transition inside the bracket")]
    NoFlip { lo: f64, hi: f64 },

    /// An integrand or scan function produced a non-finite value.
    #[error("non-finite value encountered at x = {0}")]
    NonFinite(f64),

    /// A numerical verification that should hold by theory failed.
    #[error("verification failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
