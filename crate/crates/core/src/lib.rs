//! Spectral and scattering analysis of the one-dimensional Dirac equation with
//! two point interactions placed symmetrically at x = ±ℓ/2.
//!
//! Each point interaction is described by a matching matrix
//! Λ = e^{iφ} [[a, ib], [-ic, d]] with real a, b, c, d, ad − bc = 1 and
//! φ ∈ [0, π), acting on the two-component spinor as ψ(x⁺) = Λ ψ(x⁻).
//! The crate provides:
//!
//! - conversions between physical interaction strengths and matching matrices
//!   ([`lambda`]),
//! - transfer and connection matrices at real and complex energy, including the
//!   dedicated threshold matrices at E = ±m and the zero-separation limit
//!   ([`transfer`]),
//! - bound-state location in the mass gap, with threshold-state detection and
//!   parity-resolved cross-validation ([`spectra`]),
//! - resonance poles in the lower half-plane, locus curves of the resonance
//!   equations, and the impermeable-limit box spectra ([`resonance`]),
//! - the catalogue of one-parameter special interactions with their closed-form
//!   equations and qualitative expectations ([`cases`]),
//! - the nonrelativistic reduction and its consistency checks ([`nonrel`]).
//!
//! Numerical tolerances are centralized in [`tol`]. With the default `parallel`
//! feature the grid-shaped workloads fan out through rayon; disabling the
//! feature yields a dependency-free sequential build with identical results.

#![forbid(unsafe_code)]

pub mod cases;
mod exec;
pub mod lambda;
pub mod mat2;
pub mod nonrel;
pub mod resonance;
pub mod spectra;
pub mod tol;
pub mod transfer;

pub use exec::configure_threads_from_env;

use thiserror::Error;

/// Unified error type for every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input violates a documented precondition (non-finite number, empty
    /// range, wrong parity tag, malformed identifier, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The interaction is impermeable (decoupling limit); transfer-matrix
    /// machinery and strength decompositions are undefined for it.
    #[error("impermeable interaction: {0}")]
    ImpermeableInteraction(String),

    /// The strength decomposition of a matching matrix hits the degenerate
    /// denominator 2 cos φ + a + d ≈ 0 and is not defined.
    #[error("degenerate strength decomposition: |2 cos phi + a + d| = {0:.3e}")]
    DegenerateDenominator(f64),

    /// A matrix that must be inverted is numerically singular.
    #[error("singular matrix: |det| = {0:.3e}")]
    SingularMatrix(f64),

    /// The scan grid cannot be trusted: the parity-resolved closed-form route
    /// found structure (typically a near-degenerate doublet) that the direct
    /// scan missed at the requested resolution.
    #[error("scan grid too coarse: {0}")]
    GridTooCoarse(String),

    /// The requested case has no bound-state equation (free-like case).
    #[error("case has no bound-state equation: {0}")]
    CaseHasNoBoundEquation(String),

    /// The requested case has no resonance equation (free-like case).
    #[error("case has no resonances: {0}")]
    CaseHasNoResonances(String),

    /// The strength value is outside the case's admissible set.
    #[error("invalid strength for case: {0}")]
    InvalidStrength(String),

    /// An iterative solver failed to converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Two independent internal routes disagreed; indicates a defect, not bad
    /// user input.
    #[error("internal cross-validation failure: {0}")]
    Internal(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidInput(format!("{what} must be finite, got {value}")))
    }
}
