//! Exact classification toolkit for smooth plane projective curves cut out
//! by three-term (trinomial) equations: orbit enumeration of zero patterns,
//! smoothness certification, coefficient normalization, diagonal
//! automorphism groups, Belyi-function verification, and the low-degree
//! birational coincidences, all in exact arithmetic.

pub mod algebra;
pub mod belyi;
pub mod curve;
pub mod diagonal;
pub mod lowdeg;
pub mod normalization;
pub mod orbits;
pub mod report;
pub mod smoothness;
pub mod tables;

use thiserror::Error;

/// Exact rational scalar used throughout.
pub type Rat = num_rational::BigRational;

/// Multivariate polynomial over the rationals (the concrete alias used by
/// the curve and verification modules).
pub type MultiPoly = algebra::Poly<Rat>;

/// Multivariate polynomial over a prime field with runtime modulus.
pub type PrimeFieldPoly = algebra::Poly<algebra::Fp>;

/// Dense univariate polynomial over the rationals.
pub type QPoly1 = algebra::UPoly<Rat>;

#[derive(Error, Debug)]
pub enum TrinomiaError {
    #[error("nothing to eliminate: both inputs constant in the elimination variable")]
    NothingToEliminate,
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("degree below cubic: d = {0}")]
    DegreeBelowCubic(u32),
    #[error("degenerate power matrix (determinant zero)")]
    DegeneratePowerMatrix,
    #[error("zero coefficient in trinomial curve")]
    ZeroCoefficient,
    #[error("bad reduction: prime {0} divides a coefficient denominator")]
    BadReduction(u64),
    #[error("empty prime budget")]
    EmptyPrimeBudget,
    #[error("enumeration bound exceeded: {0}; use SNF path")]
    EnumerationBound(String),
    #[error("operation requires a cubic (d = 3), got d = {0}")]
    NotCubic(u32),
    #[error("curve file error: {0}")]
    BadCurveFile(String),
    #[error("candidate function is constant on the curve")]
    ConstantCandidate,
    #[error("verification could not be completed: {0}")]
    Undetermined(String),
}

pub use curve::{CurveType, PowerMatrix, TrinomialCurve, ZeroPattern};
