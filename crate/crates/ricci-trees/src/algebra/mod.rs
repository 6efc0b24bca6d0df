//! Exact rational arithmetic: scalars, polynomials, Sturm chains, and dense
//! matrices over the rationals.
//!
//! Everything downstream (Ricci matrices, quotients, Schur forms, the sign
//! classifier) reduces to the primitives in this module, so the operations
//! here carry the heaviest invariant checks: characteristic polynomials are
//! monic with the right degree, Sturm chains terminate in nonzero constants,
//! and Schur complements refuse singular eliminated blocks.

mod matrix;
pub(crate) mod modular;
mod poly;
mod rational;
mod sturm;

pub use matrix::{char_poly, fraction_free_det, leading_principal_minors, schur_complement, RationalMatrix};
pub use poly::RationalPolynomial;
pub use rational::{parse_rational, rat, Rational};
pub use sturm::{count_roots_above, count_roots_positive, zero_multiplicity, SturmChain};

use thiserror::Error;

/// Failure modes of the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// The zero polynomial has no degree-dependent data to report.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    /// Dimensions of the operands do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A Schur complement was requested across a singular eliminated block.
    #[error("eliminated block is singular")]
    SingularEliminatedBlock,
    /// A scalar could not be parsed as `p/q`.
    #[error("malformed rational literal: {0:?}")]
    MalformedRational(String),
}
