//! Exact spectral sign classification for edge-indexed Ricci matrices of
//! finite trees.
//!
//! The central object is the symmetric matrix `R_T` indexed by the edges of a
//! tree `T`: the diagonal entry of an edge `{x, y}` is `-(1/deg x + 1/deg y)`,
//! and two distinct edges meeting at a vertex `z` couple with `1/deg z`.
//! Whether the largest eigenvalue of `R_T` is negative, zero, or positive
//! decides whether the tree admits an edge metric of constant positive
//! curvature in the Lin-Lu-Yau sense, so everything here funnels into exact
//! decision procedures for that sign: rational characteristic polynomials,
//! Sturm root counts, orbit quotients for caterpillar trees, closed-form
//! Schur complements for long-spine families, a breadth-first census of the
//! negative region, and explicit zero-eigenvector certificates.
//!
//! All decisions are made in exact rational arithmetic; floating point only
//! appears in the optional power-iteration metric estimate, and even there
//! the reported residual bound is evaluated exactly on the rounded output.

pub mod algebra;
pub mod census;
pub mod certs;
pub mod classify;
pub mod golden;
pub mod quotient;
pub mod schur;
pub mod ricci;
pub mod tree;

pub use algebra::{Rational, RationalMatrix, RationalPolynomial, SturmChain};
pub use quotient::{
    build_quotient, sibling_spectrum, spectrum_factorization_check, QuotientMatrices,
};
pub use census::{
    category_csv, diff_against_golden, run_census, CategoryDiff, CensusError, CensusResult,
    CensusStats, GoldenDiff, DEFAULT_GUARD,
};

pub use certs::{
    builtin_certificates, parse_certificates, stable_family_certificate, verify_certificate,
    CertError, TreeSpec, ZeroCertificate,
};

pub use classify::{
    classify_by_theorem, classify_caterpillar, classify_exact, double_star_phase,
    double_star_rule, einstein_metric, phase_mismatches, ClassificationResult, ClassifyError,
    EinsteinMetric, PhasePoint, SignClass, Source,
};

pub use schur::{endpoint_minors_oracle, DefectSchur, EndpointSchur};

pub use ricci::{
    leaf_attach_best, leaf_attach_delta, lly_curvature, rayleigh_form, residual, ricci_matrix,
    RicciError,
};
pub use tree::{
    build_caterpillar, build_named, canonicalize, caterpillar_param_of, CaterpillarParam, Tree,
    TreeError,
};
