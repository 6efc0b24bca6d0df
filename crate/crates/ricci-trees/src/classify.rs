//! Exact sign classification of the top eigenvalue of the edge-index matrix,
//! and a floating-point approximation of the balanced edge weighting.
//!
//! Three classification routes are provided, in decreasing generality and
//! increasing speed:
//!
//! * [`classify_exact`] works on any tree through the full edge-index matrix,
//!   its characteristic polynomial, and Sturm root counts.
//! * [`classify_caterpillar`] works on caterpillar parameters through the
//!   low-dimensional quotient matrix; its eigenvalues are those of the full
//!   matrix minus a strictly negative sibling part, so the sign, the zero
//!   multiplicity, and the positive-root count all agree with the full route.
//!   Descartes' rule on the real-rooted integer characteristic polynomial
//!   decides the counts without any rational root isolation.
//! * [`classify_by_theorem`] is pure table lookup plus comparisons: the
//!   double-star hyperbola at spine length 2, downward closure of the stored
//!   maximal negative parameters for spine lengths 3 through 11, and the
//!   endpoint rule beyond, with the stored zero level set on top.
//!
//! The routes are deliberately independent; the test suites cross-validate
//! them against each other over exhaustive parameter sweeps.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::modular;
use crate::algebra::{char_poly, count_roots_positive, Rational, RationalMatrix};
use crate::golden;
use crate::quotient::build_quotient;
use crate::ricci::{residual, ricci_matrix, RicciError};
use crate::tree::{build_caterpillar, CaterpillarParam, Tree};

/// Sign of the top eigenvalue of the edge-index matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SignClass {
    /// Top eigenvalue strictly below zero: every edge has positive curvature.
    Negative,
    /// Zero is the top eigenvalue: the balanced weighting is flat.
    Zero,
    /// Some eigenvalue lies strictly above zero.
    Positive,
}

impl fmt::Display for SignClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SignClass::Negative => "NEGATIVE",
            SignClass::Zero => "ZERO",
            SignClass::Positive => "POSITIVE",
        };
        f.write_str(s)
    }
}

/// Which matrix a classification was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// The full edge-index matrix of the tree.
    FullMatrix,
    /// The caterpillar quotient matrix on spine-edge and pendant-orbit
    /// coordinates.
    Quotient,
    /// The stored decision rules; no matrix was constructed.
    TheoremRule,
}

/// Outcome of an exact classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub sign: SignClass,
    /// Multiplicity of zero as an eigenvalue.
    pub zero_multiplicity: usize,
    /// Number of distinct eigenvalues strictly above zero.
    pub positive_root_count: usize,
    /// Dimension of the matrix that was analyzed.
    pub matrix_dim: usize,
    pub source: Source,
}

/// Failure modes of classification and of the weight iteration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    /// A single-vertex tree has no edges and hence no edge-index matrix.
    #[error("tree has no edges, so there is no edge-index matrix")]
    NoEdges,
    /// The power iteration hit its iteration cap before converging.
    #[error("weight iteration did not converge within {0} iterations")]
    NonConvergence(usize),
}

impl From<RicciError> for ClassifyError {
    fn from(e: RicciError) -> Self {
        match e {
            RicciError::NoEdges => ClassifyError::NoEdges,
            other => unreachable!("internal call misuse: {other}"),
        }
    }
}

fn classed(zero_multiplicity: usize, positive_root_count: usize) -> SignClass {
    if positive_root_count > 0 {
        SignClass::Positive
    } else if zero_multiplicity > 0 {
        SignClass::Zero
    } else {
        SignClass::Negative
    }
}

/// Classifies any tree through the full edge-index matrix: characteristic
/// polynomial, zero-root multiplicity, and a Sturm count on the positive
/// axis.
pub fn classify_exact(t: &Tree) -> Result<ClassificationResult, ClassifyError> {
    let r = ricci_matrix(t)?;
    let chi = char_poly(&r);
    let zero_multiplicity = chi.zero_root_multiplicity();
    let positive_root_count =
        count_roots_positive(&chi).expect("characteristic polynomial is nonzero");
    Ok(ClassificationResult {
        sign: classed(zero_multiplicity, positive_root_count),
        zero_multiplicity,
        positive_root_count,
        matrix_dim: r.dim(),
        source: Source::FullMatrix,
    })
}

/// Classifies a caterpillar through its quotient matrix.
///
/// The omitted sibling eigenvalues are all strictly negative, so every
/// reported field agrees with [`classify_exact`] on the built tree. The
/// quotient's characteristic polynomial is real-rooted (the matrix is
/// diagonally similar to a symmetric one), which makes Descartes' rule of
/// signs exact: zero variations certifies no positive roots, and the
/// variation count of the squarefree part equals the number of distinct
/// positive roots.
pub fn classify_caterpillar(p: &CaterpillarParam) -> Result<ClassificationResult, ClassifyError> {
    if p.m() == 1 {
        // Stars have no spine edge, hence no quotient; the full matrix is
        // small (one coordinate per leaf).
        return classify_exact(&build_caterpillar(p));
    }
    let q = build_quotient(p).expect("spine length is at least 2");
    debug_assert!(q.symmetrization_holds(), "quotient must be diagonally symmetrizable");
    let scaled = modular::scaled_char_poly(q.matrix());
    let zero_multiplicity = scaled.iter().take_while(|c| c.is_zero()).count();
    let psi = &scaled[zero_multiplicity..];
    let variations = modular::sign_variations(psi);
    let positive_root_count = if variations == 0 {
        0
    } else {
        modular::sign_variations(&modular::squarefree_part_monic(psi))
    };
    Ok(ClassificationResult {
        sign: classed(zero_multiplicity, positive_root_count),
        zero_multiplicity,
        positive_root_count,
        matrix_dim: q.dim(),
        source: Source::Quotient,
    })
}

/// The closed-form double-star rule: the sign of the top eigenvalue matches
/// the sign of `(a-1)(b-1) - 4`.
pub fn double_star_rule(a: u32, b: u32) -> SignClass {
    let product = (a as i64 - 1) * (b as i64 - 1);
    match product.cmp(&4) {
        Ordering::Less => SignClass::Negative,
        Ordering::Equal => SignClass::Zero,
        Ordering::Greater => SignClass::Positive,
    }
}

fn dominated(p: &[u32], q: &[u32]) -> bool {
    p.iter().zip(q).all(|(x, y)| x <= y)
}

/// Classifies a caterpillar by the stored decision rules alone, with no
/// matrix computation: stars are negative; spine length 2 follows
/// [`double_star_rule`]; spine lengths 3 through 11 are negative exactly on
/// the downward closure of the stored maximal negative parameters; from
/// spine length 12 on, negative means bare interior with endpoint leaf
/// counts in `1..=3` other than `(3, 3)`. Zeros are the stored level set:
/// the stable family `(3, 0, ..., 0, 3)` plus the sporadic exceptions.
/// Everything else is positive.
pub fn classify_by_theorem(p: &CaterpillarParam) -> Result<SignClass, ClassifyError> {
    let c = p.canonical();
    let m = c.m();
    let a = c.leaf_counts();
    if m == 1 {
        return if a[0] == 0 { Err(ClassifyError::NoEdges) } else { Ok(SignClass::Negative) };
    }
    if m == 2 {
        return Ok(double_star_rule(a[0], a[1]));
    }
    let negative = if m <= golden::GOLDEN_SPINE_MAX {
        let maximal = golden::maximal_negative(m).expect("table covers 3..=12");
        maximal.iter().any(|t| {
            dominated(a, t.leaf_counts()) || dominated(c.reversed().leaf_counts(), t.leaf_counts())
        })
    } else {
        let interior_bare = a[1..m - 1].iter().all(|&x| x == 0);
        let ends_small = (1..=3).contains(&a[0]) && (1..=3).contains(&a[m - 1]);
        interior_bare && ends_small && !(a[0] == 3 && a[m - 1] == 3)
    };
    if negative {
        return Ok(SignClass::Negative);
    }
    if golden::zero_set(m).contains(&c) {
        return Ok(SignClass::Zero);
    }
    Ok(SignClass::Positive)
}

/// Default convergence tolerance of [`einstein_metric`].
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Iteration cap of [`einstein_metric`].
pub const MAX_ITERATIONS: usize = 1_000_000;

/// Floating approximation of the balanced edge weighting (the positive
/// eigenvector of the edge-index matrix at its top eigenvalue), normalized
/// to maximum entry 1.
#[derive(Debug, Clone)]
pub struct EinsteinMetric {
    /// Per-edge weights in the tree's edge order, maximum entry 1.
    pub weights: Vec<f64>,
    /// Floating estimate of the top eigenvalue.
    pub lambda_estimate: f64,
    /// Certified upper bound on `residual_exact`.
    pub residual_bound: f64,
    /// Exact sup-norm of the eigen-residual of the reported `weights` and
    /// `lambda_estimate`, evaluated in rational arithmetic on their exact
    /// binary values.
    pub residual_exact: Rational,
    /// Iterations performed before convergence.
    pub iterations: usize,
}

/// Approximates the balanced weighting by power iteration on the entrywise
/// nonnegative shift of the edge-index matrix by `2I`.
///
/// Connectedness of the edge-adjacency structure makes the shifted matrix
/// irreducible, and for trees with at least two edges its diagonal is
/// strictly positive, so the iteration converges to the unique positive
/// top-eigenvector direction. The single-edge tree is returned directly.
/// After the iterates stabilize within `tol`, the exact rational residual of
/// the rounded output is computed and certified against `residual_bound`.
pub fn einstein_metric(t: &Tree, tol: f64) -> Result<EinsteinMetric, ClassifyError> {
    assert!(tol > 0.0, "tolerance must be positive");
    let r = ricci_matrix(t)?;
    let n = r.dim();
    if n == 1 {
        return Ok(EinsteinMetric {
            weights: vec![1.0],
            lambda_estimate: -2.0,
            residual_bound: 0.0,
            residual_exact: Rational::zero(),
            iterations: 0,
        });
    }
    let rf = float_rows(&r);
    let mut w = vec![1.0; n];
    for iteration in 1..=MAX_ITERATIONS {
        // One step of w <- normalize((R + 2I) w).
        let mut next: Vec<f64> = mat_vec(&rf, &w);
        for (x, y) in next.iter_mut().zip(&w) {
            *x += 2.0 * y;
        }
        let top = next.iter().fold(0.0f64, |m, &x| m.max(x));
        for x in next.iter_mut() {
            *x /= top;
        }
        let diff = next
            .iter()
            .zip(&w)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0f64, f64::max);
        w = next;
        if diff < tol {
            let lambda = rayleigh_quotient(&rf, &w);
            let float_residual = residual_sup_float(&rf, &w, lambda);
            // Keep iterating until the residual itself is small; agreement
            // of successive iterates alone can be premature.
            if float_residual < 5.0 * tol {
                let (residual_exact, residual_bound) = certified_residual(t, &rf, &w, lambda);
                return Ok(EinsteinMetric {
                    weights: w,
                    lambda_estimate: lambda,
                    residual_bound,
                    residual_exact,
                    iterations: iteration,
                });
            }
        }
    }
    Err(ClassifyError::NonConvergence(MAX_ITERATIONS))
}

fn float_rows(r: &RationalMatrix) -> Vec<Vec<f64>> {
    let n = r.dim();
    (0..n)
        .map(|i| (0..n).map(|j| rational_to_f64(r.get(i, j))).collect())
        .collect()
}

fn rational_to_f64(x: &Rational) -> f64 {
    // Entries of the edge-index matrix have single-digit numerators and
    // denominators bounded by the maximum degree, so the plain quotient is
    // correctly rounded.
    let n: f64 = x.numer().to_string().parse().expect("numeric string");
    let d: f64 = x.denom().to_string().parse().expect("numeric string");
    n / d
}

fn mat_vec(rows: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    rows.iter().map(|row| row.iter().zip(v).map(|(a, x)| a * x).sum()).collect()
}

fn rayleigh_quotient(rows: &[Vec<f64>], w: &[f64]) -> f64 {
    let rw = mat_vec(rows, w);
    let num: f64 = rw.iter().zip(w).map(|(a, b)| a * b).sum();
    let den: f64 = w.iter().map(|x| x * x).sum();
    num / den
}

fn residual_sup_float(rows: &[Vec<f64>], w: &[f64], lambda: f64) -> f64 {
    mat_vec(rows, w)
        .iter()
        .zip(w)
        .map(|(rw, x)| (rw - lambda * x).abs())
        .fold(0.0f64, f64::max)
}

/// Exact rational residual of the floating output, plus a floating upper
/// bound verified by exact comparison.
fn certified_residual(t: &Tree, rf: &[Vec<f64>], w: &[f64], lambda: f64) -> (Rational, f64) {
    let w_exact: Vec<Rational> = w
        .iter()
        .map(|&x| Rational::from_float(x).expect("converged weights are finite"))
        .collect();
    let lambda_exact = Rational::from_float(lambda).expect("converged estimate is finite");
    let rows = residual(t, &w_exact, &lambda_exact).expect("weights are positive");
    let exact = rows.into_iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
    let mut bound = f64::max(residual_sup_float(rf, w, lambda), f64::MIN_POSITIVE) * 1.5;
    while Rational::from_float(bound).map_or(true, |b| exact > b) {
        bound *= 2.0;
    }
    (exact, bound)
}

/// One lattice point of the double-star phase diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhasePoint {
    pub a: u32,
    pub b: u32,
    /// Sign computed from the quotient matrix.
    pub computed: SignClass,
    /// Sign predicted by [`double_star_rule`].
    pub predicted: SignClass,
}

/// Classifies every double star with `1 <= a <= max_a`, `1 <= b <= max_b`
/// through the quotient matrix and pairs each result with the closed-form
/// prediction.
pub fn double_star_phase(max_a: u32, max_b: u32) -> Vec<PhasePoint> {
    let mut out = Vec::with_capacity((max_a * max_b) as usize);
    for a in 1..=max_a {
        for b in 1..=max_b {
            let p = CaterpillarParam::new(vec![a, b]).expect("endpoints are positive");
            let computed = classify_caterpillar(&p)
                .expect("double stars have edges")
                .sign;
            out.push(PhasePoint { a, b, computed, predicted: double_star_rule(a, b) });
        }
    }
    out
}

/// The phase points whose computed and predicted signs disagree; must come
/// back empty.
pub fn phase_mismatches(points: &[PhasePoint]) -> Vec<PhasePoint> {
    points.iter().copied().filter(|p| p.computed != p.predicted).collect()
}
