//! Orbit quotient of the Ricci matrix of a caterpillar.
//!
//! Pendant edges hanging off the same spine vertex are interchangeable, so
//! the Ricci matrix acts on the subspace of vectors constant on each pendant
//! group. In coordinates (one per spine edge, one per nonempty pendant
//! group) that action is the coordinate matrix `M`: small, rational, and
//! carrying exactly the spectrum of `R_T` minus the sibling eigenvalues.
//!
//! `M` is not symmetric, but conjugating by `D = diag(sqrt(orbit size))`
//! makes it so; the matrix `G = D^2 M = D (D M D^{-1}) D` is rational,
//! symmetric whenever the construction is coherent, and congruent to the
//! symmetrized form, which is what certifies that every eigenvalue of `M` is
//! real and that Schur complements preserve inertia.

use num_traits::{Signed, Zero};

use crate::algebra::{char_poly, rat, Rational, RationalMatrix, RationalPolynomial};
use crate::ricci::ricci_matrix;
use crate::tree::{build_caterpillar, CaterpillarParam, TreeError};

/// What a quotient coordinate ranges over: the spine edge between spine
/// vertices `j` and `j + 1`, or the pendant group at spine vertex `i`
/// (both 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientCoord {
    SpineEdge(usize),
    PendantOrbit(usize),
}

/// Entry of the symmetrized quotient, carried as `sign * sqrt(radicand)` to
/// stay exact: off-diagonal entries mix `1/d` with `sqrt(a)/d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalEntry {
    pub negative: bool,
    pub radicand: Rational,
}

impl RadicalEntry {
    fn from_square(negative: bool, radicand: Rational) -> Self {
        if radicand.is_zero() {
            Self { negative: false, radicand }
        } else {
            Self { negative, radicand }
        }
    }
}

/// The quotient data of a caterpillar with spine length at least two.
#[derive(Debug, Clone)]
pub struct QuotientMatrices {
    param: CaterpillarParam,
    matrix: RationalMatrix,
    coords: Vec<QuotientCoord>,
    orbit_sizes: Vec<u32>,
}

/// Degree of 1-based spine vertex `i`: its spine neighbors plus its leaves.
fn spine_degree(p: &CaterpillarParam, i: usize) -> i64 {
    let m = p.m();
    let q = if m == 1 {
        0
    } else if i == 1 || i == m {
        1
    } else {
        2
    };
    q + p.leaf_counts()[i - 1] as i64
}

/// Builds the quotient coordinate matrix for a spine of length `m >= 2`.
/// Coordinates: spine edges left to right, then pendant groups in spine
/// order.
pub fn build_quotient(p: &CaterpillarParam) -> Result<QuotientMatrices, TreeError> {
    let m = p.m();
    if m < 2 {
        return Err(TreeError::InvalidParameter(
            "quotient requires spine length >= 2 (a star is already its own quotient)".into(),
        ));
    }
    let a = p.leaf_counts();
    let mut coords: Vec<QuotientCoord> = (1..m).map(QuotientCoord::SpineEdge).collect();
    coords.extend((1..=m).filter(|&i| a[i - 1] > 0).map(QuotientCoord::PendantOrbit));
    let index_of = |c: QuotientCoord| coords.iter().position(|&x| x == c).unwrap();

    let d = |i: usize| spine_degree(p, i);
    let n = coords.len();
    let mut matrix = RationalMatrix::zeros(n);
    for (row, &c) in coords.iter().enumerate() {
        match c {
            QuotientCoord::SpineEdge(j) => {
                // Edge {v_j, v_{j+1}}: neighbors through both endpoints.
                if j > 1 {
                    matrix.set(row, index_of(QuotientCoord::SpineEdge(j - 1)), rat(1, d(j)));
                }
                matrix.set(row, row, -(rat(1, d(j)) + rat(1, d(j + 1))));
                if j + 1 < m {
                    matrix.set(row, index_of(QuotientCoord::SpineEdge(j + 1)), rat(1, d(j + 1)));
                }
                if a[j - 1] > 0 {
                    matrix.set(
                        row,
                        index_of(QuotientCoord::PendantOrbit(j)),
                        rat(a[j - 1] as i64, d(j)),
                    );
                }
                if a[j] > 0 {
                    matrix.set(
                        row,
                        index_of(QuotientCoord::PendantOrbit(j + 1)),
                        rat(a[j] as i64, d(j + 1)),
                    );
                }
            }
            QuotientCoord::PendantOrbit(i) => {
                // One pendant edge at v_i; its a_i - 1 siblings share the
                // coordinate, folding into the diagonal.
                if i > 1 {
                    matrix.set(row, index_of(QuotientCoord::SpineEdge(i - 1)), rat(1, d(i)));
                }
                if i < m {
                    matrix.set(row, index_of(QuotientCoord::SpineEdge(i)), rat(1, d(i)));
                }
                let ai = a[i - 1] as i64;
                matrix.set(row, row, rat(-1, 1) + rat(ai - 2, d(i)));
            }
        }
    }
    let orbit_sizes = coords
        .iter()
        .map(|&c| match c {
            QuotientCoord::SpineEdge(_) => 1,
            QuotientCoord::PendantOrbit(i) => a[i - 1],
        })
        .collect();
    Ok(QuotientMatrices { param: p.clone(), matrix, coords, orbit_sizes })
}

impl QuotientMatrices {
    pub fn param(&self) -> &CaterpillarParam {
        &self.param
    }

    /// The coordinate matrix `M`.
    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn coords(&self) -> &[QuotientCoord] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Orbit size of each coordinate (1 for spine edges, `a_i` for pendant
    /// groups); the squares of the conjugating diagonal.
    pub fn orbit_sizes(&self) -> &[u32] {
        &self.orbit_sizes
    }

    /// `G = D^2 M` with `D = diag(sqrt(orbit size))`. `G` is symmetric and
    /// congruent to the symmetrized quotient `D M D^{-1}`, so it shares that
    /// matrix's inertia and certifies that the eigenvalues of `M` are real.
    pub fn gram(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.dim(), |i, j| {
            self.matrix.get(i, j) * rat(self.orbit_sizes[i] as i64, 1)
        })
    }

    /// Entry `(i, j)` of the symmetrized quotient `Q = D M D^{-1}`, exactly,
    /// as a signed square root: `Q_ij^2 = M_ij^2 * s_i / s_j` with `s` the
    /// orbit sizes.
    pub fn symmetrized_entry(&self, i: usize, j: usize) -> RadicalEntry {
        let mij = self.matrix.get(i, j);
        let ratio = rat(self.orbit_sizes[i] as i64, self.orbit_sizes[j] as i64);
        RadicalEntry::from_square(mij.is_negative(), mij * mij * ratio)
    }

    /// Whether the symmetrized quotient really is symmetric, checked
    /// exactly through the rational matrix `G`.
    pub fn symmetrization_holds(&self) -> bool {
        self.gram().is_symmetric()
    }
}

/// The eigenvalues of `R_T` that the quotient discards: each spine vertex
/// with `a_i >= 2` pendant edges contributes `-1 - 2/d_i` with multiplicity
/// `a_i - 1` (differences of sibling pendant coordinates). Works for all
/// spine lengths including stars. Returns (eigenvalue, multiplicity) pairs
/// in ascending eigenvalue order with duplicates merged.
pub fn sibling_spectrum(p: &CaterpillarParam) -> Vec<(Rational, usize)> {
    let mut merged: std::collections::BTreeMap<Rational, usize> = Default::default();
    for i in 1..=p.m() {
        let a = p.leaf_counts()[i - 1];
        if a >= 2 {
            let d = spine_degree(p, i);
            *merged.entry(rat(-1, 1) - rat(2, d)).or_insert(0) += (a - 1) as usize;
        }
    }
    merged.into_iter().collect()
}

/// Verifies the spectrum factorization `char(R_T) = char(M) * prod over
/// sibling eigenvalues of (x - mu)^mult` by exact polynomial arithmetic.
pub fn spectrum_factorization_check(p: &CaterpillarParam) -> Result<bool, TreeError> {
    let q = build_quotient(p)?;
    let t = build_caterpillar(p);
    let full = char_poly(&ricci_matrix(&t).expect("caterpillar with m >= 2 has edges"));
    let mut product = char_poly(q.matrix());
    for (mu, mult) in sibling_spectrum(p) {
        let linear = RationalPolynomial::from_coeffs(vec![-mu, rat(1, 1)]);
        product = product.mul(&linear.pow(mult as u32));
    }
    Ok(full == product)
}
