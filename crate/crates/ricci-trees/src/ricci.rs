//! The edge-indexed Ricci matrix of a tree and the exact quantities read off
//! from it: curvature of a weighting, the quadratic form, and the effect of
//! attaching a leaf.
//!
//! For an edge `{x, y}` write `d_x, d_y` for the endpoint degrees and, given
//! a weight vector `w`, `S_x` for the sum of the weights of all edges at `x`.
//! The matrix `R_T` has diagonal `-(1/d_x + 1/d_y)` and couples two edges
//! sharing a vertex `z` with `1/d_z`. Then `(R_T w)_e = (S_x - 2 w_e)/d_x +
//! (S_y - 2 w_e)/d_y`, and the curvature of a positive weighting is
//! `-(R_T w)_e / w_e` edge by edge: constant-curvature weightings are exactly
//! the positive eigenvectors of `R_T`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{parse_rational, rat, AlgebraError, Rational, RationalMatrix};
use crate::tree::Tree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RicciError {
    #[error("tree has no edges")]
    NoEdges,
    #[error("expected {expected} edge values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("edge weights must be positive (entry {index} is not)")]
    NonpositiveWeight { index: usize },
    #[error("malformed weight input: {0}")]
    Malformed(String),
}

fn inv_degree(t: &Tree, v: u32) -> Rational {
    rat(1, t.degree(v) as i64)
}

/// The edge-indexed Ricci matrix, rows and columns in the tree's edge order.
pub fn ricci_matrix(t: &Tree) -> Result<RationalMatrix, RicciError> {
    let edges = t.edges();
    let n = edges.len();
    if n == 0 {
        return Err(RicciError::NoEdges);
    }
    let mut m = RationalMatrix::zeros(n);
    for (i, &(x, y)) in edges.iter().enumerate() {
        m.set(i, i, -(inv_degree(t, x) + inv_degree(t, y)));
        for (j, &(u, v)) in edges.iter().enumerate().skip(i + 1) {
            let shared = [x, y].iter().copied().find(|&z| z == u || z == v);
            if let Some(z) = shared {
                let c = inv_degree(t, z);
                m.set(i, j, c.clone());
                m.set(j, i, c);
            }
        }
    }
    Ok(m)
}

fn check_dimension(t: &Tree, values: &[Rational]) -> Result<(), RicciError> {
    if t.edge_count() == 0 {
        return Err(RicciError::NoEdges);
    }
    if values.len() != t.edge_count() {
        return Err(RicciError::DimensionMismatch { expected: t.edge_count(), got: values.len() });
    }
    Ok(())
}

/// Per-vertex weight sums `S_v`.
fn vertex_sums(t: &Tree, values: &[Rational]) -> Vec<Rational> {
    let mut s = vec![Rational::zero(); t.vertex_count()];
    for (e, &(x, y)) in t.edges().iter().enumerate() {
        s[x as usize] += &values[e];
        s[y as usize] += &values[e];
    }
    s
}

/// Lin-Lu-Yau edge curvatures of a positive weighting, in edge order.
pub fn lly_curvature(t: &Tree, weights: &[Rational]) -> Result<Vec<Rational>, RicciError> {
    check_dimension(t, weights)?;
    if let Some(index) = weights.iter().position(|w| !w.is_positive()) {
        return Err(RicciError::NonpositiveWeight { index });
    }
    let s = vertex_sums(t, weights);
    Ok(t.edges()
        .iter()
        .enumerate()
        .map(|(e, &(x, y))| {
            let w = &weights[e];
            let two_w = w + w;
            let side = |v: u32| (&s[v as usize] - &two_w) / (rat(t.degree(v) as i64, 1) * w);
            -(side(x) + side(y))
        })
        .collect())
}

/// The quadratic form `<f, R_T f>` evaluated through its vertex
/// decomposition `sum_v (S_v^2 - 2 A_v) / d_v`, where `S_v` and `A_v` are the
/// sum and the sum of squares of `f` over the edges at `v`.
pub fn rayleigh_form(t: &Tree, f: &[Rational]) -> Result<Rational, RicciError> {
    check_dimension(t, f)?;
    let mut s = vec![Rational::zero(); t.vertex_count()];
    let mut a = vec![Rational::zero(); t.vertex_count()];
    for (e, &(x, y)) in t.edges().iter().enumerate() {
        let v = &f[e];
        let sq = v * v;
        s[x as usize] += v;
        s[y as usize] += v;
        a[x as usize] += &sq;
        a[y as usize] += &sq;
    }
    let mut total = Rational::zero();
    for v in 0..t.vertex_count() {
        if t.degree(v as u32) == 0 {
            continue;
        }
        let num = &s[v] * &s[v] - rat(2, 1) * &a[v];
        total += num / rat(t.degree(v as u32) as i64, 1);
    }
    Ok(total)
}

/// `R_T w - lambda w`, computed vertex-wise in linear time.
pub fn residual(t: &Tree, w: &[Rational], lambda: &Rational) -> Result<Vec<Rational>, RicciError> {
    check_dimension(t, w)?;
    let s = vertex_sums(t, w);
    Ok(t.edges()
        .iter()
        .enumerate()
        .map(|(e, &(x, y))| {
            let two_w = &w[e] + &w[e];
            let side = |v: u32| (&s[v as usize] - &two_w) / rat(t.degree(v) as i64, 1);
            side(x) + side(y) - lambda * &w[e]
        })
        .collect())
}

/// Change of the quadratic form when a new leaf edge with value `y` is
/// attached at a vertex of degree `d` where `f` currently has edge sum `s`
/// and edge square sum `a`.
pub fn leaf_attach_delta(d: u32, s: &Rational, a: &Rational, y: &Rational) -> Rational {
    assert!(d >= 1, "attachment vertex must have an edge");
    let d = rat(d as i64, 1);
    let s_new = s + y;
    let a_new = a + y * y;
    (&s_new * &s_new - rat(2, 1) * &a_new) / (&d + rat(1, 1))
        - (s * s - rat(2, 1) * a) / &d
        - y * y
}

/// The maximizing leaf value `y* = s / (d + 2)` and the maximal change
/// `2 (a - s^2 / (d + 2)) / (d (d + 1))` of the quadratic form.
pub fn leaf_attach_best(d: u32, s: &Rational, a: &Rational) -> (Rational, Rational) {
    assert!(d >= 1, "attachment vertex must have an edge");
    let dr = rat(d as i64, 1);
    let d_plus_2 = &dr + rat(2, 1);
    let y_star = s / &d_plus_2;
    let max = rat(2, 1) * (a - s * s / d_plus_2) / (&dr * (&dr + rat(1, 1)));
    (y_star, max)
}

/// Parses one rational per line; blank lines and `#` comments are ignored.
pub fn parse_weights(text: &str) -> Result<Vec<Rational>, RicciError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v = parse_rational(line).map_err(|e| match e {
            AlgebraError::MalformedRational(msg) => {
                RicciError::Malformed(format!("line {}: {}", lineno + 1, msg))
            }
            other => RicciError::Malformed(format!("line {}: {}", lineno + 1, other)),
        })?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(RicciError::Malformed("no values in input".into()));
    }
    Ok(out)
}
