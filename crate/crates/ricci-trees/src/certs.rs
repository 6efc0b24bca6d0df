//! Zero-level certificates: positive integer edge weightings annihilated by
//! the edge-index matrix, embedded as diffable static data.
//!
//! A strictly positive null vector pins the top eigenvalue at zero by
//! Perron–Frobenius, so each certificate is a self-contained exactness proof
//! for one tree on the zero level set. Verification checks the residual in
//! rational arithmetic and independently re-derives the sign class through
//! the polynomial route.
//!
//! The stored set covers the nine finite exceptional caterpillars, the
//! three-legged spider of leg length two, and (generated on demand) the
//! stable family `(3, 0, ..., 0, 3)` whose weights are 3 on every spine edge
//! and 1 on every pendant edge.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{rat, Rational};
use crate::classify::{classify_exact, SignClass};
use crate::ricci::residual;
use crate::tree::{build_caterpillar, build_named, CaterpillarParam, Tree, TreeError};

/// Failure modes of certificate handling.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    /// A record that does not follow `spec|spine|groups` with positive
    /// integer weights.
    #[error("malformed certificate record: {0}")]
    Malformed(String),
    /// Weight layout does not fit the tree.
    #[error("certificate carries {got} weights but the tree has {expected} edges")]
    DimensionMismatch { expected: usize, got: usize },
    /// The tree spec itself does not build.
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// The tree a certificate refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeSpec {
    Caterpillar(CaterpillarParam),
    /// A named builder spec such as `s32`.
    Named(String),
}

impl fmt::Display for TreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeSpec::Caterpillar(p) => write!(f, "{p}"),
            TreeSpec::Named(n) => write!(f, "@{n}"),
        }
    }
}

/// One positive integer null vector for one tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCertificate {
    tree_spec: TreeSpec,
    spine_weights: Vec<u64>,
    pendant_groups: Vec<Vec<u64>>,
}

impl ZeroCertificate {
    pub fn tree_spec(&self) -> &TreeSpec {
        &self.tree_spec
    }

    /// Parses one `spec|spine_weights|pendant_groups` record.
    pub fn parse(line: &str) -> Result<Self, CertError> {
        let bad = |why: &str| CertError::Malformed(format!("{why} in {line:?}"));
        let mut parts = line.split('|');
        let (spec, spine, groups) = match (parts.next(), parts.next(), parts.next(), parts.next())
        {
            (Some(a), Some(b), Some(c), None) => (a.trim(), b.trim(), c.trim()),
            _ => return Err(bad("expected exactly three |-separated fields")),
        };
        let tree_spec = match spec.strip_prefix('@') {
            Some(name) => TreeSpec::Named(name.to_string()),
            None => TreeSpec::Caterpillar(spec.parse::<CaterpillarParam>()?),
        };
        let weight = |tok: &str| -> Result<u64, CertError> {
            let v: u64 = tok.trim().parse().map_err(|_| bad("weights must be integers"))?;
            if v == 0 {
                return Err(bad("weights must be strictly positive"));
            }
            Ok(v)
        };
        let spine_weights =
            spine.split(',').map(weight).collect::<Result<Vec<u64>, CertError>>()?;
        let pendant_groups = groups
            .split(';')
            .map(|g| g.split(',').map(weight).collect::<Result<Vec<u64>, CertError>>())
            .collect::<Result<Vec<Vec<u64>>, CertError>>()?;
        Ok(ZeroCertificate { tree_spec, spine_weights, pendant_groups })
    }

    /// Serializes back to the line format accepted by [`Self::parse`].
    pub fn format(&self) -> String {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let groups =
            self.pendant_groups.iter().map(|g| join(g)).collect::<Vec<_>>().join(";");
        format!("{}|{}|{}", self.tree_spec, join(&self.spine_weights), groups)
    }

    /// Builds the certified tree.
    pub fn tree(&self) -> Result<Tree, CertError> {
        match &self.tree_spec {
            TreeSpec::Caterpillar(p) => Ok(build_caterpillar(p)),
            TreeSpec::Named(n) => Ok(build_named(n)?),
        }
    }

    /// The full weight vector in the builder's edge order: spine edges
    /// first, then pendant edges grouped by spine vertex.
    pub fn weights(&self) -> Vec<Rational> {
        self.spine_weights
            .iter()
            .chain(self.pendant_groups.iter().flatten())
            .map(|&v| rat(v as i64, 1))
            .collect()
    }
}

/// Parses a whole certificate file: one record per line, `#` comments and
/// blank lines skipped.
pub fn parse_certificates(text: &str) -> Result<Vec<ZeroCertificate>, CertError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(ZeroCertificate::parse)
        .collect()
}

/// The embedded certificates: the nine finite exceptional caterpillars and
/// the three-legged spider.
pub fn builtin_certificates() -> Vec<ZeroCertificate> {
    parse_certificates(include_str!("../data/zero_certificates.txt"))
        .expect("embedded certificate data is well formed")
}

/// Certificate for the stable family member `(3, 0, ..., 0, 3)` at spine
/// length `m >= 2`: weight 3 on every spine edge, 1 on every pendant edge.
pub fn stable_family_certificate(m: usize) -> Result<ZeroCertificate, CertError> {
    if m < 2 {
        return Err(CertError::Malformed(format!(
            "stable family starts at spine length 2, got {m}"
        )));
    }
    let mut a = vec![0u32; m];
    a[0] = 3;
    a[m - 1] = 3;
    Ok(ZeroCertificate {
        tree_spec: TreeSpec::Caterpillar(CaterpillarParam::new(a).expect("valid parameter")),
        spine_weights: vec![3; m - 1],
        pendant_groups: vec![vec![1, 1, 1], vec![1, 1, 1]],
    })
}

/// Checks a certificate exactly: the weight layout must fit the tree, the
/// rational residual at eigenvalue zero must vanish on every edge, and the
/// polynomial classifier must independently return [`SignClass::Zero`].
pub fn verify_certificate(c: &ZeroCertificate) -> Result<bool, CertError> {
    let t = c.tree()?;
    let w = c.weights();
    if let TreeSpec::Caterpillar(p) = &c.tree_spec {
        // The group layout must mirror the leaf counts position by position.
        let leafed: Vec<u32> =
            p.leaf_counts().iter().copied().filter(|&x| x > 0).collect();
        let shape: Vec<u32> = c.pendant_groups.iter().map(|g| g.len() as u32).collect();
        if leafed != shape {
            return Err(CertError::Malformed(format!(
                "pendant groups {shape:?} do not match leaf counts of {p}"
            )));
        }
    }
    if w.len() != t.edge_count() {
        return Err(CertError::DimensionMismatch { expected: t.edge_count(), got: w.len() });
    }
    let rows = residual(&t, &w, &Rational::zero()).expect("weights are positive");
    if rows.iter().any(|x| !x.is_zero()) {
        return Ok(false);
    }
    let class = classify_exact(&t).expect("certified trees have edges");
    Ok(class.sign == SignClass::Zero)
}
