//! Breadth-first enumeration of the negative caterpillar region at a fixed
//! spine length: the negative downset, its maximal elements, and the first
//! nonnegative boundary, with diffing against the stored reference tables.
//!
//! The search starts at the minimal canonical parameter `(1, 0, ..., 0, 1)`
//! and expands children only of parameters whose top eigenvalue is negative.
//! Adding a pendant edge never lowers the top eigenvalue, so the nonnegative
//! region is upward closed and the pruning is exact: a parameter is negative
//! exactly when it is reachable. A boundary membership test then needs no
//! extra classification work, because a predecessor that was never reached
//! is itself non-negative.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::classify::{classify_caterpillar, SignClass};
use crate::golden;
use crate::tree::CaterpillarParam;

/// Default cap on the total leaf count during the search.
pub const DEFAULT_GUARD: u64 = 64;

/// Failure modes of the census.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    /// Spine lengths 1 and 2 have infinite negative regions (every star and
    /// every sufficiently asymmetric double star is negative), so the
    /// breadth-first search cannot terminate on them.
    #[error("census needs spine length >= 3, got {0}")]
    SpineTooShort(usize),
    /// A negative parameter reached the leaf-count cap, so expanding it
    /// would silently truncate the search.
    #[error("negative parameter {param} reached the leaf-count guard {guard}")]
    GuardExceeded { param: CaterpillarParam, guard: u64 },
}

/// Timing and size counters of one census run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusStats {
    /// Canonical parameters classified.
    pub classified: usize,
    /// Breadth-first generations expanded.
    pub generations: usize,
    pub wall: Duration,
}

/// Complete census of one spine length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    m: usize,
    signs: BTreeMap<CaterpillarParam, SignClass>,
    negatives: BTreeSet<CaterpillarParam>,
    maximal_negative: BTreeSet<CaterpillarParam>,
    boundary: BTreeSet<CaterpillarParam>,
    stats: CensusStats,
}

impl CensusResult {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Every classified canonical parameter with its sign.
    pub fn signs(&self) -> &BTreeMap<CaterpillarParam, SignClass> {
        &self.signs
    }

    /// The negative downset.
    pub fn negatives(&self) -> &BTreeSet<CaterpillarParam> {
        &self.negatives
    }

    /// Negative parameters all of whose children are non-negative.
    pub fn maximal_negative(&self) -> &BTreeSet<CaterpillarParam> {
        &self.maximal_negative
    }

    /// Non-negative parameters all of whose predecessors are negative.
    pub fn boundary(&self) -> &BTreeSet<CaterpillarParam> {
        &self.boundary
    }

    pub fn stats(&self) -> &CensusStats {
        &self.stats
    }

    /// Boundary members whose top eigenvalue is exactly zero.
    pub fn zero_candidates(&self) -> BTreeSet<CaterpillarParam> {
        self.boundary
            .iter()
            .filter(|p| self.signs.get(p) == Some(&SignClass::Zero))
            .cloned()
            .collect()
    }
}

/// Runs the breadth-first census at spine length `m` with the given
/// leaf-count guard.
pub fn run_census(m: usize, guard: u64) -> Result<CensusResult, CensusError> {
    if m < 3 {
        return Err(CensusError::SpineTooShort(m));
    }
    let start = Instant::now();
    let mut seed = vec![0u32; m];
    seed[0] = 1;
    seed[m - 1] = 1;
    let seed = CaterpillarParam::new(seed).expect("minimal parameter is valid");

    let mut signs: BTreeMap<CaterpillarParam, SignClass> = BTreeMap::new();
    let mut frontier: Vec<CaterpillarParam> = vec![seed];
    let mut generations = 0usize;
    while !frontier.is_empty() {
        generations += 1;
        let classified: Vec<(CaterpillarParam, SignClass)> = frontier
            .par_iter()
            .map(|p| {
                let sign = classify_caterpillar(p)
                    .expect("census parameters have edges")
                    .sign;
                (p.clone(), sign)
            })
            .collect();
        let mut next: BTreeSet<CaterpillarParam> = BTreeSet::new();
        for (p, sign) in classified {
            if sign == SignClass::Negative {
                if p.total_leaves() >= guard {
                    return Err(CensusError::GuardExceeded { param: p, guard });
                }
                for child in p.children() {
                    if !signs.contains_key(&child) {
                        next.insert(child);
                    }
                }
            }
            signs.insert(p, sign);
        }
        next.retain(|p| !signs.contains_key(p));
        frontier = next.into_iter().collect();
    }

    let negatives: BTreeSet<CaterpillarParam> = signs
        .iter()
        .filter(|(_, &s)| s == SignClass::Negative)
        .map(|(p, _)| p.clone())
        .collect();
    // Children of negatives are always classified, so maximality is a pure
    // lookup.
    let maximal_negative: BTreeSet<CaterpillarParam> = negatives
        .iter()
        .filter(|p| {
            p.children()
                .iter()
                .all(|c| signs.get(c).is_some_and(|&s| s != SignClass::Negative))
        })
        .cloned()
        .collect();
    // A predecessor that was never reached is non-negative (the negative
    // region is downward closed and fully explored), so requiring every
    // predecessor to be a known negative is exact.
    let boundary: BTreeSet<CaterpillarParam> = signs
        .iter()
        .filter(|(_, &s)| s != SignClass::Negative)
        .filter(|(p, _)| p.predecessors().iter().all(|q| negatives.contains(q)))
        .map(|(p, _)| p.clone())
        .collect();

    let stats = CensusStats { classified: signs.len(), generations, wall: start.elapsed() };
    Ok(CensusResult { m, signs, negatives, maximal_negative, boundary, stats })
}

/// One category's symmetric difference against the stored reference table.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CategoryDiff {
    /// In the reference table but not produced by the census.
    pub missing: Vec<CaterpillarParam>,
    /// Produced by the census but absent from the reference table.
    pub extra: Vec<CaterpillarParam>,
}

impl CategoryDiff {
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    fn between(got: &BTreeSet<CaterpillarParam>, want: &BTreeSet<CaterpillarParam>) -> Self {
        CategoryDiff {
            missing: want.difference(got).cloned().collect(),
            extra: got.difference(want).cloned().collect(),
        }
    }
}

/// Symmetric differences of a census against the stored tables: maximal
/// negative parameters, boundary, and zero level set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenDiff {
    pub m: usize,
    pub maximal: CategoryDiff,
    pub boundary: CategoryDiff,
    pub zeros: CategoryDiff,
}

impl GoldenDiff {
    pub fn is_empty(&self) -> bool {
        self.maximal.is_empty() && self.boundary.is_empty() && self.zeros.is_empty()
    }
}

/// Compares a census result against the stored tables; `None` when the spine
/// length is outside the tabulated range `3..=12`.
pub fn diff_against_golden(r: &CensusResult) -> Option<GoldenDiff> {
    let maximal_want = golden::maximal_negative(r.m())?;
    let boundary_want = golden::boundary(r.m()).expect("tables cover the same range");
    let zeros_want = golden::zero_set(r.m());
    Some(GoldenDiff {
        m: r.m(),
        maximal: CategoryDiff::between(r.maximal_negative(), &maximal_want),
        boundary: CategoryDiff::between(r.boundary(), &boundary_want),
        zeros: CategoryDiff::between(&r.zero_candidates(), &zeros_want),
    })
}

/// Serializes one category as CSV: header `m,a`, one quoted canonical
/// parameter per row, rows in lexicographic parameter order. The output is
/// byte-stable across runs.
pub fn category_csv(m: usize, params: &BTreeSet<CaterpillarParam>) -> String {
    let mut out = String::from("m,a\n");
    for p in params {
        writeln!(out, "{m},\"{p}\"").expect("string writes cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(a: &[u32]) -> CaterpillarParam {
        CaterpillarParam::new(a.to_vec()).unwrap()
    }

    fn set(rows: &[&[u32]]) -> BTreeSet<CaterpillarParam> {
        rows.iter().map(|r| cat(r)).collect()
    }

    #[test]
    fn rejects_short_spines() {
        assert_eq!(run_census(2, DEFAULT_GUARD), Err(CensusError::SpineTooShort(2)));
        assert_eq!(run_census(1, DEFAULT_GUARD), Err(CensusError::SpineTooShort(1)));
    }

    #[test]
    fn tight_guard_fails_loudly() {
        let err = run_census(3, 2).unwrap_err();
        assert!(matches!(err, CensusError::GuardExceeded { guard: 2, .. }), "{err}");
    }

    #[test]
    fn census_m3() {
        let r = run_census(3, DEFAULT_GUARD).unwrap();
        assert_eq!(
            r.maximal_negative(),
            &set(&[&[1, 1, 2], &[1, 3, 1], &[2, 0, 4], &[1, 0, 8]])
        );
        assert_eq!(
            r.boundary(),
            &set(&[
                &[1, 1, 3],
                &[1, 2, 2],
                &[2, 1, 2],
                &[1, 4, 1],
                &[3, 0, 3],
                &[2, 0, 5],
                &[1, 0, 9],
            ])
        );
        assert_eq!(r.zero_candidates(), set(&[&[1, 4, 1], &[3, 0, 3], &[1, 0, 9]]));
        assert!(diff_against_golden(&r).unwrap().is_empty());
    }

    #[test]
    fn census_m6_zero_candidates_are_the_stable_family() {
        let r = run_census(6, DEFAULT_GUARD).unwrap();
        assert_eq!(r.zero_candidates(), set(&[&[3, 0, 0, 0, 0, 3]]));
        assert!(diff_against_golden(&r).unwrap().is_empty());
    }

    #[test]
    fn census_m12_single_maximal_element() {
        let r = run_census(12, DEFAULT_GUARD).unwrap();
        assert_eq!(r.maximal_negative(), &set(&[&[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3]]));
        assert!(diff_against_golden(&r).unwrap().is_empty());
    }

    #[test]
    fn negatives_are_downward_closed() {
        let r = run_census(4, DEFAULT_GUARD).unwrap();
        for p in r.negatives() {
            for q in p.predecessors() {
                assert!(r.negatives().contains(&q), "{q} missing below {p}");
            }
        }
    }

    #[test]
    fn maximal_children_are_all_nonnegative() {
        let r = run_census(4, DEFAULT_GUARD).unwrap();
        for p in r.maximal_negative() {
            for c in p.children() {
                let sign = r.signs().get(&c).copied();
                assert!(sign.is_some() && sign != Some(SignClass::Negative), "{c}");
            }
        }
    }

    #[test]
    fn census_is_deterministic() {
        let a = run_census(5, DEFAULT_GUARD).unwrap();
        let b = run_census(5, DEFAULT_GUARD).unwrap();
        assert_eq!(a.signs(), b.signs());
        assert_eq!(a.boundary(), b.boundary());
        assert_eq!(a.maximal_negative(), b.maximal_negative());
        assert_eq!(category_csv(5, a.boundary()), category_csv(5, b.boundary()));
    }

    #[test]
    fn perturbed_golden_is_detected() {
        let r = run_census(3, DEFAULT_GUARD).unwrap();
        let mut fake = r.clone();
        fake.maximal_negative.remove(&cat(&[1, 3, 1]));
        fake.maximal_negative.insert(cat(&[1, 3, 2]));
        let diff = diff_against_golden(&fake).unwrap();
        assert!(!diff.is_empty());
        assert_eq!(diff.maximal.missing, vec![cat(&[1, 3, 1])]);
        assert_eq!(diff.maximal.extra, vec![cat(&[1, 3, 2])]);
    }

    #[test]
    fn csv_shape() {
        let rows = set(&[&[1, 0, 9], &[1, 4, 1]]);
        assert_eq!(category_csv(3, &rows), "m,a\n3,\"1,0,9\"\n3,\"1,4,1\"\n");
    }

    #[test]
    fn no_golden_tables_outside_the_documented_range() {
        let r = run_census(13, DEFAULT_GUARD).unwrap();
        assert!(diff_against_golden(&r).is_none());
        // The long-spine law: bare interior, endpoints within 1..=3, and
        // (3,3) excluded from the negatives.
        for p in r.negatives() {
            let a = p.leaf_counts();
            assert!(a[1..12].iter().all(|&x| x == 0), "{p}");
            assert!(a[0] <= 3 && a[12] <= 3 && !(a[0] == 3 && a[12] == 3), "{p}");
        }
    }
}
