//! Reference census data for spine lengths 3 through 12: the maximal
//! negative parameters, the minimal nonnegative boundary, and the sporadic
//! zero-level-set parameters, all canonical under reversal.
//!
//! These sets are what the breadth-first census must reproduce; the census
//! derives them independently and `diff_against_golden` compares.

use std::collections::BTreeSet;

use crate::tree::CaterpillarParam;

/// Spine lengths covered by the maximal-negative and boundary tables.
pub const GOLDEN_SPINE_MIN: usize = 3;
pub const GOLDEN_SPINE_MAX: usize = 12;

fn params(rows: &[&[u32]]) -> BTreeSet<CaterpillarParam> {
    rows.iter()
        .map(|r| CaterpillarParam::new(r.to_vec()).expect("golden data is valid"))
        .collect()
}

/// Maximal elements of the negative region at spine length `m`, for
/// `3 <= m <= 12`.
pub fn maximal_negative(m: usize) -> Option<BTreeSet<CaterpillarParam>> {
    let rows: &[&[u32]] = match m {
        3 => &[&[1, 1, 2], &[1, 3, 1], &[2, 0, 4], &[1, 0, 8]],
        4 => &[&[1, 0, 2, 1], &[1, 1, 0, 2], &[1, 0, 0, 5], &[2, 0, 0, 4]],
        5 => &[&[1, 0, 1, 0, 1], &[1, 1, 0, 0, 2], &[1, 0, 0, 0, 4], &[2, 0, 0, 0, 3]],
        6 => &[
            &[1, 0, 0, 1, 0, 1],
            &[1, 1, 0, 0, 0, 2],
            &[1, 0, 0, 0, 0, 4],
            &[2, 0, 0, 0, 0, 3],
        ],
        7 => &[&[1, 1, 0, 0, 0, 0, 2], &[1, 0, 0, 0, 0, 0, 4], &[2, 0, 0, 0, 0, 0, 3]],
        8 => &[&[1, 1, 0, 0, 0, 0, 0, 2], &[2, 0, 0, 0, 0, 0, 0, 3]],
        9 => &[&[1, 0, 0, 0, 0, 0, 0, 1, 1], &[2, 0, 0, 0, 0, 0, 0, 0, 3]],
        10 => &[&[1, 0, 0, 0, 0, 0, 0, 0, 1, 1], &[2, 0, 0, 0, 0, 0, 0, 0, 0, 3]],
        11 => &[&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1], &[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3]],
        12 => &[&[2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3]],
        _ => return None,
    };
    Some(params(rows))
}

/// Minimal nonnegative boundary at spine length `m`, for `3 <= m <= 12`.
pub fn boundary(m: usize) -> Option<BTreeSet<CaterpillarParam>> {
    let rows: &[&[u32]] = match m {
        3 => &[
            &[1, 1, 3],
            &[1, 2, 2],
            &[2, 1, 2],
            &[1, 4, 1],
            &[3, 0, 3],
            &[2, 0, 5],
            &[1, 0, 9],
        ],
        4 => &[
            &[1, 0, 1, 2],
            &[1, 1, 1, 1],
            &[1, 0, 3, 1],
            &[1, 1, 0, 3],
            &[1, 2, 0, 2],
            &[3, 0, 0, 3],
            &[1, 0, 0, 6],
            &[2, 0, 0, 5],
        ],
        5 => &[
            &[1, 0, 0, 1, 2],
            &[1, 0, 0, 2, 1],
            &[1, 0, 1, 0, 2],
            &[1, 0, 1, 1, 1],
            &[1, 0, 2, 0, 1],
            &[1, 1, 0, 1, 1],
            &[1, 1, 0, 0, 3],
            &[1, 0, 0, 0, 5],
            &[2, 0, 0, 0, 4],
            &[3, 0, 0, 0, 3],
        ],
        6 => &[
            &[1, 0, 0, 0, 1, 2],
            &[1, 0, 0, 0, 2, 1],
            &[1, 0, 0, 1, 0, 2],
            &[1, 0, 0, 1, 1, 1],
            &[1, 0, 0, 2, 0, 1],
            &[1, 0, 1, 0, 0, 2],
            &[1, 0, 1, 0, 1, 1],
            &[1, 0, 1, 1, 0, 1],
            &[1, 1, 0, 0, 1, 1],
            &[1, 1, 0, 0, 0, 3],
            &[1, 0, 0, 0, 0, 5],
            &[2, 0, 0, 0, 0, 4],
            &[3, 0, 0, 0, 0, 3],
        ],
        7 => &[
            &[1, 0, 0, 0, 1, 0, 1],
            &[1, 0, 0, 1, 0, 0, 1],
            &[1, 0, 0, 0, 0, 1, 2],
            &[1, 0, 0, 0, 0, 2, 1],
            &[1, 1, 0, 0, 0, 1, 1],
            &[1, 1, 0, 0, 0, 0, 3],
            &[1, 0, 0, 0, 0, 0, 5],
            &[2, 0, 0, 0, 0, 0, 4],
            &[3, 0, 0, 0, 0, 0, 3],
        ],
        8 => &[
            &[1, 0, 0, 0, 0, 1, 0, 1],
            &[1, 0, 0, 0, 1, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0, 1, 2],
            &[1, 0, 0, 0, 0, 0, 2, 1],
            &[1, 1, 0, 0, 0, 0, 1, 1],
            &[1, 0, 0, 0, 0, 0, 0, 4],
            &[1, 1, 0, 0, 0, 0, 0, 3],
            &[3, 0, 0, 0, 0, 0, 0, 3],
        ],
        9 => &[
            &[1, 0, 0, 0, 0, 0, 1, 0, 1],
            &[1, 0, 0, 0, 0, 1, 0, 0, 1],
            &[1, 0, 0, 0, 1, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0, 0, 1, 2],
            &[1, 0, 0, 0, 0, 0, 0, 2, 1],
            &[1, 1, 0, 0, 0, 0, 0, 0, 2],
            &[1, 1, 0, 0, 0, 0, 0, 1, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 4],
            &[3, 0, 0, 0, 0, 0, 0, 0, 3],
        ],
        10 => &[
            &[1, 0, 0, 0, 0, 0, 0, 1, 0, 1],
            &[1, 0, 0, 0, 0, 0, 1, 0, 0, 1],
            &[1, 0, 0, 0, 0, 1, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 1, 2],
            &[1, 0, 0, 0, 0, 0, 0, 0, 2, 1],
            &[1, 1, 0, 0, 0, 0, 0, 0, 0, 2],
            &[1, 1, 0, 0, 0, 0, 0, 0, 1, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 4],
            &[3, 0, 0, 0, 0, 0, 0, 0, 0, 3],
        ],
        11 => &[
            &[1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1],
            &[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2],
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 2, 1],
            &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 2],
            &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
            &[3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3],
        ],
        12 => &[
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
            &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4],
            &[3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3],
        ],
        _ => return None,
    };
    Some(params(rows))
}

/// Sporadic zero-level-set parameters at spine length `m` (empty when there
/// are none). Together with the stable family these are all caterpillar
/// zeros.
pub fn sporadic_zeros(m: usize) -> BTreeSet<CaterpillarParam> {
    let rows: &[&[u32]] = match m {
        2 => &[&[2, 5]],
        3 => &[&[1, 4, 1], &[1, 0, 9]],
        4 => &[&[1, 0, 0, 6]],
        5 => &[&[2, 0, 0, 0, 4], &[1, 0, 0, 0, 5]],
        8 => &[&[1, 0, 0, 0, 0, 0, 0, 4]],
        9 => &[&[1, 1, 0, 0, 0, 0, 0, 0, 2]],
        12 => &[&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1]],
        _ => &[],
    };
    params(rows)
}

/// The stable zero family member `(3, 0, ..., 0, 3)` at spine length
/// `m >= 2`.
pub fn stable_zero(m: usize) -> Option<CaterpillarParam> {
    if m < 2 {
        return None;
    }
    let mut a = vec![0u32; m];
    a[0] = 3;
    a[m - 1] = 3;
    Some(CaterpillarParam::new(a).expect("stable family parameter"))
}

/// The complete zero level set at spine length `m >= 2`: the stable family
/// member plus the sporadic exceptions.
pub fn zero_set(m: usize) -> BTreeSet<CaterpillarParam> {
    let mut out = sporadic_zeros(m);
    if let Some(s) = stable_zero(m) {
        out.insert(s);
    }
    out
}
