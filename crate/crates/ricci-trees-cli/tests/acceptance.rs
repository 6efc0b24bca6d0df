//! The acceptance gate: twelve end-to-end checks covering table
//! reproduction, boundary extraction, zero certificates, closed-form Schur
//! identities, engine agreement, law spot checks, and the path asymptotics.
//! Each test prints one PASS line (visible with `--nocapture`); a failure
//! names the offending parameter exactly.

use std::collections::BTreeMap;
use std::process::Command;
use std::sync::OnceLock;

use rayon::prelude::*;
use ricci_trees::algebra::{char_poly, count_roots_above, fraction_free_det, rat};
use ricci_trees::census::{run_census, CensusResult, DEFAULT_GUARD};
use ricci_trees::certs::{
    builtin_certificates, stable_family_certificate, verify_certificate, TreeSpec,
};
use ricci_trees::classify::{
    classify_by_theorem, classify_caterpillar, classify_exact, double_star_phase,
    double_star_rule, phase_mismatches, ClassificationResult, SignClass,
};
use ricci_trees::golden;
use ricci_trees::quotient::spectrum_factorization_check;
use ricci_trees::ricci::{rayleigh_form, ricci_matrix};
use ricci_trees::schur::{endpoint_minors_oracle, DefectSchur, EndpointSchur};
use ricci_trees::tree::{
    build_caterpillar, build_named, defect_param, endpoint_param, star, CaterpillarParam, Tree,
};

/// One census per tabulated spine length, computed once and shared.
fn censuses() -> &'static Vec<CensusResult> {
    static CENSUSES: OnceLock<Vec<CensusResult>> = OnceLock::new();
    CENSUSES.get_or_init(|| {
        (golden::GOLDEN_SPINE_MIN..=golden::GOLDEN_SPINE_MAX)
            .map(|m| run_census(m, DEFAULT_GUARD).expect("the census fits the default guard"))
            .collect()
    })
}

/// All canonical caterpillar parameters with spine length `m` and at most
/// `budget` leaves in total.
fn canonical_params(m: usize, budget: u32) -> Vec<CaterpillarParam> {
    fn rec(prefix: &mut Vec<u32>, m: usize, left: u32, out: &mut Vec<CaterpillarParam>) {
        let idx = prefix.len();
        if idx == m {
            let p = CaterpillarParam::new(prefix.clone()).expect("endpoints are positive");
            if p.is_canonical() {
                out.push(p);
            }
            return;
        }
        let lo = if idx == 0 || idx == m - 1 { 1 } else { 0 };
        for v in lo..=left {
            prefix.push(v);
            rec(prefix, m, left - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 1 {
        for k in 1..=budget {
            out.push(CaterpillarParam::new(vec![k]).expect("a star parameter"));
        }
    } else if budget >= 2 {
        rec(&mut Vec::with_capacity(m), m, budget, &mut out);
    }
    out
}

struct SweepEntry {
    full: ClassificationResult,
    quotient: ClassificationResult,
}

/// Exhaustive sweep over spine length at most 6, at most 8 leaves, with both
/// classification engines' results.
fn small_sweep() -> &'static BTreeMap<CaterpillarParam, SweepEntry> {
    static SWEEP: OnceLock<BTreeMap<CaterpillarParam, SweepEntry>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut out = BTreeMap::new();
        for m in 1..=6 {
            for p in canonical_params(m, 8) {
                let full = classify_exact(&build_caterpillar(&p)).expect("the tree has edges");
                let quotient = classify_caterpillar(&p).expect("the tree has edges");
                out.insert(p, SweepEntry { full, quotient });
            }
        }
        out
    })
}

#[test]
fn a01_maximal_negative_parameters_match_the_stored_tables() {
    let output = Command::new(env!("CARGO_BIN_EXE_ricci-trees"))
        .args(["enumerate", "--m-min", "3", "--m-max", "12", "--diff-golden"])
        .output()
        .expect("the binary runs");
    assert!(
        output.status.success(),
        "enumerate --diff-golden failed:\n{}\n{}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr),
    );
    for census in censuses() {
        let want = golden::maximal_negative(census.m()).expect("the range is tabulated");
        assert_eq!(census.maximal_negative(), &want, "maximal set at m={}", census.m());
    }
    println!("PASS: the census reproduces every stored maximal negative parameter for spine lengths 3..=12");
}

#[test]
fn a02_first_nonnegative_boundary_matches_the_stored_tables() {
    for census in censuses() {
        let want = golden::boundary(census.m()).expect("the range is tabulated");
        assert_eq!(census.boundary(), &want, "boundary set at m={}", census.m());
    }
    println!("PASS: the census reproduces the stored first non-negative boundary for spine lengths 3..=12");
}

#[test]
fn a03_zero_level_set_is_exactly_the_stored_exceptions() {
    for census in censuses() {
        let want = golden::zero_set(census.m());
        assert_eq!(census.zero_candidates(), want, "zero set at m={}", census.m());
    }

    // Spine length 2 is decided by the closed rule; cross-check it against
    // the quotient engine and collect the zeros.
    let mut two_zeros = Vec::new();
    for a in 1..=10u32 {
        for b in 1..=10u32 {
            let p = CaterpillarParam::new(vec![a, b]).unwrap();
            let computed = classify_caterpillar(&p).unwrap().sign;
            assert_eq!(computed, double_star_rule(a, b), "double star {p}");
            if computed == SignClass::Zero && p.is_canonical() {
                two_zeros.push(p);
            }
        }
    }
    let want: Vec<CaterpillarParam> = [vec![2, 5], vec![3, 3]]
        .into_iter()
        .map(|v| CaterpillarParam::new(v).unwrap())
        .collect();
    assert_eq!(two_zeros, want, "zeros at spine length 2");

    // The one zero-level tree that is not a caterpillar, and its upward
    // neighbors.
    let spider = build_named("s32").unwrap();
    assert_eq!(classify_exact(&spider).unwrap().sign, SignClass::Zero);
    for v in 0..spider.vertex_count() {
        let mut edges = spider.edges().to_vec();
        edges.push((v as u32, spider.vertex_count() as u32));
        let grown = Tree::new(spider.vertex_count() + 1, edges).unwrap();
        assert_eq!(
            classify_exact(&grown).unwrap().sign,
            SignClass::Positive,
            "pendant at vertex {v}"
        );
    }
    println!("PASS: zero level sets match the stored exceptions, the closed rule at spine length 2, and the subdivided star");
}

#[test]
fn a04_zero_certificates_verify_exactly() {
    let builtins = builtin_certificates();
    assert_eq!(builtins.len(), 10, "nine caterpillar certificates plus the spider");
    let named = builtins.iter().filter(|c| matches!(c.tree_spec(), TreeSpec::Named(_))).count();
    assert_eq!(named, 1, "exactly one non-caterpillar certificate");
    for cert in &builtins {
        assert!(verify_certificate(cert).unwrap(), "embedded certificate {}", cert.format());
    }
    for m in 2..=20 {
        let cert = stable_family_certificate(m).unwrap();
        assert!(verify_certificate(&cert).unwrap(), "stable family m={m}");
    }
    println!("PASS: all embedded certificates and the stable family through spine length 20 have exactly vanishing residuals and classify ZERO");
}

#[test]
fn a05_closed_form_schur_identities_hold() {
    let mut defect_cases = 0usize;
    for m in 4..=20 {
        for i in 2..=m - 1 {
            let form = DefectSchur::new(m, i).unwrap();
            assert_eq!(
                fraction_free_det(&form.matrix()),
                form.det_closed(),
                "defect determinant at m={m}, i={i}"
            );
            defect_cases += 1;
        }
    }
    let mut endpoint_cases = 0usize;
    for m in 2..=20 {
        for a in 1..=8 {
            for b in 1..=8 {
                let form = EndpointSchur::new(m, a, b).unwrap();
                assert_eq!(
                    endpoint_minors_oracle(&form),
                    form.minors_closed(),
                    "endpoint minors at m={m}, a={a}, b={b}"
                );
                endpoint_cases += 1;
            }
        }
    }
    println!("PASS: {defect_cases} defect determinants and {endpoint_cases} endpoint minor vectors match their closed forms exactly");
}

#[test]
fn a06_star_law_holds_to_fifty_leaves() {
    for k in 1..=50u32 {
        let t = star(k);
        let result = classify_exact(&t).unwrap();
        assert_eq!(result.sign, SignClass::Negative, "star with {k} leaves");
        let chi = char_poly(&ricci_matrix(&t).unwrap());
        let top = rat(-2, k as i64);
        assert_eq!(chi.eval(&top), rat(0, 1), "-2/{k} must be an eigenvalue");
        assert_eq!(
            count_roots_above(&chi, &top).unwrap(),
            0,
            "-2/{k} must be the largest eigenvalue"
        );
    }
    println!("PASS: every star through 50 leaves is negative with top eigenvalue exactly -2/k");
}

#[test]
fn a07_double_star_grid_matches_the_hyperbola_rule() {
    let points = double_star_phase(20, 20);
    assert_eq!(points.len(), 400);
    let bad = phase_mismatches(&points);
    assert!(bad.is_empty(), "mismatching grid points: {bad:?}");
    println!("PASS: all 400 double stars match the (a-1)(b-1) threshold rule");
}

#[test]
fn a08_engines_agree_on_exhaustive_sweeps() {
    for (p, entry) in small_sweep() {
        assert_eq!(entry.quotient.sign, entry.full.sign, "sign at {p}");
        assert_eq!(
            entry.quotient.zero_multiplicity, entry.full.zero_multiplicity,
            "kernel dimension at {p}"
        );
        assert_eq!(
            entry.quotient.positive_root_count, entry.full.positive_root_count,
            "positive eigenvalue count at {p}"
        );
    }

    let mut rule_checked = 0usize;
    for m in 1..=13 {
        let params = canonical_params(m, 10);
        let signs: Vec<(SignClass, SignClass)> = params
            .par_iter()
            .map(|p| {
                (
                    classify_by_theorem(p).expect("the tree has edges"),
                    classify_caterpillar(p).expect("the tree has edges").sign,
                )
            })
            .collect();
        for (p, (by_rule, by_quotient)) in params.iter().zip(&signs) {
            assert_eq!(by_rule, by_quotient, "rule disagrees with the quotient engine at {p}");
        }
        rule_checked += params.len();
    }
    println!(
        "PASS: quotient and full-matrix engines agree on {} parameters; the rule table agrees with the quotient engine on {} parameters",
        small_sweep().len(),
        rule_checked
    );
}

#[test]
fn a09_characteristic_polynomial_factorization() {
    let mut checked = 0usize;
    for p in small_sweep().keys() {
        if p.m() >= 2 {
            assert!(spectrum_factorization_check(p).unwrap(), "factorization at {p}");
            checked += 1;
        }
    }
    println!("PASS: the sibling eigenvalue factorization holds on {checked} parameters");
}

#[test]
fn a10_monotonicity_of_the_sign_region() {
    let sweep = small_sweep();
    let mut predecessor_checks = 0usize;
    let mut child_checks = 0usize;
    for (p, entry) in sweep {
        match entry.quotient.sign {
            SignClass::Negative => {
                for q in p.predecessors() {
                    if q.m() == 1 && q.total_leaves() == 0 {
                        // The bare-vertex predecessor has no edges, hence no
                        // spectrum to compare.
                        continue;
                    }
                    let sign = match sweep.get(&q) {
                        Some(e) => e.quotient.sign,
                        None => classify_caterpillar(&q).unwrap().sign,
                    };
                    assert_eq!(
                        sign,
                        SignClass::Negative,
                        "{p} is negative but its predecessor {q} is not"
                    );
                    predecessor_checks += 1;
                }
            }
            SignClass::Zero => {
                for c in p.children() {
                    assert_eq!(
                        classify_caterpillar(&c).unwrap().sign,
                        SignClass::Positive,
                        "{p} is zero but its child {c} is not positive"
                    );
                    child_checks += 1;
                }
            }
            SignClass::Positive => {}
        }
    }
    println!(
        "PASS: downward closure held on {predecessor_checks} predecessor edges and every child of a zero parameter is positive ({child_checks} children)"
    );
}

#[test]
fn a11_long_spine_laws_hold_at_spot_checks() {
    for m in [13usize, 20, 30] {
        for a in 1..=5u32 {
            for b in 1..=5u32 {
                let p = endpoint_param(m, a, b).unwrap();
                let expected = if a == 3 && b == 3 {
                    SignClass::Zero
                } else if a <= 3 && b <= 3 {
                    SignClass::Negative
                } else {
                    SignClass::Positive
                };
                assert_eq!(
                    classify_caterpillar(&p).unwrap().sign,
                    expected,
                    "endpoint family m={m}, a={a}, b={b}"
                );
            }
        }
        for i in 2..=m - 1 {
            let p = defect_param(m, i).unwrap();
            assert_eq!(
                classify_caterpillar(&p).unwrap().sign,
                SignClass::Positive,
                "internal defect m={m}, i={i}"
            );
        }
    }
    println!("PASS: endpoint families and internal defects at spine lengths 13, 20, 30 follow the long-spine laws");
}

#[test]
fn a12_interior_segment_energy_decays_like_one_over_n() {
    let mut previous: Option<ricci_trees::Rational> = None;
    for n in 1..=200u32 {
        let mut a = vec![0u32; n as usize + 1];
        a[0] = 1;
        a[n as usize] = 1;
        let t = build_caterpillar(&CaterpillarParam::new(a).unwrap());
        // Indicator of the n interior (spine) edges; the builder places them
        // first in the edge order.
        let mut f = vec![rat(0, 1); t.edge_count()];
        for w in f.iter_mut().take(n as usize) {
            *w = rat(1, 1);
        }
        let value = rayleigh_form(&t, &f).unwrap();
        assert!(value >= rat(-2, 1), "energy below -2 at n={n}");
        assert_eq!(value, rat(-1, 1), "interior segment energy at n={n}");
        let magnitude = if value < rat(0, 1) { rat(0, 1) - &value } else { value.clone() };
        let normalized = magnitude / rat(n as i64, 1);
        if let Some(prev) = &previous {
            assert!(normalized < *prev, "magnitude must strictly decrease at n={n}");
        }
        previous = Some(normalized);
    }
    assert!(previous.expect("the loop ran") <= rat(1, 200));
    println!("PASS: interior segment energies stay above -2 and their normalized magnitudes decrease strictly to zero");
}
