//! End-to-end flows across module boundaries: text input to classification,
//! census output to certificate checks, closed-form rules to quotient signs.

use std::collections::BTreeSet;

use proptest::prelude::*;
use ricci_trees::census::{run_census, DEFAULT_GUARD};
use ricci_trees::certs::{
    builtin_certificates, stable_family_certificate, verify_certificate, TreeSpec,
};
use ricci_trees::classify::{
    classify_by_theorem, classify_caterpillar, classify_exact, einstein_metric, SignClass,
};
use ricci_trees::tree::{build_named, defect_param, endpoint_param, CaterpillarParam, Tree};

#[test]
fn edge_list_input_classifies_like_the_builder() {
    // The three-legged spider with legs of length two, written by hand with
    // scrambled vertex ids and comments.
    let text = "# center 10, joints 21..23, tips 31..33\n\
                10 21\n10 22\n10 23\n\
                21 31 # leg one\n22 32\n23 33\n";
    let by_text = classify_exact(&Tree::from_edge_list(text).unwrap()).unwrap();
    let by_name = classify_exact(&build_named("s32").unwrap()).unwrap();
    assert_eq!(by_text, by_name);
    assert_eq!(by_text.sign, SignClass::Zero);
    assert_eq!(by_text.zero_multiplicity, 1);
}

#[test]
fn census_zeros_carry_certificates() {
    for m in 3..=5 {
        let census = run_census(m, DEFAULT_GUARD).unwrap();
        let mut unexplained: BTreeSet<CaterpillarParam> = census.zero_candidates();
        let mut certified = builtin_certificates();
        certified.push(stable_family_certificate(m).unwrap());
        for cert in certified {
            if let TreeSpec::Caterpillar(p) = cert.tree_spec() {
                if p.m() == m {
                    assert!(verify_certificate(&cert).unwrap(), "{}", cert.format());
                    unexplained.remove(&p.canonical());
                }
            }
        }
        assert!(unexplained.is_empty(), "m={m}: zeros without a certificate: {unexplained:?}");
    }
}

#[test]
fn numeric_weighting_tracks_the_exact_sign() {
    let cases = [
        ("1,1,2", SignClass::Negative),
        ("1,4,1", SignClass::Zero),
        ("1,5,1", SignClass::Positive),
        ("endpoint:7,3,3", SignClass::Zero),
    ];
    for (spec, expected) in cases {
        let tree = build_named(spec).unwrap();
        assert_eq!(classify_exact(&tree).unwrap().sign, expected, "{spec}");
        let metric = einstein_metric(&tree, 1e-12).unwrap();
        assert!(metric.residual_bound <= 1e-10, "{spec}: bound {}", metric.residual_bound);
        match expected {
            SignClass::Negative => assert!(metric.lambda_estimate < -1e-6, "{spec}"),
            SignClass::Zero => assert!(metric.lambda_estimate.abs() < 1e-9, "{spec}"),
            SignClass::Positive => assert!(metric.lambda_estimate > 1e-6, "{spec}"),
        }
    }
}

#[test]
fn long_spine_rules_match_the_quotient_engine() {
    let m = 14;
    for i in 2..=m - 1 {
        let p = defect_param(m, i).unwrap();
        assert_eq!(classify_caterpillar(&p).unwrap().sign, SignClass::Positive, "defect {p}");
        assert_eq!(classify_by_theorem(&p).unwrap(), SignClass::Positive, "defect {p}");
    }
    let expectations = [
        (1, 1, SignClass::Negative),
        (2, 3, SignClass::Negative),
        (3, 3, SignClass::Zero),
        (4, 1, SignClass::Positive),
    ];
    for (a, b, expected) in expectations {
        let p = endpoint_param(m, a, b).unwrap();
        assert_eq!(classify_caterpillar(&p).unwrap().sign, expected, "endpoint {p}");
        assert_eq!(classify_by_theorem(&p).unwrap(), expected, "endpoint {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rule_table_agrees_with_the_quotient_engine(
        mut a in proptest::collection::vec(0u32..5, 1..9)
    ) {
        let m = a.len();
        a[0] = a[0].max(1);
        a[m - 1] = a[m - 1].max(1);
        let p = CaterpillarParam::new(a).unwrap();
        let by_rule = classify_by_theorem(&p).unwrap();
        let by_quotient = classify_caterpillar(&p).unwrap().sign;
        prop_assert_eq!(by_rule, by_quotient, "{}", p);
    }
}
