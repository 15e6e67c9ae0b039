//! Cross-module properties: parser, scan, classifier, witnesses and
//! reports checked against brute-force oracles.

use num_integer::Integer;
use num_traits::{Signed, Zero};
use polysurj::analyzers::{classify_normal_form, image_scan, negative_witness, NormalForm};
use polysurj::changevars::{ChangeOfVars, CongruenceTarget, ElementaryOp};
use polysurj::cli::parse::parse_poly;
use polysurj::cli::{analyze, AnalysisConfig};
use polysurj::exactmath::{BigInt, BigRational};
use polysurj::polyalg::{BiPoly, UniPoly};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn small_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..=3, 0u32..=3, -4i64..=4), 1..=5)
        .prop_map(|terms| BiPoly::from_i64(&terms))
        .prop_filter("nonconstant", |f| !f.is_constant())
}

/// Integer shears and swaps, so hidden forms stay integral.
fn integral_cov() -> impl Strategy<Value = ChangeOfVars> {
    let poly = prop::collection::vec(-2i64..=2, 1..=3).prop_map(|c| UniPoly::from_i64(&c));
    let op = prop_oneof![
        Just(ElementaryOp::Swap),
        poly.clone().prop_map(ElementaryOp::AddXPolyToY),
        (-3i64..=3).prop_map(|c| ElementaryOp::AddYPolyToX(UniPoly::from_i64(&[c]))),
    ];
    prop::collection::vec(op, 0..=2).prop_map(ChangeOfVars::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_polynomials_reparse(f in small_poly()) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn scan_matches_brute_force(f in small_poly(), b in 1u64..=6, m in 1u64..=30) {
        let r = image_scan(&f, b, m);
        let b = b as i64;
        let mut values = BTreeSet::new();
        let mut negatives = 0u64;
        let mut min: Option<BigRational> = None;
        for x in -b..=b {
            for y in -b..=b {
                let v = f.eval(&q(x), &q(y));
                negatives += u64::from(v.is_negative());
                if v.is_integer() && !v.is_negative() {
                    values.insert(v.to_integer());
                }
                if min.as_ref().map_or(true, |mv| &v < mv) {
                    min = Some(v);
                }
            }
        }
        let represented: Vec<u64> = (0..=m).filter(|n| values.contains(&BigInt::from(*n))).collect();
        let missing: Vec<u64> = (0..=m).filter(|n| !values.contains(&BigInt::from(*n))).collect();
        prop_assert_eq!(&r.represented, &represented);
        prop_assert_eq!(&r.missing, &missing);
        prop_assert_eq!(r.negative_count, negatives);
        prop_assert_eq!(r.min_value, min);
    }

    #[test]
    fn hidden_torus_yields_sound_witnesses(
        (a, b) in (1u32..=4, 1u32..=4).prop_filter("coprime", |(a, b)| a.gcd(b) == 1),
        hide in integral_cov(),
        (x0, y0, n) in (1i64..=30).prop_flat_map(|n| (0..n, 0..n, Just(n))),
    ) {
        let shape = BiPoly::from_i64(&[(a, b, 1), (0, 0, 1)]);
        let f = hide.inverse().apply_poly(&shape);
        let form = classify_normal_form(&f, &[]);
        prop_assert!(form.supports_witnesses(), "{} classified as {}", f, form);
        prop_assert!(form.matches(&f));
        let tgt = CongruenceTarget::integers(x0, y0, n);
        let w = negative_witness(&f, &form, &tgt).unwrap();
        let v = f.eval(&BigRational::from_integer(w.x.clone()), &BigRational::from_integer(w.y.clone()));
        prop_assert!(v.is_negative());
        prop_assert!((&w.x - x0).is_multiple_of(&BigInt::from(n)));
        prop_assert!((&w.y - y0).is_multiple_of(&BigInt::from(n)));
    }

    #[test]
    fn reports_are_deterministic_and_consistent(f in small_poly()) {
        let cfg = AnalysisConfig { box_radius: 8, naturals: 20, depth: 3, budget: 20_000, ..AnalysisConfig::default() };
        let one = analyze(&f, &AnalysisConfig { workers: Some(1), ..cfg.clone() });
        let many = analyze(&f, &AnalysisConfig { workers: Some(3), ..cfg });
        prop_assert_eq!(one.to_json(), many.to_json());
        for w in &one.witnesses {
            prop_assert!(w.verify(&f, &BigRational::zero()));
        }
        if one.scan.has_negatives() {
            prop_assert!(!one.witnesses.is_empty());
        }
        if !matches!(one.classification, NormalForm::Unclassified) {
            prop_assert!(one.classification.matches(&f));
        }
    }
}
