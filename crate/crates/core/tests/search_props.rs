use std::collections::BTreeSet;

use proptest::prelude::*;

use nahmsum::corpus::Corpus;
use nahmsum::precision::rat;
use nahmsum::search::*;

fn spec(family: &str, n_terms: usize, lo: i64, hi: i64) -> SearchSpec {
    SearchSpec::new(Corpus::builtin().family(family).unwrap().clone(), n_terms, lo, hi).unwrap()
}

fn jsonl(recs: &[CandidateRecord]) -> Vec<u8> {
    let mut out = Vec::new();
    write_jsonl(&mut out, recs).unwrap();
    out
}

fn passes(recs: &[CandidateRecord]) -> BTreeSet<String> {
    recs.iter().filter(|r| r.passed).map(|r| r.label()).collect()
}

#[test]
fn output_is_independent_of_workers() {
    let mut s = spec("capparelli", 2, 0, 2);
    s.screen_digits = 40;
    s.confirm_digits = 60;
    let one = jsonl(&scan_with(&s, ScanOptions { workers: Some(1), ..Default::default() }).unwrap());
    let many = jsonl(&scan_with(&s, ScanOptions { workers: Some(5), ..Default::default() }).unwrap());
    let again = jsonl(&scan(&s).unwrap());
    assert_eq!(one, many);
    assert_eq!(one, again);
}

#[test]
fn screening_never_under_reports() {
    let s = spec("capparelli", 2, 0, 6);
    let all = scan_with(&s, ScanOptions { confirm_all: true, ..Default::default() }).unwrap();
    let gated = scan(&s).unwrap();
    assert_eq!(all.len(), 16807);
    assert_eq!(passes(&all), passes(&gated));
    for r in all.iter().filter(|r| r.passed) {
        assert!(screen_passes(&s, &r.terms).unwrap(), "{}", r.label());
    }
}

#[test]
fn tighter_tolerance_shrinks_pass_set() {
    let mut prev: Option<BTreeSet<String>> = None;
    for e in [2, 4, 6, 10, 30] {
        let mut s = spec("mod9", 1, -4, 4);
        s.screen_digits = 40;
        s.confirm_digits = 60;
        s.tol_exponent = Some(e);
        let set = passes(&scan(&s).unwrap());
        if let Some(p) = &prev {
            assert!(set.is_subset(p), "tol 1e-{e}");
        }
        prev = Some(set);
    }
    assert_eq!(prev.unwrap().len(), 3);
}

#[test]
fn wide_c_must_be_requested() {
    let mut s = spec("capparelli", 2, 0, 1);
    s.c_grid = (-1, 7);
    assert!(s.validate().is_err());
    s.wide_c = true;
    assert!(s.validate().is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn swapped_terms_are_equivalent(b in prop::collection::vec(-6i64..=6, 4), c1 in 0i64..=6, c2 in 0i64..=6) {
        let t = |x: i64, y: i64, c: i64| TermChoice { b: vec![rat(x, 1), rat(y, 1)], c_prime: c };
        let rec = |terms: Vec<TermChoice>| CandidateRecord {
            family: "capparelli".into(),
            terms,
            residuals: vec![],
            c_star: nahmsum::precision::Real::zero(Default::default()),
            lambda: nahmsum::precision::Real::zero(Default::default()),
            alpha_over_pi2: None,
            degenerate: false,
            passed: false,
        };
        let fwd = rec(vec![t(b[0], b[1], c1), t(b[2], b[3], c2)]);
        let back = rec(vec![t(b[2], b[3], c2), t(b[0], b[1], c1)]);
        prop_assert_eq!(fwd.canonical_terms(), back.canonical_terms());
        let canon = fwd.canonical_terms();
        prop_assert!(canon.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(canon.iter().map(|t| t.c_prime).min(), Some(0));
    }
}

#[test]
fn swapping_terms_keeps_verdict() {
    let s = spec("capparelli", 2, 0, 6);
    let t = |x: i64, y: i64, c: i64| TermChoice { b: vec![rat(x, 1), rat(y, 1)], c_prime: c };
    for ((a1, a2), (b1, b2), c) in [((1, 0), (4, 6), 2), ((1, 0), (4, 6), 1), ((1, 3), (3, 6), 1)] {
        assert!(screen_passes(&s, &[t(a1, a2, 0), t(b1, b2, c)]).unwrap());
        assert!(screen_passes(&s, &[t(b1, b2, 0), t(a1, a2, -c)]).unwrap());
    }
}
