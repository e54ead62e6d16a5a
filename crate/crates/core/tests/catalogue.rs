mod common;

use std::collections::BTreeSet;

use common::{field, gauss_det, tuples};
use detspace_core::matrix::construct::{block_field_pair, field_subspace};
use detspace_core::theorems::{designated_suite, run_suite, verify, Instance, VerdictReport, CATALOGUE};
use detspace_core::{Config, Error, MultiPoly};

fn suite() -> &'static Vec<VerdictReport> {
    static CACHE: std::sync::OnceLock<Vec<VerdictReport>> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| run_suite(&Config::default()).unwrap())
}

#[test]
fn every_entry_is_exercised_and_reports_are_consistent() {
    let cfg = Config::default();
    let entries = designated_suite(&cfg).unwrap();
    let covered: BTreeSet<&str> = entries.iter().map(|e| e.id).collect();
    for e in CATALOGUE {
        assert!(covered.contains(e.id), "{} has no designated instance", e.id);
    }
    let reports = suite();
    assert_eq!(reports.len(), entries.len());
    for (e, r) in entries.iter().zip(reports) {
        assert_eq!(e.id, r.theorem_id);
        assert_eq!(r.passed, r.violations.is_empty(), "{}", r.theorem_id);
    }
}

#[test]
fn only_the_small_field_enlargement_check_fails() {
    let failed: Vec<(&str, &str)> = suite()
        .iter()
        .filter(|r| !r.passed)
        .map(|r| (r.theorem_id.as_str(), r.instance.label.as_str()))
        .collect();
    assert!(failed.iter().all(|(id, _)| *id == "C3.8"), "{failed:?}");
}

/// Any reported enlargement really keeps every nonzero element invertible,
/// rechecked here by enumerating the enlarged span.
#[test]
fn enlargement_witnesses_are_genuine() {
    for r in suite().iter().filter(|r| r.theorem_id == "C3.8" && !r.passed) {
        let q = r.instance.q.unwrap();
        let d = r.instance.d.unwrap();
        let f = field(q);
        let sub = block_field_pair(&f, d).unwrap();
        let x: Vec<Vec<u32>> = serde_json::from_value(r.witnesses["enlarging_matrix"].clone()).unwrap();
        let basis: Vec<Vec<Vec<u32>>> = sub.basis().iter().map(|m| m.to_rows()).chain([x]).collect();
        let n = basis[0].len();
        for (i, c) in tuples(&f, d + 1).enumerate().skip(1) {
            let m: Vec<Vec<u32>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            c.iter().zip(&basis).fold(0u32, |acc, (ci, bm)| {
                                use detspace_core::Ring;
                                f.add(&acc, &f.mul(ci, &bm[a][b]))
                            })
                        })
                        .collect()
                })
                .collect();
            assert_ne!(gauss_det(&f, &m), 0, "element {i} of the enlargement is singular");
        }
        assert!(r.caveats.iter().any(|c| c.contains("q > r^6")));
    }
}

#[test]
fn small_fields_record_largeness_caveats() {
    let sextic = suite()
        .iter()
        .find(|r| r.theorem_id == "T6.3" && r.instance.q == Some(3) && r.instance.d == Some(2))
        .unwrap();
    assert!(!sextic.caveats.is_empty());
    for r in suite().iter().filter(|r| r.theorem_id == "T3.10") {
        assert!(r.caveats.iter().any(|c| c.contains("not met")), "{:?}", r.caveats);
    }
}

#[test]
fn suite_is_deterministic() {
    let again = run_suite(&Config::default()).unwrap();
    assert_eq!(
        serde_json::to_string(suite()).unwrap(),
        serde_json::to_string(&again).unwrap()
    );
}

#[test]
fn lookup_and_shape_errors() {
    let cfg = Config::default();
    assert!(matches!(verify("T9.9", &Instance::Arithmetic { r_max: 3, q_max: 3 }, &cfg), Err(Error::UnknownTheorem(_))));
    let sub = Instance::subspace("field", field_subspace(&field(2), 3).unwrap());
    assert!(matches!(verify("L5.7", &sub, &cfg), Err(Error::InstanceShape(_))));
    let poly = Instance::polynomial("x1", MultiPoly::var(&field(3), 1, 0).unwrap());
    assert!(matches!(verify("T7.1", &poly, &cfg), Err(Error::InstanceShape(_))));
}

#[test]
fn vacuous_checks_pass_with_a_caveat() {
    // the enlargement check needs a prime size 2d + 1; a field subspace is not of that shape
    let sub = Instance::subspace("field", field_subspace(&field(2), 3).unwrap());
    let r = verify("C3.8", &sub, &Config::default()).unwrap();
    assert!(r.passed);
    assert!(r.caveats.iter().any(|c| c.contains("nothing to check")));
}
