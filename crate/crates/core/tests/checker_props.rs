mod common;

use kms_core::checker::*;
use kms_core::operator::catalog::{operator, part_map};
use kms_core::operator::PartMap;
use proptest::prelude::*;

use common::random_pair;

const PART_MAPS: [&str; 7] = ["id", "dev", "sym", "devsym", "skewtr", "skew", "tr"];

fn bundle(check: CheckKind, a: Option<&PartMap>, b: &kms_core::operator::HomOperator, v: &Verdict) -> EvidenceBundle {
    EvidenceBundle {
        check,
        a: a.cloned(),
        b: b.clone(),
        t: None,
        verdict: v.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_verdicts_reverify_and_are_consistent(seed in any::<u64>()) {
        let (a, b) = random_pair(seed, 6);
        let budget = Budget::default();
        let c = check_reduced_c_ellipticity(&a, &b, &budget).unwrap();
        let e = check_reduced_ellipticity(&a, &b, &budget).unwrap();
        let r = check_reduced_cancellation(&a, &b, &budget).unwrap();
        let f = check_full_cancellation(&b, &budget).unwrap();
        for (kind, v, with_a) in [
            (CheckKind::ReducedCEllipticity, &c, true),
            (CheckKind::ReducedEllipticity, &e, true),
            (CheckKind::ReducedCancellation, &r, true),
            (CheckKind::FullCancellation, &f, false),
        ] {
            prop_assert!(verify_evidence(&bundle(kind, with_a.then_some(&a), &b, v)), "{:?} {:?}", kind, v.status);
        }
        if c.status == Status::CertifiedYes {
            prop_assert!(e.status != Status::CertifiedNo && r.status != Status::CertifiedNo);
        }
        if f.status == Status::CertifiedYes {
            prop_assert!(r.status != Status::CertifiedNo);
        }
    }
}

#[test]
fn c_ellipticity_implies_both_over_the_catalogue() {
    let budget = Budget::default();
    let mut pairs: Vec<(String, String, usize)> = Vec::new();
    for row in PART_MAPS {
        pairs.push((row.into(), "curl".into(), 2));
        for col in PART_MAPS {
            pairs.push((row.into(), format!("{col} curl"), 3));
        }
    }
    for (row, col, n) in &pairs {
        let a = part_map(row, *n).unwrap();
        let b = operator(col, *n).unwrap();
        if check_reduced_c_ellipticity(&a, &b, &budget).unwrap().status == Status::CertifiedYes {
            assert_ne!(check_reduced_ellipticity(&a, &b, &budget).unwrap().status, Status::CertifiedNo);
            assert_ne!(check_reduced_cancellation(&a, &b, &budget).unwrap().status, Status::CertifiedNo);
        }
    }
}

#[test]
fn full_cancellation_implies_reduced_over_the_catalogue() {
    let budget = Budget::default();
    for col in PART_MAPS {
        let b = operator(&format!("{col} curl"), 3).unwrap();
        let full = check_full_cancellation(&b, &budget).unwrap().status;
        for row in PART_MAPS {
            let reduced = check_reduced_cancellation(&part_map(row, 3).unwrap(), &b, &budget).unwrap().status;
            if full == Status::CertifiedYes {
                assert_eq!(reduced, Status::CertifiedYes, "{row} / {col}");
            }
        }
    }
}

#[test]
fn planar_equivalence_for_curl() {
    // first order, n = 2: elliptic and cancelling iff ℂ-elliptic
    let budget = Budget::default();
    let b = operator("curl", 2).unwrap();
    for row in PART_MAPS {
        let r = kms_validity(&part_map(row, 2).unwrap(), &b, &budget).unwrap();
        let both = r.elliptic.status == Status::CertifiedYes && r.cancelling.status == Status::CertifiedYes;
        assert_ne!(r.c_elliptic.status, Status::Unknown, "{row}");
        assert_eq!(both, r.c_elliptic.status == Status::CertifiedYes, "{row}");
    }
}

#[test]
fn fixed_seed_is_deterministic() {
    let budget = Budget { seed: 42, ..Budget::default() };
    for (row, col) in [("sym", "skewtr"), ("devsym", "sym"), ("skewtr", "dev")] {
        let a = part_map(row, 3).unwrap();
        let b = operator(&format!("{col} curl"), 3).unwrap();
        let first = serde_json::to_string(&kms_validity(&a, &b, &budget).unwrap()).unwrap();
        let second = serde_json::to_string(&kms_validity(&a, &b, &budget).unwrap()).unwrap();
        assert_eq!(first, second);
    }
}
