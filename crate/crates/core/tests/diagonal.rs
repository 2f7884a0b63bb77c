mod common;

use proptest::prelude::*;
use scottmax::diagonal::{
    diagonalize, find_level_index, sample_families, verify_certificate, witness_element, CertError, DiagCertificate,
    DiagOptions, FailureReason, Level, LevelSearch,
};
use scottmax::domain::LElem;
use scottmax::opens::{canonical_family, intersection_member_prefix_check, Family, GenFamily, IndexedFamily, OpenDesc};

const SCREENED: DiagOptions = DiagOptions {
    budget: 10_000,
    cover_check: true,
};

#[test]
fn fleet_families_cover_and_are_refuted() {
    let fleet = sample_families();
    assert!(fleet.len() >= 5);
    for f in &fleet {
        for k in 1..=64 {
            assert!(
                f.open(k).covers_max(),
                "{} level {k} misses {:?}",
                f.reference(),
                f.open(k).uncovered_max()
            );
        }
        let cert = diagonalize(f.as_ref(), 64, SCREENED).unwrap();
        verify_certificate(&cert, f.as_ref()).unwrap();
        let w = cert.witness();
        assert!(!w.is_maximal());
        assert!(intersection_member_prefix_check(f.as_ref(), &w, 64));
    }
}

#[test]
fn fleet_prefixes() {
    let prefixes: Vec<(String, Vec<u64>)> = sample_families()
        .iter()
        .map(|f| (f.reference(), diagonalize(f.as_ref(), 5, SCREENED).unwrap().prefix))
        .collect();
    let expect = |name: &str| prefixes.iter().find(|(n, _)| n == name).unwrap().1.clone();
    assert_eq!(expect("rank-star"), [1, 2, 3, 4, 5]);
    assert_eq!(expect("double-rank"), [2, 4, 6, 8, 10]);
    assert_eq!(expect("square-rank"), [1, 4, 9, 16, 25]);
    assert_eq!(expect("rank-one"), [1, 1, 1, 1, 1]);
    assert_eq!(expect("first-column"), [1, 5, 6, 7, 8]);
    assert_eq!(expect("prefix-cover"), [3, 4, 5, 6, 7]);
}

#[test]
fn level_indices_are_least_by_brute_force() {
    for f in sample_families()
        .iter()
        .map(|f| f.as_ref())
        .chain([&Family::Canonical as &dyn IndexedFamily])
    {
        let cert = diagonalize(f, 20, SCREENED).unwrap();
        for Level { k, n, generator } in &cert.levels {
            let u = f.open(*k);
            let least = (1..).find(|&j| u.contains(&LElem::x(*k, j))).unwrap();
            assert_eq!(*n, least, "{} level {k}", f.reference());
            assert!(generator.leq(&LElem::x(*k, *n)));
        }
    }
}

#[test]
fn canonical_certificates_for_every_depth() {
    for depth in 1..=64 {
        let cert = diagonalize(&Family::Canonical, depth, SCREENED).unwrap();
        assert_eq!(cert.prefix, (1..=depth).collect::<Vec<_>>());
        verify_certificate(&cert, &Family::Canonical).unwrap();
        assert!(intersection_member_prefix_check(
            &Family::Canonical,
            &cert.witness(),
            depth
        ));
        // the witness sits strictly below the maximal element its star
        assert!(cert.witness().leq(&cert.witness().star().unwrap()));
    }
}

#[test]
fn deeper_runs_refine_shallower_ones() {
    for f in sample_families() {
        let deep = diagonalize(f.as_ref(), 40, SCREENED).unwrap();
        for depth in 1..40 {
            let shallow = diagonalize(f.as_ref(), depth, SCREENED).unwrap();
            assert_eq!(shallow.levels[..], deep.levels[..depth as usize]);
        }
    }
}

#[test]
fn budget_is_monotone() {
    let f = sample_families()
        .into_iter()
        .find(|f| f.reference() == "square-rank")
        .unwrap();
    // level k needs index k², so budget b reaches depth floor(sqrt(b))
    let mut last_level = 0;
    for budget in 1..=100 {
        let opts = DiagOptions {
            budget,
            cover_check: true,
        };
        match diagonalize(f.as_ref(), 12, opts) {
            Ok(_) => panic!("depth 12 needs budget 144"),
            Err(failure) => {
                assert_eq!(failure.reason, FailureReason::Budget { budget });
                assert!(failure.level >= last_level);
                assert_eq!(failure.level, (budget as f64).sqrt().floor() as u64 + 1);
                last_level = failure.level;
            }
        }
    }
    assert!(diagonalize(
        f.as_ref(),
        12,
        DiagOptions {
            budget: 144,
            cover_check: true
        }
    )
    .is_ok());
}

#[test]
fn non_covering_levels_are_screened() {
    let f = Family::Explicit {
        name: None,
        opens: vec![OpenDesc::new(vec![GenFamily::XRankAtLeast { k: 2 }]).unwrap()],
    };
    let failure = diagonalize(&f, 1, SCREENED).unwrap_err();
    assert_eq!(failure.level, 1);
    assert!(matches!(failure.reason, FailureReason::NotCovering { .. }));
    // unscreened, the construction still runs: it only ever needs x(k,n) ∈ U_k
    let cert = diagonalize(&f, 3, DiagOptions::default()).unwrap();
    assert_eq!(cert.prefix, [2, 2, 2]);
}

#[test]
fn level_search_on_single_generators() {
    let o = OpenDesc::new(vec![GenFamily::Single {
        elem: "x(3,7)".parse().unwrap(),
    }])
    .unwrap();
    assert!(matches!(find_level_index(&o, 3, 100), LevelSearch::Found { n: 7, .. }));
    assert_eq!(find_level_index(&o, 3, 6), LevelSearch::BudgetExhausted);
    assert_eq!(find_level_index(&o, 2, 100), LevelSearch::BudgetExhausted);
    assert!(matches!(
        find_level_index(&canonical_family(9), 9, 9),
        LevelSearch::Found { n: 9, .. }
    ));
}

fn canonical(depth: u64) -> DiagCertificate {
    diagonalize(&Family::Canonical, depth, SCREENED).unwrap()
}

#[test]
fn tampered_certificates_are_rejected() {
    let good = canonical(8);

    let mut c = good.clone();
    c.levels[3].n -= 1;
    c.prefix[3] -= 1;
    assert!(matches!(
        verify_certificate(&c, &Family::Canonical),
        Err(CertError::GeneratorNotBelow { k: 4, .. })
    ));

    let mut c = good.clone();
    c.levels[3].n += 1;
    c.prefix[3] += 1;
    assert!(matches!(
        verify_certificate(&c, &Family::Canonical),
        Err(CertError::NotLeast { k: 4, n: 5, smaller: 4 })
    ));

    let mut c = good.clone();
    c.prefix.swap(0, 5);
    assert_eq!(
        verify_certificate(&c, &Family::Canonical),
        Err(CertError::PrefixMismatch)
    );

    let mut c = good.clone();
    c.levels.swap(1, 2);
    assert_eq!(
        verify_certificate(&c, &Family::Canonical),
        Err(CertError::LevelShape { depth: 8 })
    );

    let mut c = good.clone();
    c.levels[0].generator = "x(1,w)".parse().unwrap();
    assert!(matches!(
        verify_certificate(&c, &Family::Canonical),
        Err(CertError::BadGenerator { k: 1, .. })
    ));

    let mut c = good.clone();
    c.depth = 9;
    assert_eq!(
        verify_certificate(&c, &Family::Canonical),
        Err(CertError::LevelShape { depth: 9 })
    );

    let mut c = good.clone();
    c.family = "other".into();
    assert!(matches!(
        verify_certificate(&c, &Family::Canonical),
        Err(CertError::FamilyMismatch { .. })
    ));

    // indices start at one
    let mut c = good;
    c.levels[0].n = 0;
    assert_eq!(
        verify_certificate(&c, &Family::Canonical),
        Err(CertError::LevelShape { depth: 8 })
    );
}

#[test]
fn certificate_json_round_trips_byte_for_byte() {
    for f in sample_families() {
        let a = diagonalize(f.as_ref(), 64, SCREENED).unwrap().to_json();
        let b = diagonalize(f.as_ref(), 64, SCREENED).unwrap().to_json();
        assert_eq!(a, b);
        let back = DiagCertificate::from_json(&a).unwrap();
        assert_eq!(back.to_json(), a);
        verify_certificate(&back, f.as_ref()).unwrap();
    }
    let mut with_extra: serde_json::Value = serde_json::from_str(&canonical(2).to_json()).unwrap();
    with_extra["witness"] = "s[1,2|1]".into();
    assert!(DiagCertificate::from_json(&with_extra.to_string()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn explicit_families_certify_when_they_succeed(opens in prop::collection::vec(common::open_desc(), 1..=4), depth in 1..=6u64) {
        let f = Family::Explicit { name: Some("random".into()), opens };
        match diagonalize(&f, depth, DiagOptions { budget: 50, cover_check: false }) {
            Ok(cert) => {
                prop_assert!(verify_certificate(&cert, &f).is_ok());
                prop_assert_eq!(cert.witness(), witness_element(&cert.prefix));
                prop_assert!(intersection_member_prefix_check(&f, &cert.witness(), depth));
            }
            Err(failure) => {
                prop_assert_eq!(&failure.reason, &FailureReason::Budget { budget: 50 });
                let u = f.open(failure.level);
                prop_assert!((1..=50).all(|n| !u.contains(&LElem::x(failure.level, n))));
            }
        }
    }
}
