mod common;

use common::*;
use proptest::prelude::*;
use scottmax::domain::{leq, LElem, Truncation};
use scottmax::opens::{
    canonical_family, contains_in_stream, intersection_member_prefix_check, Family, GenFamily, OpenDesc,
    StreamMembership,
};
use scottmax::seq::Seq;

/// Maximal elements: column tops and starred infinite sequences.
fn max_samples() -> Vec<LElem> {
    let mut out: Vec<LElem> = (1..=6).map(LElem::x_top).collect();
    for pre in Truncation::new(3, 3).sequences() {
        for per in [vec![1], vec![2], vec![1, 2], vec![3, 1], vec![5]] {
            out.push(LElem::Star(
                Seq::periodic(pre.as_finite().unwrap().to_vec(), per).unwrap(),
            ));
        }
    }
    for per in [vec![1], vec![2], vec![4], vec![2, 1, 1]] {
        out.push(LElem::Star(Seq::periodic(vec![], per).unwrap()));
    }
    out
}

/// Limits of canonical chains, with a point of the chain at each stage.
fn limits() -> Vec<(LElem, Vec<LElem>)> {
    let mut out = Vec::new();
    for m in 1..=5 {
        out.push((LElem::x_top(m), (1..=12).map(|n| LElem::x(m, n)).collect()));
    }
    for s in [
        Seq::periodic(vec![], vec![1]).unwrap(),
        Seq::periodic(vec![2, 3], vec![1, 4]).unwrap(),
        Seq::periodic(vec![5], vec![2]).unwrap(),
    ] {
        let plain: Vec<LElem> = (1..=12).map(|j| LElem::Sigma(s.prefix(j).unwrap())).collect();
        let starred: Vec<LElem> = (1..=12).map(|j| LElem::Star(s.prefix(j).unwrap())).collect();
        out.push((LElem::Sigma(s.clone()), plain));
        out.push((LElem::Star(s), starred));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn opens_are_upper_sets(o in open_desc()) {
        let t = Truncation::new(3, 3).elements();
        for u in t.iter().filter(|u| o.contains(u)) {
            for v in t.iter().filter(|v| leq(u, v)) {
                prop_assert!(o.contains(v), "{u} in open, {v} above it is not");
            }
        }
    }

    #[test]
    fn opens_are_inaccessible_by_chains(o in open_desc()) {
        // Entries of the samples stay within the generator parameters used by
        // the strategy, so twelve stages always suffice.
        for (limit, chain) in limits() {
            if o.contains(&limit) {
                prop_assert!(chain.iter().any(|c| o.contains(c)), "{limit} in open, no chain point is");
            } else {
                prop_assert!(chain.iter().all(|c| !o.contains(c)));
            }
        }
    }

    #[test]
    fn contains_agrees_with_generators(o in open_desc()) {
        let gens: Vec<LElem> = o.families().iter().flat_map(|f| f.generators(6, 3)).collect();
        for u in Truncation::new(3, 3).elements() {
            let brute = gens.iter().any(|g| leq(g, &u));
            prop_assert_eq!(o.contains(&u), brute, "{}", u);
            if let Some(w) = o.witness(&u) {
                prop_assert!(w.is_compact() && leq(&w, &u));
            }
        }
    }

    #[test]
    fn covers_max_agrees_with_samples(o in open_desc()) {
        match o.uncovered_max() {
            None => {
                for u in max_samples() {
                    prop_assert!(o.contains(&u), "covering open misses {u}");
                }
            }
            Some(w) => {
                prop_assert!(w.is_maximal() && !o.contains(&w), "bad witness {w}");
            }
        }
    }

    #[test]
    fn family_json_round_trips(opens in prop::collection::vec(open_desc(), 1..=3)) {
        let f = Family::Explicit { name: Some("rt".into()), opens };
        prop_assert_eq!(Family::from_json(&f.to_json()).unwrap(), f);
    }
}

#[test]
fn sampled_maxima_are_maximal() {
    assert!(max_samples().iter().all(LElem::is_maximal));
    assert!(max_samples().len() >= 100);
}

#[test]
fn coverage_of_small_opens() {
    let o = |fs: Vec<GenFamily>| OpenDesc::new(fs).unwrap();
    let rank = |k| GenFamily::XRankAtLeast { k };
    // Rank families alone leave the starred constant-one sequence outside.
    assert_eq!(o(vec![rank(2)]).uncovered_max(), Some(e("t[|1]")));
    assert!(o(vec![rank(1)]).covers_max());
    assert!(o(vec![rank(7), GenFamily::StarLenAtLeast { k: 9 }]).covers_max());
    assert!(o(vec![rank(5), GenFamily::XColumn { m: 1, min_n: 1 }]).covers_max());
    // Without a rank family some column top is missed.
    assert_eq!(
        o(vec![GenFamily::SigmaLenAtLeast { k: 1 }]).uncovered_max(),
        Some(e("x(1,w)"))
    );
    // Prefixes s[1] and s[2] with rank 3 cover everything.
    assert!(o(vec![
        rank(3),
        GenFamily::ExplicitList {
            elems: vec![e("s[1]"), e("s[2]")]
        }
    ])
    .covers_max());
}

#[test]
fn canonical_intersection_on_the_truncation() {
    let t = Truncation::new(3, 3).elements();
    for depth in 1..=3 {
        for u in &t {
            let member = intersection_member_prefix_check(&Family::Canonical, u, depth);
            let expected = match u {
                LElem::X(ix) => ix.n >= scottmax::seq::ExtNat::Fin(depth),
                LElem::Sigma(a) | LElem::Star(a) => {
                    a.len() >= scottmax::seq::ExtNat::Fin(depth) || a.max_entry() >= depth
                }
            };
            assert_eq!(member, expected, "{u} at depth {depth}");
        }
        assert!((1..=depth).all(|k| canonical_family(k).covers_max()));
    }
}

#[test]
fn stream_membership_respects_the_budget() {
    let gens = (1..).map(|n| LElem::x(2, n));
    let u = e("x(2,5)");
    assert_eq!(
        contains_in_stream(gens.clone(), &u, 10).unwrap(),
        StreamMembership::Member {
            generator: e("x(2,1)"),
            steps: 1
        }
    );
    let far = (100..).map(|n| LElem::x(2, n));
    assert_eq!(
        contains_in_stream(far, &u, 10).unwrap(),
        StreamMembership::Unknown { steps: 10 }
    );
    assert_eq!(
        contains_in_stream(vec![e("s[4]")], &u, 10).unwrap(),
        StreamMembership::NotMember { steps: 1 }
    );
    assert!(contains_in_stream(vec![e("x(2,w)")], &u, 10).is_err());
}
