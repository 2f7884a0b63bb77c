#![allow(dead_code)]

use proptest::prelude::*;
use scottmax::domain::LElem;
use scottmax::opens::{GenFamily, OpenDesc};
use scottmax::seq::Seq;

pub fn e(t: &str) -> LElem {
    t.parse().unwrap()
}

pub fn finite_seq(max_entry: u64, max_len: usize) -> impl Strategy<Value = Seq> + Clone {
    prop::collection::vec(1..=max_entry, 1..=max_len.max(1)).prop_map(|v| Seq::finite(v).unwrap())
}

pub fn periodic_seq(max_entry: u64, max_len: usize) -> impl Strategy<Value = Seq> + Clone {
    (
        prop::collection::vec(1..=max_entry, 0..=max_len),
        prop::collection::vec(1..=max_entry, 1..=3),
    )
        .prop_map(|(pre, per)| Seq::periodic(pre, per).unwrap())
}

pub fn any_seq(max_entry: u64, max_len: usize) -> impl Strategy<Value = Seq> + Clone {
    prop_oneof![finite_seq(max_entry, max_len), periodic_seq(max_entry, max_len)]
}

/// Sequences built from a small alphabet so that random pairs are often comparable.
pub fn related_seq() -> impl Strategy<Value = Seq> + Clone {
    any_seq(2, 4)
}

pub fn l_elem(seqs: impl Strategy<Value = Seq> + Clone) -> impl Strategy<Value = LElem> {
    prop_oneof![
        (1..=4u64, 1..=4u64).prop_map(|(m, n)| LElem::x(m, n)),
        (1..=4u64).prop_map(LElem::x_top),
        seqs.clone().prop_map(LElem::Sigma),
        seqs.prop_map(LElem::Star),
    ]
}

pub fn compact_elem() -> impl Strategy<Value = LElem> {
    prop_oneof![
        (1..=4u64, 1..=4u64).prop_map(|(m, n)| LElem::x(m, n)),
        finite_seq(3, 3).prop_map(LElem::Sigma),
        finite_seq(3, 3).prop_map(LElem::Star),
    ]
}

pub fn gen_family() -> impl Strategy<Value = GenFamily> {
    prop_oneof![
        compact_elem().prop_map(|elem| GenFamily::Single { elem }),
        (1..=4u64).prop_map(|k| GenFamily::XRankAtLeast { k }),
        (1..=4u64).prop_map(|k| GenFamily::SigmaLenAtLeast { k }),
        (1..=4u64).prop_map(|k| GenFamily::StarLenAtLeast { k }),
        (1..=4u64, 1..=4u64).prop_map(|(m, min_n)| GenFamily::XColumn { m, min_n }),
        prop::collection::vec(compact_elem(), 1..=4).prop_map(|elems| GenFamily::ExplicitList { elems }),
    ]
}

pub fn open_desc() -> impl Strategy<Value = OpenDesc> {
    prop::collection::vec(gen_family(), 1..=4).prop_map(|f| OpenDesc::new(f).unwrap())
}
