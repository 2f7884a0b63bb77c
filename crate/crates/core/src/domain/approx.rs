//! Canonical chains of compact elements converging to each element of `L`.
//!
//! The `j`-th approximant of `x(m,n)` is `x(m, min(j,n))`, and that of a
//! sequence is its prefix of length `min(j, len)` with the same tag. Every
//! element is the supremum of its chain, and the chain reaches the element
//! itself exactly when the element is compact. [`compact_by_chain`] uses that
//! as an independent check on [`is_compact`](super::is_compact).

use super::{LElem, XIndex};
use crate::seq::ExtNat;

pub fn approximant(u: &LElem, j: u64) -> LElem {
    let j = j.max(1);
    let cut = |a: &crate::seq::Seq| {
        let k = match a.len() {
            ExtNat::Fin(l) => l.min(j),
            ExtNat::Omega => j,
        };
        a.prefix(k).expect("k is within the length")
    };
    match u {
        LElem::X(XIndex { m, n }) => LElem::x(*m, n.finite().map_or(j, |n| n.min(j))),
        LElem::Sigma(a) => LElem::Sigma(cut(a)),
        LElem::Star(a) => LElem::Star(cut(a)),
    }
}

/// Whether the canonical chain of `u` reaches `u` within `horizon` steps.
///
/// For every element whose finite indices and lengths are at most `horizon`
/// this decides compactness: a non-compact element stays strictly above every
/// approximant.
pub fn compact_by_chain(u: &LElem, horizon: u64) -> bool {
    (1..=horizon).any(|j| approximant(u, j) == *u)
}
