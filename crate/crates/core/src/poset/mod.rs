//! Finite and oracle-presented posets.
//!
//! [`FinitePoset`] decides way-below, Scott openness and the G-delta property
//! by brute force from their definitions, which makes it a reference for the
//! closed forms that hold in finite posets (way-below is `≤`, open is upper,
//! G-delta is open). [`OraclePoset`] covers countable posets given by an
//! enumerator and an order predicate, and [`TwinChains`] is an exact symbolic
//! example where a chain has two incomparable upper bounds.

mod enumerate;
mod finite;
mod oracle;
mod twin;

pub use enumerate::{labelled_posets, posets_up_to_iso};
pub use finite::{verify_partial_order, ElemSet, FinitePoset, Relation, Violation, BRUTE_FORCE_LIMIT};
pub use oracle::{sup_in_oracle, LOracle, OraclePoset, SupOutcome};
pub use twin::{TwinChains, TwinElem, TwinOracle, TwinOrder, TwinSubset};

use crate::domain::{LElem, Truncation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("element index {0} out of range")]
    UnknownIndex(usize),
    #[error("relation is not a partial order ({} violations)", .0.len())]
    NotAPartialOrder(Vec<Violation>),
    #[error("invalid poset JSON: {0}")]
    Json(String),
    #[error("set is empty")]
    EmptySet,
    #[error("truncation depth {depth} is too small to decide")]
    Indeterminate { depth: u64 },
}

/// The finite slice of the column poset `X` with `m, n ≤ bound` plus the
/// column tops, as a [`FinitePoset`] labelled in element syntax.
pub fn x_columns(bound: u64) -> FinitePoset {
    let elems = Truncation::new(bound, 0).x_points();
    finite_slice(&elems)
}

/// Any finite set of elements of `L` with the induced order.
pub fn finite_slice(elems: &[LElem]) -> FinitePoset {
    FinitePoset::from_fn(elems.iter().map(|e| e.to_string()).collect(), |i, j| {
        elems[i].leq(&elems[j])
    })
    .expect("the order of L restricts to a partial order")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_have_their_tops_as_maxima() {
        let p = x_columns(2);
        assert_eq!(p.len(), 6);
        assert_eq!(p.labels_of(&p.maximals()), ["x(1,w)", "x(2,w)"]);
        assert!(p.is_gdelta(&p.maximals()));
    }

    #[test]
    fn truncation_of_l_is_a_poset() {
        let p = finite_slice(&Truncation::new(2, 2).elements());
        let max = p.labels_of(&p.maximals());
        // Inside the slice the longest starred sequences are maximal too.
        assert!(max.contains(&"x(1,w)") && max.contains(&"t[2,2]"));
        assert!(!max.contains(&"s[1,1]"));
    }
}
