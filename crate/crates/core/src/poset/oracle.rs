use std::fmt;

use super::PosetError;
use crate::domain::{LElem, Truncation};

/// A countable poset presented by an enumerator and a decidable order.
///
/// Implementations must keep `leq` pure; callers may evaluate it from several
/// threads.
pub trait OraclePoset {
    type Elem: Clone + Eq + fmt::Debug + fmt::Display;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    /// The elements enumerated at `depth`, and whether that is the whole universe.
    fn universe(&self, depth: u64) -> (Vec<Self::Elem>, bool);

    /// Default depth for bounded searches.
    fn truncation(&self) -> u64;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupOutcome<E> {
    Sup(E),
    /// The set has no upper bound at all.
    Unbounded,
    /// Two incomparable minimal upper bounds.
    NoLeast(E, E),
}

impl<E: fmt::Display> fmt::Display for SupOutcome<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupOutcome::Sup(e) => write!(f, "sup = {e}"),
            SupOutcome::Unbounded => f.write_str("no sup: no upper bound"),
            SupOutcome::NoLeast(a, b) => write!(f, "no sup: incomparable upper bounds {a} and {b}"),
        }
    }
}

/// Least upper bound among a finite list of candidates.
pub(crate) fn least_of<E: Clone>(ub: &[E], leq: impl Fn(&E, &E) -> bool) -> SupOutcome<E> {
    let minimal: Vec<&E> = ub
        .iter()
        .filter(|u| ub.iter().all(|v| !leq(v, u) || leq(u, v)))
        .collect();
    match minimal.as_slice() {
        [] => SupOutcome::Unbounded,
        // in a finite list a unique minimal element is the least one
        [m] => SupOutcome::Sup((*m).clone()),
        [a, b, ..] => SupOutcome::NoLeast((*a).clone(), (*b).clone()),
    }
}

fn sup_at<P: OraclePoset>(p: &P, a: &[P::Elem], depth: u64) -> (SupOutcome<P::Elem>, bool) {
    let (universe, complete) = p.universe(depth);
    let ub: Vec<P::Elem> = universe.into_iter().filter(|u| a.iter().all(|x| p.leq(x, u))).collect();
    (least_of(&ub, |x, y| p.leq(x, y)), complete)
}

/// Supremum of a finite set in an oracle poset, searched over the enumerated
/// universe.
///
/// When the universe at the truncation depth is complete the answer is exact.
/// Otherwise the search is repeated at twice the depth and the answer is only
/// accepted if it is unchanged; a changed answer is reported as
/// [`PosetError::Indeterminate`].
pub fn sup_in_oracle<P: OraclePoset>(p: &P, a: &[P::Elem]) -> Result<SupOutcome<P::Elem>, PosetError> {
    if a.is_empty() {
        return Err(PosetError::EmptySet);
    }
    let depth = p.truncation().max(1);
    let (first, complete) = sup_at(p, a, depth);
    if complete {
        return Ok(first);
    }
    let (second, _) = sup_at(p, a, depth * 2);
    if first == second {
        Ok(first)
    } else {
        Err(PosetError::Indeterminate { depth })
    }
}

/// The domain `L` presented through its finite truncations: at depth `d` the
/// universe is `T(d, d)`.
#[derive(Debug, Clone, Copy)]
pub struct LOracle {
    pub depth: u64,
}

impl OraclePoset for LOracle {
    type Elem = LElem;

    fn leq(&self, a: &LElem, b: &LElem) -> bool {
        a.leq(b)
    }

    fn universe(&self, depth: u64) -> (Vec<LElem>, bool) {
        (Truncation::new(depth, depth).elements(), false)
    }

    fn truncation(&self) -> u64 {
        self.depth
    }
}
