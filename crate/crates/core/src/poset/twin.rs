//! Two ω-chains `x₁ < x₂ < … < x_w` and `y₁ < y₂ < … < y_w`, linked by
//! `x_m ≤ y_n` for finite `m ≤ n`.
//!
//! Under the [`TwinOrder::Split`] order the tops `x_w` and `y_w` are
//! incomparable, so the chain `{x_n}` has two minimal upper bounds and no
//! supremum. [`TwinOrder::Joined`] adds `x_w ≤ y_w`, and the supremum becomes
//! `x_w`. Everything is computed by index arithmetic over `ℕ ∪ {w}`.
//!
//! ```
//! use scottmax::poset::{SupOutcome, TwinChains, TwinElem, TwinOrder, TwinSubset};
//!
//! let split = TwinChains::new(TwinOrder::Split);
//! assert_eq!(
//!     split.sup(&TwinSubset::XChain),
//!     SupOutcome::NoLeast(TwinElem::x_top(), TwinElem::y_top())
//! );
//! let joined = TwinChains::new(TwinOrder::Joined);
//! assert_eq!(joined.sup(&TwinSubset::XChain), SupOutcome::Sup(TwinElem::x_top()));
//! ```

use std::fmt;
use std::str::FromStr;

use super::oracle::{least_of, sup_in_oracle, OraclePoset, SupOutcome};
use crate::seq::ExtNat;
use crate::syntax::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TwinElem {
    X(ExtNat),
    Y(ExtNat),
}

impl TwinElem {
    pub fn x(n: u64) -> TwinElem {
        TwinElem::X(ExtNat::Fin(n))
    }
    pub fn y(n: u64) -> TwinElem {
        TwinElem::Y(ExtNat::Fin(n))
    }
    pub fn x_top() -> TwinElem {
        TwinElem::X(ExtNat::Omega)
    }
    pub fn y_top() -> TwinElem {
        TwinElem::Y(ExtNat::Omega)
    }

    fn index(self) -> ExtNat {
        match self {
            TwinElem::X(i) | TwinElem::Y(i) => i,
        }
    }
}

impl fmt::Display for TwinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwinElem::X(i) => write!(f, "x_{i}"),
            TwinElem::Y(i) => write!(f, "y_{i}"),
        }
    }
}

/// Parses the display form `x_3`, `y_w`.
impl FromStr for TwinElem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim_start();
        let lead = s.len() - t.len();
        let make: fn(ExtNat) -> TwinElem = match t.chars().next() {
            Some('x') => TwinElem::X,
            Some('y') => TwinElem::Y,
            _ => return Err(ParseError::new(lead, "expected 'x' or 'y'")),
        };
        let Some(index) = t[1..].strip_prefix('_') else {
            return Err(ParseError::new(lead + 1, "expected '_'"));
        };
        let at = lead + 2;
        match index.trim_end() {
            "w" => Ok(make(ExtNat::Omega)),
            digits => match digits.parse::<u64>() {
                Ok(n) if n > 0 => Ok(make(ExtNat::Fin(n))),
                _ => Err(ParseError::new(at, "expected a positive index or 'w'")),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwinOrder {
    /// Closure of the two chains and `x_m ≤ y_n` for finite `m ≤ n`.
    Split,
    /// `Split` plus `x_w ≤ y_w`.
    Joined,
}

/// Subsets whose supremum can be decided exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwinSubset {
    /// `{x_n : n ∈ ℕ}`
    XChain,
    /// `{y_n : n ∈ ℕ}`
    YChain,
    Finite(Vec<TwinElem>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwinChains {
    pub order: TwinOrder,
}

impl TwinChains {
    pub fn new(order: TwinOrder) -> Self {
        TwinChains { order }
    }

    /// The generating relation before closure.
    pub fn generator(&self, a: TwinElem, b: TwinElem) -> bool {
        use TwinElem::*;
        match (a, b) {
            (X(i), X(j)) | (Y(i), Y(j)) => i <= j,
            (X(ExtNat::Fin(m)), Y(ExtNat::Fin(n))) => m <= n,
            (X(ExtNat::Omega), Y(ExtNat::Omega)) => self.order == TwinOrder::Joined,
            _ => false,
        }
    }

    /// The order: reflexive-transitive closure of [`TwinChains::generator`].
    ///
    /// Closing adds `x_m ≤ y_w` for every finite `m` (through `y_m`) and
    /// nothing else, since `y`s are never below `x`s.
    pub fn leq(&self, a: TwinElem, b: TwinElem) -> bool {
        use TwinElem::*;
        match (a, b) {
            (X(ExtNat::Fin(_)), Y(ExtNat::Omega)) => true,
            _ => self.generator(a, b),
        }
    }

    fn bounds_chain(&self, chain_at: fn(u64) -> TwinElem, e: TwinElem) -> bool {
        match e.index() {
            // x_{j+1} (resp. y_{j+1}) escapes every element of finite index j.
            ExtNat::Fin(j) => self.leq(chain_at(j + 1), e),
            // Below a top, the order on finite indices does not depend on the
            // index, so one representative decides all members.
            ExtNat::Omega => self.leq(chain_at(1), e),
        }
    }

    /// Exact supremum of a subset.
    pub fn sup(&self, subset: &TwinSubset) -> SupOutcome<TwinElem> {
        let chain_at: fn(u64) -> TwinElem = match subset {
            TwinSubset::XChain => TwinElem::x,
            TwinSubset::YChain => TwinElem::y,
            TwinSubset::Finite(a) => {
                // A least bound of a finite set has index at most its largest
                // finite index, or is a top; one extra level keeps the
                // oracle's stability check honest.
                let depth = a.iter().filter_map(|e| e.index().finite()).max().unwrap_or(1) + 1;
                let oracle = TwinOracle { chains: *self, depth };
                return sup_in_oracle(&oracle, a).unwrap_or(SupOutcome::Unbounded);
            }
        };
        // Finite-index elements never bound an infinite chain; only tops remain.
        let ub: Vec<TwinElem> = [TwinElem::x_top(), TwinElem::y_top()]
            .into_iter()
            .filter(|&e| self.bounds_chain(chain_at, e))
            .collect();
        least_of(&ub, |a, b| self.leq(*a, *b))
    }

    pub fn oracle(&self, depth: u64) -> TwinOracle {
        TwinOracle { chains: *self, depth }
    }
}

/// [`TwinChains`] as an oracle poset: depth `d` enumerates indices `1..=d`
/// and both tops.
#[derive(Debug, Clone, Copy)]
pub struct TwinOracle {
    chains: TwinChains,
    depth: u64,
}

impl OraclePoset for TwinOracle {
    type Elem = TwinElem;

    fn leq(&self, a: &TwinElem, b: &TwinElem) -> bool {
        self.chains.leq(*a, *b)
    }

    fn universe(&self, depth: u64) -> (Vec<TwinElem>, bool) {
        let mut out: Vec<TwinElem> = (1..=depth).flat_map(|n| [TwinElem::x(n), TwinElem::y(n)]).collect();
        out.push(TwinElem::x_top());
        out.push(TwinElem::y_top());
        (out, false)
    }

    fn truncation(&self) -> u64 {
        self.depth
    }
}
