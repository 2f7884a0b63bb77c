//! The counterexample domain `L = X ∪ Σ ∪ Σ*`.
//!
//! * `X` is a countable family of columns `x(m,1) < x(m,2) < … < x(m,w)`.
//! * `Σ` is the sequence tree of [`Seq`] under the prefix order.
//! * `Σ*` is a tagged copy of `Σ` sitting above it: every `a` is below `a*`.
//!
//! A finite point `x(k,m)` lies below a sequence `v` (plain or starred)
//! exactly when `v` has a `k`-th entry and that entry is at least `m`. The top
//! point `x(k,w)` of a column is below nothing except itself, which is what
//! makes every column converge to its own top even though sequences dominate
//! arbitrarily high finite points.
//!
//! ```
//! use scottmax::domain::LElem;
//!
//! let x: LElem = "x(4,11)".parse().unwrap();
//! let a: LElem = "s[1,5,7,11]".parse().unwrap();
//! assert!(x.leq(&a));
//! assert!(a.leq(&a.star().unwrap()));
//! ```

mod approx;
mod chains;
mod claims;
mod truncation;

pub use approx::{approximant, compact_by_chain};
pub use chains::{chain_sup, refute_chain_upper_bound, ChainBound, IndexSet};
pub use claims::{
    claim1_check, claim2_check, directed_restriction_check, min_upper_generators, MinUpperGenerators, Target,
};
pub use truncation::Truncation;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::seq::{ExtNat, Seq};
use crate::syntax::{Cursor, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("expected a {expected} element, got {found}")]
    WrongVariant { expected: Part, found: LElem },
    #[error("index set {0} is bounded; an infinite set is required")]
    BoundedIndexSet(String),
    #[error("set is not directed: {0} and {1} have no upper bound inside it")]
    NotDirected(LElem, LElem),
    #[error("set is empty")]
    EmptySet,
    #[error("no {0} element of the set bounds the whole set")]
    NoTargetBound(Part),
    #[error("parameters must be positive")]
    ZeroParameter,
    #[error("{candidate} bounds the chain below x({m},w) but was expected to be refuted")]
    ChainSupViolation { m: u64, candidate: LElem },
}

/// Index of a point `x(m,n)` of `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct XIndex {
    pub m: u64,
    pub n: ExtNat,
}

/// The three parts of `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    X,
    Sigma,
    Star,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::X => "x-point",
            Part::Sigma => "sigma",
            Part::Star => "starred",
        })
    }
}

/// An element of `L`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LElem {
    X(XIndex),
    Sigma(Seq),
    Star(Seq),
}

impl LElem {
    /// The finite point `x(m,n)`. Panics if either index is zero.
    pub fn x(m: u64, n: u64) -> LElem {
        assert!(m >= 1 && n >= 1, "x-point indices are positive");
        LElem::X(XIndex { m, n: ExtNat::Fin(n) })
    }

    /// The column top `x(m,w)`. Panics if `m` is zero.
    pub fn x_top(m: u64) -> LElem {
        assert!(m >= 1, "x-point indices are positive");
        LElem::X(XIndex { m, n: ExtNat::Omega })
    }

    pub fn part(&self) -> Part {
        match self {
            LElem::X(_) => Part::X,
            LElem::Sigma(_) => Part::Sigma,
            LElem::Star(_) => Part::Star,
        }
    }

    /// Payload of a plain or starred sequence.
    pub fn payload(&self) -> Option<&Seq> {
        match self {
            LElem::X(_) => None,
            LElem::Sigma(s) | LElem::Star(s) => Some(s),
        }
    }

    pub fn as_x(&self) -> Option<XIndex> {
        match self {
            LElem::X(ix) => Some(*ix),
            _ => None,
        }
    }

    /// The order of `L`.
    pub fn leq(&self, other: &LElem) -> bool {
        leq(self, other)
    }

    pub fn star(&self) -> Result<LElem, DomainError> {
        star(self)
    }

    pub fn unstar(&self) -> Result<LElem, DomainError> {
        unstar(self)
    }

    pub fn is_maximal(&self) -> bool {
        is_maximal(self)
    }

    pub fn is_compact(&self) -> bool {
        is_compact(self)
    }
}

/// `u ≤ v` in `L`.
///
/// The only positive cases are: prefix order inside `Σ`, inside `Σ*`, and from
/// `Σ` into `Σ*`; the column order inside `X`; and a finite `x(k,m)` below any
/// plain or starred `v` whose `k`-th entry is at least `m`. All other pairs
/// are incomparable.
pub fn leq(u: &LElem, v: &LElem) -> bool {
    match (u, v) {
        (LElem::Sigma(a), LElem::Sigma(b)) | (LElem::Star(a), LElem::Star(b)) | (LElem::Sigma(a), LElem::Star(b)) => {
            a.leq(b)
        }
        (LElem::X(p), LElem::X(q)) => p.m == q.m && p.n <= q.n,
        (LElem::X(p), LElem::Sigma(b) | LElem::Star(b)) => match p.n {
            ExtNat::Fin(m) => b.entry(p.m).is_some_and(|e| e >= m),
            ExtNat::Omega => false,
        },
        (LElem::Star(_), LElem::Sigma(_)) | (LElem::Sigma(_) | LElem::Star(_), LElem::X(_)) => false,
    }
}

pub fn star(u: &LElem) -> Result<LElem, DomainError> {
    match u {
        LElem::Sigma(a) => Ok(LElem::Star(a.clone())),
        other => Err(DomainError::WrongVariant {
            expected: Part::Sigma,
            found: other.clone(),
        }),
    }
}

pub fn unstar(u: &LElem) -> Result<LElem, DomainError> {
    match u {
        LElem::Star(a) => Ok(LElem::Sigma(a.clone())),
        other => Err(DomainError::WrongVariant {
            expected: Part::Star,
            found: other.clone(),
        }),
    }
}

/// Maximal elements are the column tops and the starred infinite sequences.
pub fn is_maximal(u: &LElem) -> bool {
    match u {
        LElem::X(ix) => ix.n == ExtNat::Omega,
        LElem::Star(a) => a.is_infinite(),
        LElem::Sigma(_) => false,
    }
}

/// Compact elements are the finite points and the finite sequences.
pub fn is_compact(u: &LElem) -> bool {
    match u {
        LElem::X(ix) => ix.n.is_finite(),
        LElem::Sigma(a) | LElem::Star(a) => a.is_finite(),
    }
}

/// Whether `x(k,m)` (finite `m`) can be placed under some sequence extending
/// `b` in its own tree.
fn x_meets_extension(k: u64, m: u64, b: &Seq) -> bool {
    match b.entry(k) {
        Some(e) => e >= m,
        None => b.is_finite(),
    }
}

/// Whether `{u, v}` has an upper bound in `L`, by case analysis on the parts.
///
/// Two finite points in different columns are always bounded: a sequence long
/// enough to reach both columns, with large enough entries there, dominates
/// both.
pub fn has_upper_bound(u: &LElem, v: &LElem) -> bool {
    match (u, v) {
        (LElem::X(p), LElem::X(q)) => p.m == q.m || (p.n.is_finite() && q.n.is_finite()),
        (LElem::X(p), LElem::Sigma(b) | LElem::Star(b)) | (LElem::Sigma(b) | LElem::Star(b), LElem::X(p)) => {
            match p.n {
                ExtNat::Fin(m) => x_meets_extension(p.m, m, b),
                ExtNat::Omega => false,
            }
        }
        (LElem::Sigma(a) | LElem::Star(a), LElem::Sigma(b) | LElem::Star(b)) => a.comparable(b),
    }
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LElem::X(ix) => write!(f, "x({},{})", ix.m, ix.n),
            LElem::Sigma(a) => write!(f, "s{a}"),
            LElem::Star(a) => write!(f, "t{a}"),
        }
    }
}

impl LElem {
    pub(crate) fn parse_at(cur: &mut Cursor<'_>) -> Result<LElem, ParseError> {
        cur.skip_ws();
        let at = cur.pos();
        match cur.peek() {
            Some('x') => {
                cur.expect('x')?;
                cur.expect('(')?;
                let m = cur.nat()?;
                cur.expect(',')?;
                let n = if cur.eat('w') {
                    ExtNat::Omega
                } else {
                    ExtNat::Fin(cur.nat()?)
                };
                cur.expect(')')?;
                Ok(LElem::X(XIndex { m, n }))
            }
            Some('s') => {
                cur.expect('s')?;
                Ok(LElem::Sigma(Seq::parse_at(cur)?))
            }
            Some('t') => {
                cur.expect('t')?;
                Ok(LElem::Star(Seq::parse_at(cur)?))
            }
            _ => Err(ParseError::new(
                at,
                match cur.peek() {
                    Some(c) => format!("expected 'x', 's' or 't', found '{c}'"),
                    None => "expected 'x', 's' or 't', found end of input".to_string(),
                },
            )),
        }
    }
}

impl FromStr for LElem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let e = LElem::parse_at(&mut cur)?;
        cur.finish()?;
        Ok(e)
    }
}

impl Serialize for LElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
