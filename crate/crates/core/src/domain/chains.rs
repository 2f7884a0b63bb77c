//! Chains `{x(m,n) : n ∈ ns}` inside one column and their suprema.

use std::fmt;

use super::{leq, DomainError, LElem};
use crate::seq::{ExtNat, Seq};

/// A decidable set of positive naturals, used to index a chain in a column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSet {
    Naturals,
    /// `start, start + step, start + 2·step, …`; bounded when `step == 0`.
    Arithmetic {
        start: u64,
        step: u64,
    },
    Primes,
    Squares,
    /// `base, base², base³, …`; bounded when `base == 1`.
    Powers {
        base: u64,
    },
    Finite(Vec<u64>),
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl IndexSet {
    pub fn evens() -> IndexSet {
        IndexSet::Arithmetic { start: 2, step: 2 }
    }

    pub fn is_unbounded(&self) -> bool {
        match self {
            IndexSet::Naturals | IndexSet::Primes | IndexSet::Squares => true,
            IndexSet::Arithmetic { start, step } => *start >= 1 && *step >= 1,
            IndexSet::Powers { base } => *base >= 2,
            IndexSet::Finite(_) => false,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            IndexSet::Naturals => n >= 1,
            IndexSet::Arithmetic { start, step } => {
                n >= *start && (*step == 0 && n == *start || *step > 0 && (n - start).is_multiple_of(*step))
            }
            IndexSet::Primes => is_prime(n),
            IndexSet::Squares => n >= 1 && n.isqrt() * n.isqrt() == n,
            IndexSet::Powers { base } => {
                let mut p = *base;
                while p < n && *base >= 2 {
                    p *= base;
                }
                n >= 1 && p == n
            }
            IndexSet::Finite(v) => n >= 1 && v.contains(&n),
        }
    }

    /// Smallest member strictly greater than `t`.
    pub fn first_above(&self, t: u64) -> Option<u64> {
        match self {
            IndexSet::Naturals => Some(t + 1),
            IndexSet::Arithmetic { start, step } => {
                if *start > t {
                    Some(*start)
                } else if *step == 0 {
                    None
                } else {
                    Some(start + ((t - start) / step + 1) * step)
                }
            }
            IndexSet::Primes => (t + 1..).find(|&n| is_prime(n)),
            IndexSet::Squares => {
                let r = (t + 1).isqrt();
                Some(if r * r > t { r * r } else { (r + 1) * (r + 1) })
            }
            IndexSet::Powers { base } => {
                if *base < 2 {
                    return (*base > t).then_some(*base);
                }
                let mut p = *base;
                while p <= t {
                    p *= base;
                }
                Some(p)
            }
            IndexSet::Finite(v) => v.iter().copied().filter(|&n| n > t).min(),
        }
    }

    pub fn first(&self) -> Option<u64> {
        self.first_above(0)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSet::Naturals => f.write_str("N"),
            IndexSet::Arithmetic { start, step } => write!(f, "{{{start} + {step}i}}"),
            IndexSet::Primes => f.write_str("primes"),
            IndexSet::Squares => f.write_str("squares"),
            IndexSet::Powers { base } => write!(f, "powers of {base}"),
            IndexSet::Finite(v) => write!(f, "{v:?}"),
        }
    }
}

/// Outcome of testing a candidate upper bound of a column chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainBound {
    /// `x(m,n)` with `n` in the index set is not below the candidate.
    Refuted {
        n: u64,
    },
    IsUpperBound,
}

/// Tests whether `a` bounds `{x(m,n) : n ∈ ns}` and, if not, names a chain
/// member that escapes it.
///
/// For a sequence `a` the escaping index is the first member of `ns` above
/// `a_m`, or the first member of `ns` when `a` is shorter than `m`. Only the
/// column top `x(m,w)` is ever reported as an upper bound.
pub fn refute_chain_upper_bound(m: u64, ns: &IndexSet, a: &LElem) -> Result<ChainBound, DomainError> {
    if m == 0 {
        return Err(DomainError::ZeroParameter);
    }
    if !ns.is_unbounded() {
        return Err(DomainError::BoundedIndexSet(ns.to_string()));
    }
    let unbounded = "index set is unbounded";
    let outcome = match a {
        LElem::Sigma(b) | LElem::Star(b) => {
            let n = match b.entry(m) {
                Some(e) => ns.first_above(e),
                None => ns.first(),
            };
            ChainBound::Refuted { n: n.expect(unbounded) }
        }
        LElem::X(ix) if ix.m != m => ChainBound::Refuted {
            n: ns.first().expect(unbounded),
        },
        LElem::X(ix) => match ix.n {
            ExtNat::Omega => ChainBound::IsUpperBound,
            ExtNat::Fin(top) => ChainBound::Refuted {
                n: ns.first_above(top).expect(unbounded),
            },
        },
    };
    if let ChainBound::Refuted { n } = outcome {
        debug_assert!(ns.contains(n) && !leq(&LElem::x(m, n), a));
    }
    Ok(outcome)
}

/// Sample of candidate bounds used by [`chain_sup`] to validate its answer.
fn candidate_bounds(m: u64) -> Vec<LElem> {
    let mut out = vec![LElem::x(m, 1), LElem::x(m, 1000), LElem::x_top(m + 1)];
    for c in [1, 2, 10, 1000] {
        for len in [m.saturating_sub(1), m, m + 1] {
            if len == 0 {
                continue;
            }
            let s = Seq::finite(vec![c; len as usize]).unwrap();
            out.push(LElem::Sigma(s.clone()));
            out.push(LElem::Star(s));
        }
        let s = Seq::periodic(vec![], vec![c]).unwrap();
        out.push(LElem::Sigma(s.clone()));
        out.push(LElem::Star(s));
    }
    out
}

/// The supremum of `{x(m,n) : n ∈ ns}` for an unbounded `ns`, which is the
/// column top `x(m,w)`.
///
/// Before answering, the column top is confirmed as an upper bound and a fixed
/// sample of competing candidates (finite points, sequences of lengths around
/// `m`, constant infinite sequences, both plain and starred) is refuted.
pub fn chain_sup(m: u64, ns: &IndexSet) -> Result<LElem, DomainError> {
    let top = LElem::x_top(m.max(1));
    if refute_chain_upper_bound(m, ns, &top)? != ChainBound::IsUpperBound {
        unreachable!("the column top bounds its column");
    }
    for candidate in candidate_bounds(m) {
        if refute_chain_upper_bound(m, ns, &candidate)? == ChainBound::IsUpperBound {
            return Err(DomainError::ChainSupViolation { m, candidate });
        }
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(t: &str) -> LElem {
        t.parse().unwrap()
    }

    #[test]
    fn refutations() {
        let r = refute_chain_upper_bound(2, &IndexSet::Naturals, &e("s[1,5,7,11]")).unwrap();
        assert_eq!(r, ChainBound::Refuted { n: 6 });
        assert!(!LElem::x(2, 6).leq(&e("s[1,5,7,11]")));

        let r = refute_chain_upper_bound(3, &IndexSet::evens(), &e("s[9,9]")).unwrap();
        assert_eq!(r, ChainBound::Refuted { n: 2 });

        let r = refute_chain_upper_bound(1, &IndexSet::Naturals, &e("s[2|7]")).unwrap();
        assert_eq!(r, ChainBound::Refuted { n: 3 });
        assert!(!LElem::x(1, 3).leq(&e("s[2|7]")));

        let r = refute_chain_upper_bound(4, &IndexSet::Primes, &e("t[1,1,1,13]")).unwrap();
        assert_eq!(r, ChainBound::Refuted { n: 17 });

        assert_eq!(
            refute_chain_upper_bound(4, &IndexSet::Primes, &e("x(4,w)")).unwrap(),
            ChainBound::IsUpperBound
        );
        assert_eq!(
            refute_chain_upper_bound(4, &IndexSet::Squares, &e("x(4,10)")).unwrap(),
            ChainBound::Refuted { n: 16 }
        );
        assert_eq!(
            refute_chain_upper_bound(4, &IndexSet::Squares, &e("x(5,w)")).unwrap(),
            ChainBound::Refuted { n: 1 }
        );
    }

    #[test]
    fn bounded_sets_rejected() {
        for ns in [
            IndexSet::Finite(vec![3]),
            IndexSet::Arithmetic { start: 4, step: 0 },
            IndexSet::Powers { base: 1 },
        ] {
            assert!(matches!(
                refute_chain_upper_bound(1, &ns, &e("s[1]")),
                Err(DomainError::BoundedIndexSet(_))
            ));
            assert!(chain_sup(1, &ns).is_err());
        }
    }

    #[test]
    fn sups() {
        assert_eq!(chain_sup(1, &IndexSet::Naturals).unwrap(), LElem::x_top(1));
        assert_eq!(chain_sup(7, &IndexSet::Primes).unwrap(), LElem::x_top(7));
        assert_eq!(chain_sup(3, &IndexSet::Powers { base: 3 }).unwrap(), LElem::x_top(3));
    }

    #[test]
    fn index_set_membership_matches_first_above() {
        let sets = [
            IndexSet::Naturals,
            IndexSet::evens(),
            IndexSet::Arithmetic { start: 5, step: 3 },
            IndexSet::Primes,
            IndexSet::Squares,
            IndexSet::Powers { base: 2 },
            IndexSet::Finite(vec![4, 9]),
        ];
        for ns in &sets {
            for t in 0..60 {
                let brute = (t + 1..200).find(|&n| ns.contains(n));
                assert_eq!(ns.first_above(t), brute, "{ns} above {t}");
            }
        }
    }
}
