//! Checkable forms of the structural facts about `L`: transport of the order
//! along the star map, minimal sequences above a finite point, and cofinality
//! of the sequence part of a directed set.

use super::{leq, DomainError, LElem, Part};
use crate::seq::Seq;

/// `x(k,m) ≤ a` iff `x(k,m) ≤ a*`. Always true; returns the equivalence.
pub fn claim1_check(k: u64, m: u64, a: &Seq) -> bool {
    let x = LElem::x(k, m);
    leq(&x, &LElem::Sigma(a.clone())) == leq(&x, &LElem::Star(a.clone()))
}

/// `a ≤ b`, `a ≤ b*`, `a* ≤ b*` and `a ⊑ b` all agree. Always true.
pub fn claim2_check(a: &Seq, b: &Seq) -> bool {
    let (sa, sb) = (LElem::Sigma(a.clone()), LElem::Sigma(b.clone()));
    let (ta, tb) = (LElem::Star(a.clone()), LElem::Star(b.clone()));
    let plain = a.leq(b);
    [leq(&sa, &sb), leq(&sa, &tb), leq(&ta, &tb)]
        .into_iter()
        .all(|r| r == plain)
}

/// The minimal plain sequences above `x(k,m)`: all `⟨n₁,…,n_k⟩` with
/// `n_k ≥ m`. Distinct members have no common upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinUpperGenerators {
    pub k: u64,
    pub m: u64,
}

pub fn min_upper_generators(k: u64, m: u64) -> Result<MinUpperGenerators, DomainError> {
    if k == 0 || m == 0 {
        return Err(DomainError::ZeroParameter);
    }
    Ok(MinUpperGenerators { k, m })
}

impl MinUpperGenerators {
    pub fn contains(&self, a: &Seq) -> bool {
        a.as_finite()
            .is_some_and(|v| v.len() as u64 == self.k && v[v.len() - 1] >= self.m)
    }

    /// All members whose entries are at most `bound`, in lexicographic order.
    pub fn enumerate(&self, bound: u64) -> Vec<Seq> {
        let k = self.k as usize;
        if bound < self.m {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = vec![1u64; k];
        cur[k - 1] = self.m;
        loop {
            out.push(Seq::finite(cur.clone()).unwrap());
            // odometer, last digit ranges over m..=bound, the rest over 1..=bound
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                let low = if i == k - 1 { self.m } else { 1 };
                if cur[i] < bound {
                    cur[i] += 1;
                    break;
                }
                cur[i] = low;
            }
        }
    }
}

/// Which sequence part a directed set is restricted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Sigma,
    Star,
}

impl Target {
    fn part(self) -> Part {
        match self {
            Target::Sigma => Part::Sigma,
            Target::Star => Part::Star,
        }
    }
}

/// For a finite directed `d` whose greatest element is of the `target` part,
/// checks that the `target` members of `d` are cofinal in `d`.
///
/// Errors when `d` is empty, not directed, or has no bound of the `target`
/// part inside it.
pub fn directed_restriction_check(d: &[LElem], target: Target) -> Result<bool, DomainError> {
    if d.is_empty() {
        return Err(DomainError::EmptySet);
    }
    for (i, a) in d.iter().enumerate() {
        for b in &d[i + 1..] {
            if !d.iter().any(|c| leq(a, c) && leq(b, c)) {
                return Err(DomainError::NotDirected(a.clone(), b.clone()));
            }
        }
    }
    let members: Vec<&LElem> = d.iter().filter(|u| u.part() == target.part()).collect();
    if !members.iter().any(|t| d.iter().all(|u| leq(u, t))) {
        return Err(DomainError::NoTargetBound(target.part()));
    }
    Ok(d.iter().all(|u| members.iter().any(|t| leq(u, t))))
}
