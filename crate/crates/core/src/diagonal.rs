//! Diagonalization against a countable family of open sets.
//!
//! Given opens `U_1, U_2, …` that each contain every maximal element, the
//! column top `x(k,w)` lies in `U_k`, and since `U_k` is Scott open some finite
//! `x(k,n_k)` already does. Taking the least such `n_k` at each level gives a
//! sequence `a = ⟨n_1, n_2, …⟩` with `x(k,n_k) ≤ a` for all `k`, so the plain
//! (non-maximal) sequence `a` lies in every `U_k`. No countable intersection
//! of opens is therefore exactly the set of maximal elements.
//!
//! A run to depth `K` is recorded in a [`DiagCertificate`], whose witness is
//! the plain sequence `⟨n_1, …, n_K⟩` followed by ones.
//!
//! ```
//! use scottmax::diagonal::{diagonalize, DiagOptions};
//! use scottmax::opens::Family;
//!
//! let cert = diagonalize(&Family::Canonical, 5, DiagOptions::default()).unwrap();
//! assert_eq!(cert.prefix, [1, 2, 3, 4, 5]);
//! assert_eq!(cert.witness().to_string(), "s[1,2,3,4,5|1]");
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::domain::LElem;
use crate::opens::{FnFamily, GenFamily, IndexedFamily, OpenDesc};
use crate::seq::Seq;

pub const DEFAULT_BUDGET: u64 = 10_000;

/// Result of searching one level for the least `n` with `x(k,n) ∈ U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelSearch {
    Found {
        n: u64,
        generator: LElem,
    },
    /// No `n ≤ budget` works. Membership tests used equal the budget.
    BudgetExhausted,
}

/// Least `n ≤ budget` with `x(k,n) ∈ U`, with a generator of `U` below it.
pub fn find_level_index(u: &OpenDesc, k: u64, budget: u64) -> LevelSearch {
    (1..=budget)
        .find_map(|n| {
            u.witness(&LElem::x(k, n))
                .map(|generator| LevelSearch::Found { n, generator })
        })
        .unwrap_or(LevelSearch::BudgetExhausted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagOptions {
    /// Membership tests allowed per level.
    pub budget: u64,
    /// Reject a level whose open set misses a maximal element.
    pub cover_check: bool,
}

impl Default for DiagOptions {
    fn default() -> Self {
        DiagOptions {
            budget: DEFAULT_BUDGET,
            cover_check: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub k: u64,
    pub n: u64,
    /// Generator of `U_k` below `x(k,n)`.
    #[serde(rename = "gen")]
    pub generator: LElem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagCertificate {
    pub family: String,
    pub depth: u64,
    pub levels: Vec<Level>,
    pub prefix: Vec<u64>,
}

impl DiagCertificate {
    pub fn witness(&self) -> LElem {
        witness_element(&self.prefix)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(text: &str) -> Result<DiagCertificate, CertError> {
        serde_json::from_str(text).map_err(|e| CertError::Json(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum FailureReason {
    /// No index within the budget; the search may succeed with more.
    Budget { budget: u64 },
    /// `U_k` misses this maximal element, so the family does not cover the
    /// maximal points and the search at this level need not terminate.
    NotCovering { uncovered: LElem },
    /// The assembled witness fell outside some `U_j`.
    Closure { open: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagFailure {
    pub level: u64,
    #[serde(flatten)]
    pub reason: FailureReason,
}

impl fmt::Display for DiagFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.reason {
            FailureReason::Budget { budget } => {
                write!(f, "level {}: no index found within budget {budget}", self.level)
            }
            FailureReason::NotCovering { uncovered } => {
                write!(f, "level {}: open set misses maximal element {uncovered}", self.level)
            }
            FailureReason::Closure { open } => {
                write!(f, "level {}: witness is not in open set {open}", self.level)
            }
        }
    }
}

/// The witness for a prefix: the plain sequence `prefix` followed by ones.
pub fn witness_element(prefix: &[u64]) -> LElem {
    LElem::Sigma(Seq::periodic(prefix.to_vec(), vec![1]).expect("prefix entries are positive"))
}

/// Runs the diagonal construction to depth `depth`.
pub fn diagonalize(
    family: &dyn IndexedFamily,
    depth: u64,
    options: DiagOptions,
) -> Result<DiagCertificate, DiagFailure> {
    let mut levels = Vec::new();
    for k in 1..=depth {
        let u = family.open(k);
        if options.cover_check {
            if let Some(uncovered) = u.uncovered_max() {
                return Err(DiagFailure {
                    level: k,
                    reason: FailureReason::NotCovering { uncovered },
                });
            }
        }
        match find_level_index(&u, k, options.budget) {
            LevelSearch::Found { n, generator } => levels.push(Level { k, n, generator }),
            LevelSearch::BudgetExhausted => {
                return Err(DiagFailure {
                    level: k,
                    reason: FailureReason::Budget { budget: options.budget },
                })
            }
        }
    }
    let prefix: Vec<u64> = levels.iter().map(|l| l.n).collect();
    let witness = witness_element(&prefix);
    if let Some(open) = (1..=depth).find(|&j| !family.open(j).contains(&witness)) {
        return Err(DiagFailure {
            level: open,
            reason: FailureReason::Closure { open },
        });
    }
    Ok(DiagCertificate {
        family: family.reference(),
        depth,
        levels,
        prefix,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertError {
    #[error("invalid certificate JSON: {0}")]
    Json(String),
    #[error("certificate is for family {found:?}, expected {expected:?}")]
    FamilyMismatch { expected: String, found: String },
    #[error("levels do not run 1..={depth} in order")]
    LevelShape { depth: u64 },
    #[error("level {k}: generator {generator} is not a compact element of U_{k}")]
    BadGenerator { k: u64, generator: LElem },
    #[error("level {k}: generator does not lie below x({k},{n})")]
    GeneratorNotBelow { k: u64, n: u64 },
    #[error("level {k}: x({k},{n}) is not in U_{k}")]
    NotMember { k: u64, n: u64 },
    #[error("level {k}: index {n} is not the least, x({k},{smaller}) is already in U_{k}")]
    NotLeast { k: u64, n: u64, smaller: u64 },
    #[error("prefix does not match the level indices")]
    PrefixMismatch,
    #[error("witness is not in U_{0}")]
    WitnessOutside(u64),
    #[error("witness is maximal")]
    WitnessMaximal,
}

/// Re-checks a certificate against the family it claims to come from.
///
/// Checks, in order: the family reference and level shape, that each
/// generator is a compact member of `U_k` below `x(k,n_k)`, that `n_k` is the
/// least such index, and that the witness built from the prefix lies in every
/// `U_k` and is not maximal.
pub fn verify_certificate(cert: &DiagCertificate, family: &dyn IndexedFamily) -> Result<(), CertError> {
    let expected = family.reference();
    if cert.family != expected {
        return Err(CertError::FamilyMismatch {
            expected,
            found: cert.family.clone(),
        });
    }
    let shaped =
        cert.levels.len() as u64 == cert.depth && cert.levels.iter().zip(1..).all(|(l, k)| l.k == k && l.n >= 1);
    if !shaped {
        return Err(CertError::LevelShape { depth: cert.depth });
    }
    for Level { k, n, generator } in &cert.levels {
        let (k, n) = (*k, *n);
        let u = family.open(k);
        if !generator.is_compact() || !u.contains(generator) {
            return Err(CertError::BadGenerator {
                k,
                generator: generator.clone(),
            });
        }
        if !generator.leq(&LElem::x(k, n)) {
            return Err(CertError::GeneratorNotBelow { k, n });
        }
        if !u.contains(&LElem::x(k, n)) {
            return Err(CertError::NotMember { k, n });
        }
        if let Some(smaller) = (1..n).find(|&j| u.contains(&LElem::x(k, j))) {
            return Err(CertError::NotLeast { k, n, smaller });
        }
    }
    if cert.prefix != cert.levels.iter().map(|l| l.n).collect::<Vec<_>>() {
        return Err(CertError::PrefixMismatch);
    }
    let witness = cert.witness();
    if let Some(j) = (1..=cert.depth).find(|&j| !family.open(j).contains(&witness)) {
        return Err(CertError::WitnessOutside(j));
    }
    if witness.is_maximal() {
        return Err(CertError::WitnessMaximal);
    }
    Ok(())
}

/// A fleet of families in which every open contains all maximal elements,
/// used to exercise the construction beyond the canonical family.
pub fn sample_families() -> Vec<Box<dyn IndexedFamily>> {
    fn open(families: Vec<GenFamily>) -> OpenDesc {
        OpenDesc::new(families).expect("sample parameters are positive")
    }
    use GenFamily::*;
    vec![
        Box::new(FnFamily {
            name: "rank-star".into(),
            make: |k| open(vec![XRankAtLeast { k }, StarLenAtLeast { k }]),
        }),
        Box::new(FnFamily {
            name: "double-rank".into(),
            make: |k| open(vec![XRankAtLeast { k: 2 * k }, SigmaLenAtLeast { k }]),
        }),
        Box::new(FnFamily {
            name: "square-rank".into(),
            make: |k| open(vec![XRankAtLeast { k: k * k }, StarLenAtLeast { k: 1 }]),
        }),
        Box::new(FnFamily {
            name: "rank-one".into(),
            make: |_| open(vec![XRankAtLeast { k: 1 }]),
        }),
        Box::new(FnFamily {
            name: "first-column".into(),
            make: |k| open(vec![XRankAtLeast { k: k + 3 }, XColumn { m: 1, min_n: 1 }]),
        }),
        // Entries stay below k+2 unless the rank part applies, so every
        // starred sequence outside it starts with one of the listed prefixes.
        Box::new(FnFamily {
            name: "prefix-cover".into(),
            make: |k| {
                let elems = (1..=k + 1).map(|j| LElem::Sigma(Seq::single(j))).collect();
                open(vec![XRankAtLeast { k: k + 2 }, ExplicitList { elems }])
            },
        }),
    ]
}
