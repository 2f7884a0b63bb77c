use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::PosetError;

/// Set of elements of a finite poset, by index.
pub type ElemSet = BTreeSet<usize>;

/// Above this size the brute-force routines fall back to their closed forms.
pub const BRUTE_FORCE_LIMIT: usize = 16;

/// A labelled binary relation as given, before any closure or validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub elements: Vec<String>,
    pub leq: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    Reflexivity { a: String },
    Antisymmetry { a: String, b: String },
    Transitivity { a: String, b: String, c: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Reflexivity { a } => write!(f, "reflexivity: {a} <= {a} missing"),
            Violation::Antisymmetry { a, b } => {
                write!(f, "antisymmetry: {a} <= {b} and {b} <= {a} but {a} != {b}")
            }
            Violation::Transitivity { a, b, c } => {
                write!(f, "transitivity: {a} <= {b} <= {c} but {a} <= {c} missing")
            }
        }
    }
}

impl Relation {
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>, leq: &[(&str, &str)]) -> Self {
        Relation {
            elements: elements.into_iter().map(Into::into).collect(),
            leq: leq.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect(),
        }
    }

    fn matrix(&self) -> Result<Vec<bool>, PosetError> {
        let n = self.elements.len();
        for (i, l) in self.elements.iter().enumerate() {
            if self.elements[..i].contains(l) {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let index = |l: &str| {
            self.elements
                .iter()
                .position(|e| e == l)
                .ok_or_else(|| PosetError::UnknownLabel(l.to_string()))
        };
        let mut m = vec![false; n * n];
        for [a, b] in &self.leq {
            m[index(a)? * n + index(b)?] = true;
        }
        Ok(m)
    }
}

fn violations(labels: &[String], m: &[bool]) -> Vec<Violation> {
    let n = labels.len();
    let r = |i: usize, j: usize| m[i * n + j];
    let mut out = Vec::new();
    for (a, label) in labels.iter().enumerate() {
        if !r(a, a) {
            out.push(Violation::Reflexivity { a: label.clone() });
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if r(a, b) && r(b, a) {
                out.push(Violation::Antisymmetry {
                    a: labels[a].clone(),
                    b: labels[b].clone(),
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a == b || !r(a, b) {
                continue;
            }
            for c in 0..n {
                if b != c && r(b, c) && !r(a, c) {
                    out.push(Violation::Transitivity {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        c: labels[c].clone(),
                    });
                }
            }
        }
    }
    out
}

/// Lists every failure of reflexivity, antisymmetry and transitivity in the
/// relation exactly as given. Empty iff the relation is a partial order.
pub fn verify_partial_order(r: &Relation) -> Result<Vec<Violation>, PosetError> {
    Ok(violations(&r.elements, &r.matrix()?))
}

/// A finite partial order, stored as an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    le: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from a relation that must already be a partial order.
    pub fn from_order(r: &Relation) -> Result<FinitePoset, PosetError> {
        let le = r.matrix()?;
        let v = violations(&r.elements, &le);
        if !v.is_empty() {
            return Err(PosetError::NotAPartialOrder(v));
        }
        Ok(FinitePoset {
            labels: r.elements.clone(),
            le,
        })
    }

    /// Takes the reflexive-transitive closure of the relation, then checks
    /// antisymmetry.
    pub fn from_generators(r: &Relation) -> Result<FinitePoset, PosetError> {
        let mut le = r.matrix()?;
        let n = r.elements.len();
        for i in 0..n {
            le[i * n + i] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let v = violations(&r.elements, &le);
        if !v.is_empty() {
            return Err(PosetError::NotAPartialOrder(v));
        }
        Ok(FinitePoset {
            labels: r.elements.clone(),
            le,
        })
    }

    /// Builds a poset on the given labels from an order predicate.
    pub fn from_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<FinitePoset, PosetError> {
        let n = labels.len();
        let le = (0..n * n).map(|k| leq(k / n, k % n)).collect::<Vec<_>>();
        let v = violations(&labels, &le);
        if !v.is_empty() {
            return Err(PosetError::NotAPartialOrder(v));
        }
        Ok(FinitePoset { labels, le })
    }

    pub(crate) fn from_matrix_unchecked(n: usize, le: Vec<bool>) -> FinitePoset {
        FinitePoset {
            labels: (0..n).map(|i| i.to_string()).collect(),
            le,
        }
    }

    /// Loads the JSON format `{"elements": [...], "leq": [[a, b], ...]}`.
    /// Reflexive pairs are implicit and the transitive closure is applied.
    pub fn from_json(text: &str) -> Result<FinitePoset, PosetError> {
        let r: Relation = serde_json::from_str(text).map_err(|e| PosetError::Json(e.to_string()))?;
        FinitePoset::from_generators(&r)
    }

    /// The strict pairs `a < b` as a relation (reflexive pairs left implicit).
    pub fn to_relation(&self) -> Relation {
        let n = self.len();
        let mut leq = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.leq(i, j) {
                    leq.push([self.labels[i].clone(), self.labels[j].clone()]);
                }
            }
        }
        Relation {
            elements: self.labels.clone(),
            leq,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElemSet, PosetError> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn labels_of(&self, set: &ElemSet) -> Vec<&str> {
        set.iter().map(|&i| self.label(i)).collect()
    }

    pub fn all(&self) -> ElemSet {
        (0..self.len()).collect()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le[a * self.len() + b]
    }

    fn check(&self, set: &ElemSet) -> Result<(), PosetError> {
        match set.iter().find(|&&i| i >= self.len()) {
            Some(&i) => Err(PosetError::UnknownIndex(i)),
            None => Ok(()),
        }
    }

    /// `↑A = {y : ∃x ∈ A, x ≤ y}`.
    pub fn upset(&self, set: &ElemSet) -> Result<ElemSet, PosetError> {
        self.check(set)?;
        Ok((0..self.len())
            .filter(|&y| set.iter().any(|&x| self.leq(x, y)))
            .collect())
    }

    /// `↓A = {y : ∃x ∈ A, y ≤ x}`.
    pub fn downset(&self, set: &ElemSet) -> Result<ElemSet, PosetError> {
        self.check(set)?;
        Ok((0..self.len())
            .filter(|&y| set.iter().any(|&x| self.leq(y, x)))
            .collect())
    }

    pub fn is_upper_set(&self, set: &ElemSet) -> bool {
        set.iter()
            .all(|&x| (0..self.len()).all(|y| !self.leq(x, y) || set.contains(&y)))
    }

    /// Elements `x` with `↑x = {x}`.
    pub fn maximals(&self) -> ElemSet {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| y == x || !self.leq(x, y)))
            .collect()
    }

    pub fn upper_bounds(&self, set: &ElemSet) -> ElemSet {
        (0..self.len())
            .filter(|&u| set.iter().all(|&a| self.leq(a, u)))
            .collect()
    }

    /// Least upper bound, if it exists.
    pub fn sup(&self, set: &ElemSet) -> Option<usize> {
        let ub = self.upper_bounds(set);
        ub.iter().copied().find(|&u| ub.iter().all(|&v| self.leq(u, v)))
    }

    fn mask_set(mask: u64) -> ElemSet {
        (0..64).filter(|i| mask >> i & 1 == 1).collect()
    }

    fn is_directed_mask(&self, mask: u64) -> bool {
        let members: Vec<usize> = (0..self.len()).filter(|i| mask >> i & 1 == 1).collect();
        !members.is_empty()
            && members.iter().all(|&a| {
                members
                    .iter()
                    .all(|&b| members.iter().any(|&c| self.leq(a, c) && self.leq(b, c)))
            })
    }

    /// Every directed subset, when the poset is small enough to enumerate.
    pub fn directed_subsets(&self) -> Option<Vec<ElemSet>> {
        if self.len() > BRUTE_FORCE_LIMIT {
            return None;
        }
        Some(
            (1u64..1 << self.len())
                .filter(|&m| self.is_directed_mask(m))
                .map(Self::mask_set)
                .collect(),
        )
    }

    /// `x ≪ y`, decided from the definition over all directed subsets with a
    /// supremum. Every element of a finite poset is compact, so above
    /// [`BRUTE_FORCE_LIMIT`] this falls back to `x ≤ y`.
    pub fn way_below(&self, x: usize, y: usize) -> bool {
        let Some(directed) = self.directed_subsets() else {
            return self.leq(x, y);
        };
        directed.iter().all(|d| match self.sup(d) {
            Some(s) if self.leq(y, s) => d.iter().any(|&e| self.leq(x, e)),
            _ => true,
        })
    }

    /// Scott openness from its two clauses: an upper set that every directed
    /// set with supremum inside it already meets.
    pub fn is_scott_open(&self, set: &ElemSet) -> bool {
        if !self.is_upper_set(set) {
            return false;
        }
        let Some(directed) = self.directed_subsets() else {
            return true;
        };
        directed.iter().all(|d| match self.sup(d) {
            Some(s) if set.contains(&s) => d.iter().any(|e| set.contains(e)),
            _ => true,
        })
    }

    /// Every Scott-open set, when small enough to enumerate.
    pub fn scott_opens(&self) -> Option<Vec<ElemSet>> {
        if self.len() > BRUTE_FORCE_LIMIT {
            return None;
        }
        Some(
            (0u64..1 << self.len())
                .map(Self::mask_set)
                .filter(|s| self.is_scott_open(s))
                .collect(),
        )
    }

    /// Whether `set` is an intersection of countably many Scott-open sets.
    ///
    /// A finite poset has finitely many opens, so this is the intersection of
    /// all open supersets compared against `set`.
    pub fn is_gdelta(&self, set: &ElemSet) -> bool {
        let meet = match self.scott_opens() {
            Some(opens) => opens
                .into_iter()
                .filter(|o| set.is_subset(o))
                .fold(self.all(), |acc, o| &acc & &o),
            None => self.upset(set).unwrap_or_default(),
        };
        meet == *set
    }
}
