//! Scott-open subsets of `L`, described by their compact generators.
//!
//! Every open set here is a finite union of [`GenFamily`] values, each of
//! which names a (possibly infinite) set of compact elements `c`; the open set
//! is the union of the principal filters `↑c`. Because the compact elements of
//! `L` form a base, every Scott-open set is of this shape, and membership is
//! decided per family in closed form.
//!
//! ```
//! use scottmax::domain::LElem;
//! use scottmax::opens::canonical_family;
//!
//! let u3 = canonical_family(3);
//! assert!(u3.contains(&"x(5,7)".parse().unwrap()));
//! assert!(!u3.contains(&"x(5,2)".parse().unwrap()));
//! assert!(u3.contains(&"s[9,9,9]".parse().unwrap()));
//! assert!(u3.covers_max());
//! ```

use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::domain::{LElem, XIndex};
use crate::seq::{ExtNat, Seq};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OpenError {
    #[error("generator {0} is not compact")]
    NotCompact(LElem),
    #[error("family parameters must be positive")]
    ZeroParameter,
    #[error("an open set needs at least one generator family")]
    NoFamilies,
    #[error("an explicit family needs at least one open set")]
    NoOpens,
    #[error("unknown family kind {0:?}")]
    UnknownKind(String),
    #[error("invalid family JSON: {0}")]
    Json(String),
}

/// A parametric set of compact generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GenFamily {
    /// One compact element.
    Single {
        elem: LElem,
    },
    /// All `x(m,j)` with `j ≥ k`, in every column.
    XRankAtLeast {
        k: u64,
    },
    /// All plain finite sequences of length `≥ k`.
    SigmaLenAtLeast {
        k: u64,
    },
    /// All starred finite sequences of length `≥ k`.
    StarLenAtLeast {
        k: u64,
    },
    /// `x(m,j)` for `j ≥ min_n`.
    XColumn {
        m: u64,
        min_n: u64,
    },
    ExplicitList {
        elems: Vec<LElem>,
    },
}

fn check_compact(c: &LElem) -> Result<(), OpenError> {
    if c.is_compact() {
        Ok(())
    } else {
        Err(OpenError::NotCompact(c.clone()))
    }
}

impl GenFamily {
    pub fn validate(&self) -> Result<(), OpenError> {
        match self {
            GenFamily::Single { elem } => check_compact(elem),
            GenFamily::ExplicitList { elems } => elems.iter().try_for_each(check_compact),
            GenFamily::XRankAtLeast { k } | GenFamily::SigmaLenAtLeast { k } | GenFamily::StarLenAtLeast { k } => {
                if *k == 0 {
                    Err(OpenError::ZeroParameter)
                } else {
                    Ok(())
                }
            }
            GenFamily::XColumn { m, min_n } => {
                if *m == 0 || *min_n == 0 {
                    Err(OpenError::ZeroParameter)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// A generator of this family lying below `u`, if any.
    pub fn witness(&self, u: &LElem) -> Option<LElem> {
        match self {
            GenFamily::Single { elem } => elem.leq(u).then(|| elem.clone()),
            GenFamily::ExplicitList { elems } => elems.iter().find(|c| c.leq(u)).cloned(),
            GenFamily::XRankAtLeast { k } => match u {
                LElem::X(XIndex { m, n }) => (*n >= ExtNat::Fin(*k)).then(|| LElem::x(*m, *k)),
                LElem::Sigma(a) | LElem::Star(a) => a.first_position_at_least(*k).map(|p| LElem::x(p, *k)),
            },
            GenFamily::SigmaLenAtLeast { k } => match u {
                LElem::Sigma(a) | LElem::Star(a) => a.prefix(*k).ok().map(LElem::Sigma),
                LElem::X(_) => None,
            },
            GenFamily::StarLenAtLeast { k } => match u {
                LElem::Star(a) => a.prefix(*k).ok().map(LElem::Star),
                _ => None,
            },
            GenFamily::XColumn { m, min_n } => {
                let c = LElem::x(*m, *min_n);
                c.leq(u).then_some(c)
            }
        }
    }

    pub fn contains(&self, u: &LElem) -> bool {
        self.witness(u).is_some()
    }

    /// The generators whose indices and entries are `≤ limit` and whose
    /// lengths are `≤ depth`.
    pub fn generators(&self, limit: u64, depth: u64) -> Vec<LElem> {
        let seqs_from = |k: u64| -> Vec<Seq> {
            crate::domain::Truncation::new(limit, depth)
                .sequences()
                .into_iter()
                .filter(|s| s.len() >= ExtNat::Fin(k))
                .collect()
        };
        match self {
            GenFamily::Single { elem } => vec![elem.clone()],
            GenFamily::ExplicitList { elems } => elems.clone(),
            GenFamily::XRankAtLeast { k } => (1..=limit)
                .flat_map(|m| (*k..=limit).map(move |j| LElem::x(m, j)))
                .collect(),
            GenFamily::SigmaLenAtLeast { k } => seqs_from(*k).into_iter().map(LElem::Sigma).collect(),
            GenFamily::StarLenAtLeast { k } => seqs_from(*k).into_iter().map(LElem::Star).collect(),
            GenFamily::XColumn { m, min_n } => (*min_n..=limit).map(|j| LElem::x(*m, j)).collect(),
        }
    }

    fn compact_members(&self) -> Vec<&LElem> {
        match self {
            GenFamily::Single { elem } => vec![elem],
            GenFamily::ExplicitList { elems } => elems.iter().collect(),
            _ => vec![],
        }
    }
}

impl fmt::Display for GenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenFamily::Single { elem } => write!(f, "single({elem})"),
            GenFamily::XRankAtLeast { k } => write!(f, "x_rank_at_least({k})"),
            GenFamily::SigmaLenAtLeast { k } => write!(f, "sigma_len_at_least({k})"),
            GenFamily::StarLenAtLeast { k } => write!(f, "star_len_at_least({k})"),
            GenFamily::XColumn { m, min_n } => write!(f, "x_column({m},{min_n})"),
            GenFamily::ExplicitList { elems } => {
                f.write_str("explicit_list(")?;
                for (i, e) in elems.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// A Scott-open set: the union of the upward closures of its families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOpen", deny_unknown_fields)]
pub struct OpenDesc {
    families: Vec<GenFamily>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOpen {
    families: Vec<GenFamily>,
}

impl TryFrom<RawOpen> for OpenDesc {
    type Error = OpenError;

    fn try_from(raw: RawOpen) -> Result<Self, Self::Error> {
        OpenDesc::new(raw.families)
    }
}

/// Constraint on infinite sequences contributed by one generator family:
/// a starred infinite `a*` is in the open set iff it meets one of these.
enum Cover {
    All,
    /// some entry `≥ k`
    Rank(u64),
    /// entry `m` is `≥ n`
    Column(u64, u64),
    /// extends a finite prefix
    Prefix(Vec<u64>),
}

impl OpenDesc {
    pub fn new(families: Vec<GenFamily>) -> Result<OpenDesc, OpenError> {
        if families.is_empty() {
            return Err(OpenError::NoFamilies);
        }
        families.iter().try_for_each(GenFamily::validate)?;
        Ok(OpenDesc { families })
    }

    pub fn families(&self) -> &[GenFamily] {
        &self.families
    }

    /// A generator below `u`, witnessing membership.
    pub fn witness(&self, u: &LElem) -> Option<LElem> {
        self.families.iter().find_map(|f| f.witness(u))
    }

    pub fn contains(&self, u: &LElem) -> bool {
        self.witness(u).is_some()
    }

    pub fn covers_max(&self) -> bool {
        self.uncovered_max().is_none()
    }

    /// A maximal element of `L` outside this open set, if there is one.
    ///
    /// Column tops are covered only by a rank family or column by column, so a
    /// missing column is found directly. For starred infinite sequences the
    /// families reduce to constraints on entries, and a depth-first search over
    /// the finitely many distinguished prefixes either finds an avoiding
    /// eventually-periodic sequence or proves that none exists.
    pub fn uncovered_max(&self) -> Option<LElem> {
        let has_rank = self
            .families
            .iter()
            .any(|f| matches!(f, GenFamily::XRankAtLeast { .. }));
        if !has_rank {
            let mut covered: Vec<u64> = Vec::new();
            for f in &self.families {
                match f {
                    GenFamily::XColumn { m, .. } => covered.push(*m),
                    _ => covered.extend(f.compact_members().iter().filter_map(|c| c.as_x()).map(|ix| ix.m)),
                }
            }
            let m = (1..).find(|m| !covered.contains(m)).unwrap();
            return Some(LElem::x_top(m));
        }

        let mut covers = Vec::new();
        for f in &self.families {
            match f {
                GenFamily::SigmaLenAtLeast { .. } | GenFamily::StarLenAtLeast { .. } => covers.push(Cover::All),
                GenFamily::XRankAtLeast { k } => covers.push(Cover::Rank(*k)),
                GenFamily::XColumn { m, min_n } => covers.push(Cover::Column(*m, *min_n)),
                _ => {
                    for c in f.compact_members() {
                        covers.push(match c {
                            LElem::X(XIndex { m, n }) => Cover::Column(*m, n.finite().expect("compact")),
                            LElem::Sigma(a) | LElem::Star(a) => Cover::Prefix(a.as_finite().expect("compact").to_vec()),
                        });
                    }
                }
            }
        }
        uncovered_sequence(&covers).map(LElem::Star)
    }
}

/// Searches for an infinite sequence meeting none of the constraints.
fn uncovered_sequence(covers: &[Cover]) -> Option<Seq> {
    let mut cap = u64::MAX; // entries must stay below every rank bound
    let mut columns: Vec<(u64, u64)> = Vec::new();
    let mut prefixes: Vec<&[u64]> = Vec::new();
    for c in covers {
        match c {
            Cover::All => return None,
            Cover::Rank(k) => cap = cap.min(*k),
            Cover::Column(m, n) => columns.push((*m, *n)),
            Cover::Prefix(p) => prefixes.push(p),
        }
    }
    // Entry 1 is allowed everywhere unless some constraint covers everything.
    if cap <= 1 || columns.iter().any(|&(_, n)| n <= 1) {
        return None;
    }
    let cap_at = |p: u64| {
        columns
            .iter()
            .filter(|&&(m, _)| m == p)
            .map(|&(_, n)| n)
            .fold(cap, u64::min)
    };

    fn search(word: &mut Vec<u64>, alive: Vec<&[u64]>, cap_at: &dyn Fn(u64) -> u64) -> Option<Seq> {
        if alive.iter().any(|p| p.len() == word.len()) {
            return None;
        }
        if alive.is_empty() {
            return Some(Seq::periodic(word.clone(), vec![1]).unwrap());
        }
        let pos = word.len() as u64 + 1;
        let limit = cap_at(pos);
        let mut next: Vec<u64> = alive.iter().map(|p| p[word.len()]).collect();
        next.sort_unstable();
        next.dedup();
        // An allowed value matching no live prefix escapes all of them.
        if let Some(v) = (1..limit).take(next.len() + 1).find(|v| !next.contains(v)) {
            word.push(v);
            let found = search(word, vec![], cap_at);
            word.pop();
            return found;
        }
        for v in next.into_iter().filter(|&v| v < limit) {
            word.push(v);
            let still: Vec<&[u64]> = alive.iter().copied().filter(|p| p[word.len() - 1] == v).collect();
            let found = search(word, still, cap_at);
            word.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    search(&mut Vec::new(), prefixes, &cap_at)
}

/// `U_k = x_rank_at_least(k) ∪ sigma_len_at_least(k) ∪ star_len_at_least(k)`.
///
/// Each `U_k` contains every maximal element, and `x(k,n) ∈ U_k` exactly when
/// `n ≥ k`.
pub fn canonical_family(k: u64) -> OpenDesc {
    OpenDesc::new(vec![
        GenFamily::XRankAtLeast { k },
        GenFamily::SigmaLenAtLeast { k },
        GenFamily::StarLenAtLeast { k },
    ])
    .expect("canonical family parameters are positive")
}

/// A countable family `U_1, U_2, …` of open sets, consumed lazily by index.
pub trait IndexedFamily {
    /// `U_k` for `k ≥ 1`.
    fn open(&self, k: u64) -> Cow<'_, OpenDesc>;

    /// Identifier written into certificates.
    fn reference(&self) -> String;
}

/// Families that can be read from and written to JSON.
///
/// An explicit list `U_1, …, U_N` continues as `U_k = U_N` for `k > N`,
/// which leaves the intersection unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Canonical,
    Explicit { name: Option<String>, opens: Vec<OpenDesc> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FamilyRepr {
    Shorthand {
        kind: String,
    },
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        opens: Vec<OpenDesc>,
    },
}

impl Family {
    pub fn from_json(text: &str) -> Result<Family, OpenError> {
        let repr: FamilyRepr = serde_json::from_str(text).map_err(|e| OpenError::Json(e.to_string()))?;
        match repr {
            FamilyRepr::Shorthand { kind } if kind == "canonical" => Ok(Family::Canonical),
            FamilyRepr::Shorthand { kind } => Err(OpenError::UnknownKind(kind)),
            FamilyRepr::Explicit { opens, .. } if opens.is_empty() => Err(OpenError::NoOpens),
            FamilyRepr::Explicit { name, opens } => Ok(Family::Explicit { name, opens }),
        }
    }

    pub fn to_json(&self) -> String {
        let repr = match self {
            Family::Canonical => FamilyRepr::Shorthand {
                kind: "canonical".into(),
            },
            Family::Explicit { name, opens } => FamilyRepr::Explicit {
                name: name.clone(),
                opens: opens.clone(),
            },
        };
        serde_json::to_string_pretty(&repr).expect("families serialize")
    }
}

impl IndexedFamily for Family {
    fn open(&self, k: u64) -> Cow<'_, OpenDesc> {
        match self {
            Family::Canonical => Cow::Owned(canonical_family(k)),
            Family::Explicit { opens, .. } => {
                let i = (k.max(1) as usize).min(opens.len()) - 1;
                Cow::Borrowed(&opens[i])
            }
        }
    }

    fn reference(&self) -> String {
        match self {
            Family::Canonical => "canonical".into(),
            Family::Explicit { name: Some(n), .. } => n.clone(),
            Family::Explicit { name: None, .. } => "explicit".into(),
        }
    }
}

/// A family computed on demand from its index.
pub struct FnFamily<F> {
    pub name: String,
    pub make: F,
}

impl<F: Fn(u64) -> OpenDesc> IndexedFamily for FnFamily<F> {
    fn open(&self, k: u64) -> Cow<'_, OpenDesc> {
        Cow::Owned((self.make)(k))
    }

    fn reference(&self) -> String {
        self.name.clone()
    }
}

/// Whether `u` lies in `U_1 ∩ … ∩ U_depth`. Vacuously true for depth 0.
pub fn intersection_member_prefix_check(family: &dyn IndexedFamily, u: &LElem, depth: u64) -> bool {
    (1..=depth).all(|k| family.open(k).contains(u))
}

/// Outcome of a budgeted membership search in a stream of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StreamMembership {
    Member {
        generator: LElem,
        steps: u64,
    },
    /// The stream ended without a generator below the element.
    NotMember {
        steps: u64,
    },
    /// The budget ran out; membership is unknown.
    Unknown {
        steps: u64,
    },
}

/// Semi-decides membership of `u` in the open set generated by an arbitrary
/// stream of compact elements, inspecting at most `budget` generators.
pub fn contains_in_stream(
    generators: impl IntoIterator<Item = LElem>,
    u: &LElem,
    budget: u64,
) -> Result<StreamMembership, OpenError> {
    let mut steps = 0;
    for c in generators {
        if steps == budget {
            return Ok(StreamMembership::Unknown { steps });
        }
        steps += 1;
        check_compact(&c)?;
        if c.leq(u) {
            return Ok(StreamMembership::Member { generator: c, steps });
        }
    }
    Ok(StreamMembership::NotMember { steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(t: &str) -> LElem {
        t.parse().unwrap()
    }

    fn open(fams: Vec<GenFamily>) -> OpenDesc {
        OpenDesc::new(fams).unwrap()
    }

    #[test]
    fn membership_examples() {
        let rank3 = GenFamily::XRankAtLeast { k: 3 };
        assert!(rank3.contains(&e("x(5,7)")));
        // oracle: enumerate generators with indices <= 10
        assert!(rank3.generators(10, 3).iter().any(|c| c.leq(&e("x(5,7)"))));
        assert_eq!(rank3.witness(&e("x(5,7)")), Some(e("x(5,3)")));
        assert!(!GenFamily::SigmaLenAtLeast { k: 2 }.contains(&e("s[9]")));
        assert!(GenFamily::Single { elem: e("s[1,5]") }.contains(&e("t[1,5,7,11]")));
        assert_eq!(rank3.witness(&e("t[1,2,3,1]")), Some(e("x(3,3)")));
        assert_eq!(rank3.witness(&e("t[1|1,2]")), None);
    }

    #[test]
    fn canonical_examples() {
        assert!(canonical_family(1).contains(&e("s[7]")));
        assert!(!canonical_family(4).contains(&e("x(2,3)")));
        assert!(!canonical_family(4)
            .families()
            .iter()
            .flat_map(|f| f.generators(10, 3))
            .any(|c| c.leq(&e("x(2,3)"))));
        for k in 1..=20 {
            assert!(canonical_family(k).covers_max());
            for a in ["[1|1]", "[2|3,1]", "[5,5,5,5|9]"] {
                assert!(canonical_family(k).contains(&LElem::Sigma(a.parse().unwrap())));
            }
        }
    }

    #[test]
    fn coverage() {
        let canonical3 = canonical_family(3);
        assert!(canonical3.covers_max());
        assert_eq!(
            open(vec![GenFamily::ExplicitList { elems: vec![e("s[1]")] }]).uncovered_max(),
            Some(e("x(1,w)"))
        );
        assert_eq!(
            open(vec![GenFamily::XColumn { m: 2, min_n: 5 }]).uncovered_max(),
            Some(e("x(1,w)"))
        );
        assert_eq!(
            open(vec![GenFamily::XColumn { m: 1, min_n: 5 }]).uncovered_max(),
            Some(e("x(2,w)"))
        );
        // Rank alone misses sequences with small entries.
        let rank = open(vec![GenFamily::XRankAtLeast { k: 3 }]);
        let w = rank.uncovered_max().unwrap();
        assert!(w.is_maximal() && !rank.contains(&w));
        assert!(open(vec![GenFamily::XRankAtLeast { k: 1 }]).covers_max());
        assert!(open(vec![
            GenFamily::XRankAtLeast { k: 4 },
            GenFamily::XColumn { m: 2, min_n: 1 }
        ])
        .covers_max());
        // Prefixes [1] and [2] plus rank 3 leave nothing uncovered.
        let tight = open(vec![
            GenFamily::XRankAtLeast { k: 3 },
            GenFamily::ExplicitList {
                elems: vec![e("s[1]"), e("t[2]")],
            },
        ]);
        assert!(tight.covers_max());
        // Prefixes [1,1], [1,2] and [2] with rank 3 cover everything too.
        let deep = open(vec![
            GenFamily::XRankAtLeast { k: 3 },
            GenFamily::ExplicitList {
                elems: vec![e("s[1,1]"), e("s[1,2]"), e("s[2]")],
            },
        ]);
        assert!(deep.covers_max());
        let leaky = open(vec![
            GenFamily::XRankAtLeast { k: 3 },
            GenFamily::ExplicitList {
                elems: vec![e("s[1,1]"), e("s[2]")],
            },
        ]);
        let w = leaky.uncovered_max().unwrap();
        assert_eq!(w, e("t[1,2|1]"));
        assert!(!leaky.contains(&w));
        // A column bound at position 1 forces small first entries.
        let col = open(vec![
            GenFamily::XRankAtLeast { k: 9 },
            GenFamily::XColumn { m: 1, min_n: 2 },
        ]);
        assert_eq!(col.uncovered_max(), Some(e("t[|1]")));
    }

    #[test]
    fn validation() {
        assert_eq!(
            OpenDesc::new(vec![GenFamily::Single { elem: e("x(1,w)") }]),
            Err(OpenError::NotCompact(e("x(1,w)")))
        );
        assert_eq!(OpenDesc::new(vec![]), Err(OpenError::NoFamilies));
        assert_eq!(
            OpenDesc::new(vec![GenFamily::XColumn { m: 0, min_n: 1 }]),
            Err(OpenError::ZeroParameter)
        );
    }

    #[test]
    fn json_forms() {
        let text = r#"{"opens":[{"families":[{"kind":"x_rank_at_least","k":3},{"kind":"single","elem":"s[1,5]"}]}]}"#;
        let fam = Family::from_json(text).unwrap();
        let Family::Explicit { opens, name: None } = &fam else {
            panic!()
        };
        assert_eq!(opens[0].families()[1], GenFamily::Single { elem: e("s[1,5]") });
        assert_eq!(Family::from_json(&fam.to_json()).unwrap(), fam);
        assert_eq!(Family::from_json(r#"{"kind":"canonical"}"#).unwrap(), Family::Canonical);
        assert_eq!(
            Family::from_json(r#"{"kind":"bogus"}"#),
            Err(OpenError::UnknownKind("bogus".into()))
        );
        assert!(Family::from_json(r#"{"opens":[{"families":[{"kind":"single","elem":"x(1,w)"}]}]}"#).is_err());
        assert!(Family::from_json(r#"{"opens":[]}"#).is_err());
        assert!(Family::from_json(r#"{"opens":[{"families":[{"kind":"x_column","m":1}]}]}"#).is_err());
    }

    #[test]
    fn explicit_families_repeat_their_last_open() {
        let fam = Family::Explicit {
            name: Some("two".into()),
            opens: vec![canonical_family(1), canonical_family(2)],
        };
        assert_eq!(*fam.open(1), canonical_family(1));
        assert_eq!(*fam.open(9), canonical_family(2));
        assert_eq!(fam.reference(), "two");
    }

    #[test]
    fn prefix_intersection() {
        let fam = Family::Canonical;
        assert!(intersection_member_prefix_check(&fam, &e("x(1,w)"), 10));
        assert!(!intersection_member_prefix_check(&fam, &e("x(1,1)"), 2));
        assert!(intersection_member_prefix_check(&fam, &e("x(1,1)"), 0));
    }

    #[test]
    fn stream_membership() {
        let gens = (1..).map(|n| LElem::x(1, n));
        assert_eq!(
            contains_in_stream(gens.clone(), &e("x(1,3)"), 10),
            Ok(StreamMembership::Member {
                generator: e("x(1,1)"),
                steps: 1
            })
        );
        let gens = (1..).map(|n| LElem::x(2, n));
        assert_eq!(
            contains_in_stream(gens, &e("x(1,3)"), 50),
            Ok(StreamMembership::Unknown { steps: 50 })
        );
        let finite = vec![e("s[2]"), e("s[3]")];
        assert_eq!(
            contains_in_stream(finite, &e("s[1]"), 50),
            Ok(StreamMembership::NotMember { steps: 2 })
        );
        assert!(contains_in_stream(vec![e("t[|1]")], &e("s[1]"), 5).is_err());
    }
}
