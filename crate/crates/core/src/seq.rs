//! Sequences of positive naturals under the prefix ("substring") order.
//!
//! A [`Seq`] is either a nonempty finite list or an eventually-periodic
//! infinite word `preamble · period^ω`. Infinite values are always stored in
//! canonical form (primitive period, shortest preamble), so structural
//! equality is sequence equality.
//!
//! ```
//! use scottmax::seq::{ExtNat, Seq};
//!
//! let a: Seq = "[1,5,7,11]".parse().unwrap();
//! let b: Seq = "[1,5,7,11,11]".parse().unwrap();
//! assert!(a.leq(&b));
//! assert_eq!(a.len(), ExtNat::Fin(4));
//!
//! // Two encodings of 3,2,4,2,4,... collapse to one value.
//! let p = Seq::periodic(vec![3, 2, 4], vec![2, 4]).unwrap();
//! assert_eq!(p, "[3|2,4]".parse().unwrap());
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::syntax::{Cursor, ParseError};

/// A natural number or ω. Ordered with ω on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Omega,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Omega => None,
        }
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Omega => f.write_str("w"),
        }
    }
}

/// Length of a sequence.
pub type SeqLen = ExtNat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("finite sequences must be nonempty")]
    Empty,
    #[error("period of an infinite sequence must be nonempty")]
    EmptyPeriod,
    #[error("entry {position} is 0; entries must be positive")]
    ZeroEntry { position: usize },
    #[error("index {k} out of range for sequence of length {len}")]
    IndexOutOfRange { k: u64, len: SeqLen },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Finite(Vec<u64>),
    Periodic { preamble: Vec<u64>, period: Vec<u64> },
}

/// A finite or eventually-periodic sequence of positive naturals.
///
/// The derived `Ord` is a structural total order used for collections; the
/// domain order is [`Seq::leq`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seq(Repr);

fn check_entries(entries: &[u64], offset: usize) -> Result<(), SeqError> {
    match entries.iter().position(|&e| e == 0) {
        Some(i) => Err(SeqError::ZeroEntry {
            position: offset + i + 1,
        }),
        None => Ok(()),
    }
}

/// Shortest word `w` with `period = w^j`.
fn primitive_root(period: &[u64]) -> &[u64] {
    let n = period.len();
    for d in 1..n {
        if n.is_multiple_of(d) && period.chunks(d).all(|c| c == &period[..d]) {
            return &period[..d];
        }
    }
    period
}

impl Seq {
    pub fn finite(entries: Vec<u64>) -> Result<Seq, SeqError> {
        if entries.is_empty() {
            return Err(SeqError::Empty);
        }
        check_entries(&entries, 0)?;
        Ok(Seq(Repr::Finite(entries)))
    }

    /// `preamble` followed by `period` repeated forever, canonicalised.
    pub fn periodic(preamble: Vec<u64>, period: Vec<u64>) -> Result<Seq, SeqError> {
        if period.is_empty() {
            return Err(SeqError::EmptyPeriod);
        }
        check_entries(&preamble, 0)?;
        check_entries(&period, preamble.len())?;
        let mut period = primitive_root(&period).to_vec();
        let mut preamble = preamble;
        // Absorb trailing preamble entries into a rotated period.
        while let Some(&last) = preamble.last() {
            if last != *period.last().unwrap() {
                break;
            }
            preamble.pop();
            period.rotate_right(1);
        }
        Ok(Seq(Repr::Periodic { preamble, period }))
    }

    /// The one-entry sequence `⟨n⟩`. Panics if `n == 0`.
    pub fn single(n: u64) -> Seq {
        Seq::finite(vec![n]).expect("entries are positive")
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, Repr::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn as_finite(&self) -> Option<&[u64]> {
        match &self.0 {
            Repr::Finite(v) => Some(v),
            Repr::Periodic { .. } => None,
        }
    }

    /// `(preamble, period)` of an infinite sequence in canonical form.
    pub fn as_periodic(&self) -> Option<(&[u64], &[u64])> {
        match &self.0 {
            Repr::Finite(_) => None,
            Repr::Periodic { preamble, period } => Some((preamble, period)),
        }
    }

    pub fn len(&self) -> SeqLen {
        match &self.0 {
            Repr::Finite(v) => ExtNat::Fin(v.len() as u64),
            Repr::Periodic { .. } => ExtNat::Omega,
        }
    }

    /// Whether the sequence has at least `k` entries.
    pub fn has_index(&self, k: u64) -> bool {
        k >= 1 && self.len() >= ExtNat::Fin(k)
    }

    /// The `k`-th entry (1-based), if it exists.
    pub fn entry(&self, k: u64) -> Option<u64> {
        if k == 0 {
            return None;
        }
        let i = (k - 1) as usize;
        match &self.0 {
            Repr::Finite(v) => v.get(i).copied(),
            Repr::Periodic { preamble, period } => Some(if i < preamble.len() {
                preamble[i]
            } else {
                period[(i - preamble.len()) % period.len()]
            }),
        }
    }

    /// The `k`-th entry (1-based).
    pub fn index(&self, k: u64) -> Result<u64, SeqError> {
        self.entry(k).ok_or(SeqError::IndexOutOfRange { k, len: self.len() })
    }

    /// First entry: the sequence lives in the tree of sequences starting with it.
    pub fn component(&self) -> u64 {
        self.entry(1).expect("sequences are nonempty")
    }

    /// The finite prefix of length `k`.
    pub fn prefix(&self, k: u64) -> Result<Seq, SeqError> {
        if k == 0 {
            return Err(SeqError::Empty);
        }
        if !self.has_index(k) {
            return Err(SeqError::IndexOutOfRange { k, len: self.len() });
        }
        Seq::finite((1..=k).map(|i| self.entry(i).unwrap()).collect())
    }

    /// Largest entry occurring anywhere in the sequence.
    pub fn max_entry(&self) -> u64 {
        match &self.0 {
            Repr::Finite(v) => *v.iter().max().unwrap(),
            Repr::Periodic { preamble, period } => *preamble.iter().chain(period).max().unwrap(),
        }
    }

    /// Smallest position `p` with `a_p >= bound`. Infinite sequences are scanned
    /// over one preamble and one period, which covers every value they take.
    pub fn first_position_at_least(&self, bound: u64) -> Option<u64> {
        let scan = match &self.0 {
            Repr::Finite(v) => v.len(),
            Repr::Periodic { preamble, period } => preamble.len() + period.len(),
        };
        (1..=scan as u64).find(|&p| self.entry(p).unwrap() >= bound)
    }

    /// Extends a finite sequence by `tail`. Infinite sequences have no proper
    /// extensions and are returned unchanged only when `tail` is empty.
    pub fn extended(&self, tail: &[u64]) -> Option<Seq> {
        match &self.0 {
            Repr::Finite(v) => {
                let mut w = v.clone();
                w.extend_from_slice(tail);
                Seq::finite(w).ok()
            }
            Repr::Periodic { .. } if tail.is_empty() => Some(self.clone()),
            Repr::Periodic { .. } => None,
        }
    }

    /// The substring order: a finite `self` must be a prefix of `other`; an
    /// infinite `self` must equal `other`.
    pub fn leq(&self, other: &Seq) -> bool {
        match &self.0 {
            Repr::Finite(v) => {
                other.has_index(v.len() as u64)
                    && v.iter().enumerate().all(|(i, &e)| other.entry(i as u64 + 1) == Some(e))
            }
            Repr::Periodic { .. } => self == other,
        }
    }

    pub fn comparable(&self, other: &Seq) -> bool {
        self.leq(other) || other.leq(self)
    }

    /// Whether `{self, other}` has an upper bound among sequences.
    ///
    /// Searches the two candidates that could be least bounds rather than
    /// going through comparability; the two notions agree on trees.
    pub fn has_upper_bound(&self, other: &Seq) -> bool {
        [self, other].into_iter().any(|c| self.leq(c) && other.leq(c))
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, v: &[u64]) -> fmt::Result {
            for (i, e) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
            Ok(())
        }
        f.write_str("[")?;
        match &self.0 {
            Repr::Finite(v) => list(f, v)?,
            Repr::Periodic { preamble, period } => {
                list(f, preamble)?;
                f.write_str("|")?;
                list(f, period)?;
            }
        }
        f.write_str("]")
    }
}

impl Seq {
    pub(crate) fn parse_at(cur: &mut Cursor<'_>) -> Result<Seq, ParseError> {
        cur.expect('[')?;
        let start = cur.pos();
        let first = cur.nat_list(&['|', ']'])?;
        let seq = if cur.eat('|') {
            let period_at = cur.pos();
            let period = cur.nat_list(&[']'])?;
            if period.is_empty() {
                return Err(ParseError::new(period_at, "period must be nonempty"));
            }
            Seq::periodic(first, period)
        } else {
            if first.is_empty() {
                return Err(ParseError::new(start, "finite sequences must be nonempty"));
            }
            Seq::finite(first)
        };
        cur.expect(']')?;
        seq.map_err(|e| ParseError::new(start, e))
    }
}

impl FromStr for Seq {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = Cursor::new(s);
        let seq = Seq::parse_at(&mut cur)?;
        cur.finish()?;
        Ok(seq)
    }
}

impl Serialize for Seq {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Seq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A lazily evaluated, memoising view of an arbitrary infinite sequence given
/// by its index function.
///
/// Streams only produce finite prefixes; they never take part in equality.
/// A stream is advanced through `&mut self`, so it stays confined to one
/// thread at a time.
pub struct SeqStream<F> {
    at: F,
    memo: Vec<u64>,
}

impl<F: FnMut(u64) -> u64> SeqStream<F> {
    pub fn new(at: F) -> Self {
        SeqStream { at, memo: Vec::new() }
    }

    /// Entry `k` (1-based). Panics on `k == 0` or a zero entry.
    pub fn get(&mut self, k: u64) -> u64 {
        assert!(k >= 1, "sequence indices start at 1");
        while (self.memo.len() as u64) < k {
            let next = self.memo.len() as u64 + 1;
            let value = (self.at)(next);
            assert!(value >= 1, "stream produced a zero entry at {next}");
            self.memo.push(value);
        }
        self.memo[(k - 1) as usize]
    }

    pub fn prefix(&mut self, k: u64) -> Result<Seq, SeqError> {
        if k == 0 {
            return Err(SeqError::Empty);
        }
        self.get(k);
        Seq::finite(self.memo[..k as usize].to_vec())
    }

    /// Number of entries evaluated so far.
    pub fn evaluated(&self) -> usize {
        self.memo.len()
    }
}

impl SeqStream<Box<dyn FnMut(u64) -> u64>> {
    /// Stream view of a stored sequence. Finite sequences are padded with 1s.
    pub fn of(seq: &Seq) -> Self {
        let seq = seq.clone();
        SeqStream::new(Box::new(move |k| seq.entry(k).unwrap_or(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Seq {
        text.parse().unwrap()
    }

    #[test]
    fn length() {
        assert_eq!(s("[1,2,3]").len(), ExtNat::Fin(3));
        assert_eq!(s("[5]").len(), ExtNat::Fin(1));
        assert_eq!(s("[3|2]").len(), ExtNat::Omega);
        assert!(ExtNat::Fin(u64::MAX) < ExtNat::Omega);
    }

    #[test]
    fn identity_stream_is_unbounded() {
        // a_n = n is not eventually periodic; only its prefixes are used.
        let mut ident = SeqStream::new(|n| n);
        assert_eq!(ident.get(100), 100);
        assert_eq!(ident.prefix(4).unwrap(), s("[1,2,3,4]"));
        assert_eq!(ident.evaluated(), 100);
        let p = ident.prefix(3).unwrap();
        assert!(crate::domain::LElem::x(3, 3).leq(&crate::domain::LElem::Sigma(p)));
    }

    #[test]
    fn index() {
        assert_eq!(s("[1,5,7,11]").index(4), Ok(11));
        assert_eq!(s("[3|2]").index(100), Ok(2));
        assert_eq!(s("[9]").index(1), Ok(9));
        assert_eq!(
            s("[9]").index(2),
            Err(SeqError::IndexOutOfRange {
                k: 2,
                len: ExtNat::Fin(1)
            })
        );
        assert!(s("[9]").index(0).is_err());
        let p = s("[1|2,3]");
        assert_eq!(
            (1..=6).map(|k| p.index(k).unwrap()).collect::<Vec<_>>(),
            [1, 2, 3, 2, 3, 2]
        );
    }

    #[test]
    fn substring_order() {
        assert!(s("[1,5,7,11]").leq(&s("[1,5,7,11,11]")));
        assert!(s("[1,5,7,11]").leq(&s("[1,5,7,11]")));
        assert!(!s("[1,2]").leq(&s("[2,1,4,4]")));
        assert!(s("[3,2]").leq(&s("[3|2]")));
        assert!(!s("[3|2]").leq(&s("[3,2,2]")));
        assert!(s("[3|2]").leq(&s("[3,2|2]")));
    }

    #[test]
    fn comparability() {
        assert!(s("[1]").comparable(&s("[1,7]")));
        assert!(!s("[1,2]").comparable(&s("[2,1]")));
        let a = s("[1,5,7,11]");
        let b = s("[1,5,7,111]");
        // brute-force prefix test
        let av = a.as_finite().unwrap();
        let bv = b.as_finite().unwrap();
        let oracle = av.len() <= bv.len() && bv[..av.len()] == *av || bv.len() <= av.len() && av[..bv.len()] == *bv;
        assert!(!oracle);
        assert_eq!(a.comparable(&b), oracle);
    }

    #[test]
    fn upper_bounds_in_sigma() {
        assert!(s("[1]").has_upper_bound(&s("[1,2,3]")));
        assert!(!s("[1,2]").has_upper_bound(&s("[2,1]")));
        let a = s("[2,3,1]");
        let b = s("[2,3,2]");
        // Brute force: no extension up to length 5 with entries <= 3 bounds both.
        let mut found = false;
        for len in 1..=5u32 {
            for code in 0..3u64.pow(len) {
                let v: Vec<u64> = (0..len).map(|i| code / 3u64.pow(i) % 3 + 1).collect();
                let c = Seq::finite(v).unwrap();
                found |= a.leq(&c) && b.leq(&c);
            }
        }
        assert!(!found);
        assert!(!a.has_upper_bound(&b));
    }

    #[test]
    fn component() {
        assert_eq!(s("[4,1]").component(), 4);
        assert_eq!(s("[1,5,7,11]").component(), 1);
        assert_eq!(s("[7|1]").component(), 7);
        assert_eq!(s("[|2,1]").component(), 2);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(Seq::periodic(vec![], vec![1, 1, 1]).unwrap(), s("[|1]"));
        assert_eq!(Seq::periodic(vec![1, 2, 1, 2], vec![1, 2]).unwrap(), s("[|1,2]"));
        assert_eq!(Seq::periodic(vec![5, 2], vec![1, 2]).unwrap(), s("[5|2,1]"));
        assert_eq!(Seq::periodic(vec![3], vec![2, 4, 2, 4]).unwrap().to_string(), "[3|2,4]");
        assert_ne!(s("[1|2]"), s("[|2]"));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Seq::finite(vec![]), Err(SeqError::Empty));
        assert_eq!(Seq::finite(vec![1, 0]), Err(SeqError::ZeroEntry { position: 2 }));
        assert_eq!(Seq::periodic(vec![1], vec![]), Err(SeqError::EmptyPeriod));
        assert_eq!(
            Seq::periodic(vec![1], vec![0]),
            Err(SeqError::ZeroEntry { position: 2 })
        );
    }

    #[test]
    fn parse_errors_report_offsets() {
        let e = "[1,0]".parse::<Seq>().unwrap_err();
        assert_eq!(e.offset, 3);
        let e = "[1,2".parse::<Seq>().unwrap_err();
        assert_eq!(e.offset, 4);
        let e = "[]".parse::<Seq>().unwrap_err();
        assert_eq!(e.offset, 1);
        let e = "[1|]".parse::<Seq>().unwrap_err();
        assert_eq!(e.offset, 3);
        let e = "[1] x".parse::<Seq>().unwrap_err();
        assert_eq!(e.offset, 4);
        assert_eq!(" [ 1 , 2 | 3 ] ".parse::<Seq>().unwrap(), s("[1,2|3]"));
    }

    #[test]
    fn first_position() {
        assert_eq!(s("[1,5,7]").first_position_at_least(6), Some(3));
        assert_eq!(s("[1,5,7]").first_position_at_least(8), None);
        assert_eq!(s("[1|1,9]").first_position_at_least(9), Some(3));
        assert_eq!(s("[|1]").first_position_at_least(2), None);
    }
}
