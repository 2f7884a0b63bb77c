use super::LElem;
use crate::seq::Seq;

/// The finite slice `T(bound, depth)` of `L` used by the exhaustive suites:
/// every `x(m,n)` and `x(m,w)` with `m, n ≤ bound`, and every plain and
/// starred finite sequence with entries `≤ bound` and length `≤ depth`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub bound: u64,
    pub depth: u64,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::EXHAUSTIVE
    }
}

impl Truncation {
    pub const EXHAUSTIVE: Truncation = Truncation { bound: 3, depth: 3 };
    pub const RANDOMIZED: Truncation = Truncation { bound: 6, depth: 5 };

    pub fn new(bound: u64, depth: u64) -> Self {
        Truncation { bound, depth }
    }

    /// All finite sequences within the bounds, shortest first.
    pub fn sequences(&self) -> Vec<Seq> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<u64>> = vec![vec![]];
        for _ in 0..self.depth {
            layer = layer
                .iter()
                .flat_map(|p| {
                    (1..=self.bound).map(move |e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
                })
                .collect();
            out.extend(layer.iter().map(|v| Seq::finite(v.clone()).unwrap()));
        }
        out
    }

    pub fn x_points(&self) -> Vec<LElem> {
        (1..=self.bound)
            .flat_map(|m| {
                (1..=self.bound)
                    .map(move |n| LElem::x(m, n))
                    .chain(std::iter::once(LElem::x_top(m)))
            })
            .collect()
    }

    pub fn elements(&self) -> Vec<LElem> {
        let seqs = self.sequences();
        let mut out = self.x_points();
        out.extend(seqs.iter().cloned().map(LElem::Sigma));
        out.extend(seqs.into_iter().map(LElem::Star));
        out
    }
}
