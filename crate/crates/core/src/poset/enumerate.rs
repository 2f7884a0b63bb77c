//! Exhaustive generation of small posets.
//!
//! Labelled posets on `n + 1` points are grown from those on `n` points by
//! adding a new point with a chosen down-set `D` and up-set `U` (disjoint,
//! with every member of `D` below every member of `U`). Each labelled poset
//! arises exactly once. Isomorph rejection keeps a labelled poset only when
//! its adjacency bits are the lexicographically least over all relabellings.

use super::FinitePoset;

type Matrix = Vec<bool>;

fn grow(n: usize, le: &Matrix) -> Vec<Matrix> {
    let r = |i: usize, j: usize| le[i * n + j];
    let full = 1u32 << n;
    let down_closed = |s: u32| (0..n).all(|i| s >> i & 1 == 0 || (0..n).all(|j| !r(j, i) || s >> j & 1 == 1));
    let up_closed = |s: u32| (0..n).all(|i| s >> i & 1 == 0 || (0..n).all(|j| !r(i, j) || s >> j & 1 == 1));
    let downs: Vec<u32> = (0..full).filter(|&s| down_closed(s)).collect();
    let ups: Vec<u32> = (0..full).filter(|&s| up_closed(s)).collect();
    let mut out = Vec::new();
    for &d in &downs {
        for &u in &ups {
            if d & u != 0 {
                continue;
            }
            let compatible = (0..n)
                .filter(|i| d >> i & 1 == 1)
                .all(|i| (0..n).filter(|j| u >> j & 1 == 1).all(|j| r(i, j)));
            if !compatible {
                continue;
            }
            let m = n + 1;
            let mut next = vec![false; m * m];
            for i in 0..n {
                for j in 0..n {
                    next[i * m + j] = r(i, j);
                }
                next[i * m + n] = d >> i & 1 == 1;
                next[n * m + i] = u >> i & 1 == 1;
            }
            next[n * m + n] = true;
            out.push(next);
        }
    }
    out
}

fn labelled_matrices(n: usize) -> Vec<Matrix> {
    let mut layer: Vec<Matrix> = vec![vec![]];
    for k in 0..n {
        layer = layer.iter().flat_map(|le| grow(k, le)).collect();
    }
    layer
}

/// Every partial order on the labels `0..n` (1, 1, 3, 19, 219, 4231, … of them).
pub fn labelled_posets(n: usize) -> Vec<FinitePoset> {
    labelled_matrices(n)
        .into_iter()
        .map(|le| FinitePoset::from_matrix_unchecked(n, le))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn relabel(n: usize, le: &Matrix, perm: &[usize]) -> Matrix {
    let mut out = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            out[perm[i] * n + perm[j]] = le[i * n + j];
        }
    }
    out
}

/// One representative per isomorphism class of posets on `n` points
/// (1, 1, 2, 5, 16, 63, … of them).
pub fn posets_up_to_iso(n: usize) -> Vec<FinitePoset> {
    let perms = permutations(n);
    labelled_matrices(n)
        .into_iter()
        .filter(|le| perms.iter().all(|p| relabel(n, le, p) >= *le))
        .map(|le| FinitePoset::from_matrix_unchecked(n, le))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{verify_partial_order, Relation};

    #[test]
    fn labelled_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| labelled_posets(n).len()).collect();
        assert_eq!(counts, [1, 1, 3, 19, 219, 4231]);
    }

    #[test]
    fn unlabelled_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn generated_relations_are_partial_orders() {
        for p in labelled_posets(4) {
            let mut r: Relation = p.to_relation();
            for l in p.labels() {
                r.leq.push([l.clone(), l.clone()]);
            }
            assert!(verify_partial_order(&r).unwrap().is_empty());
        }
    }

    #[test]
    fn brute_force_over_all_relations_agrees() {
        // Every relation on 3 points, filtered by the axioms.
        let n = 3;
        let mut count = 0;
        for bits in 0u32..1 << (n * n) {
            let le: Vec<bool> = (0..n * n).map(|k| bits >> k & 1 == 1).collect();
            let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
            if FinitePoset::from_fn(labels, |i, j| le[i * n + j]).is_ok() {
                count += 1;
            }
        }
        assert_eq!(count, 19);
    }
}
