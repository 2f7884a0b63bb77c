//! An ω-algebraic domain whose maximal points do not form a G-delta set.
//!
//! The modules build on each other: [`seq`] has sequences under the prefix
//! order, [`domain`] the domain `L` itself, [`poset`] finite and oracle posets,
//! [`opens`] Scott-open subsets of `L`, and [`diagonal`] the construction that
//! refutes any countable family of opens covering the maximal elements.
//! [`suites`] bundles the exhaustive and randomized invariant checks.

pub mod diagonal;
pub mod domain;
pub mod opens;
pub mod poset;
pub mod seq;
pub mod suites;
pub mod syntax;

// The guide's code blocks run as doctests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/domain.md")]
    mod domain {}
    #[doc = include_str!("../../../book/src/finite-posets.md")]
    mod finite_posets {}
    #[doc = include_str!("../../../book/src/open-sets.md")]
    mod open_sets {}
    #[doc = include_str!("../../../book/src/diagonalization.md")]
    mod diagonalization {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
