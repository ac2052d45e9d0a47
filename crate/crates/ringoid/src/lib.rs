//! Groupoids internal to finite commutative rings.
//!
//! Everything here is table-driven and exhaustively checked: finite
//! commutative rings and their modules, quasi-ideals and the equivalent
//! 1-truncated simplicial rings, the mapping-cone groupoid of a quasi-ideal,
//! the correspondence calculus between quasi-ideals (butterflies,
//! anamorphisms, admissibilization), and the matching picture for finite
//! categories. Each structure validates its axioms on construction and every
//! law the library claims can be re-checked on demand with explicit
//! counterexample witnesses.

// Elements are carrier indices, so loops over `0..n` that index several
// tables symmetrically are the native idiom here.
#![allow(clippy::needless_range_loop)]

pub mod budget;
pub mod adm;
pub mod butterfly;
pub mod cat;
pub mod check;
pub mod cli;
pub mod cone;
pub mod corr;
pub mod error;
pub mod gen;
pub mod json;
pub mod module;
pub mod quasi;
pub mod ring;
pub mod simplicial;
pub mod suite;

pub use budget::Budget;
pub use check::{ValidationReport, Violation};
pub use error::{Error, Result};

/// Index of the pair `(i, j)` in the row-major carrier of a product, where
/// `j` ranges over a set of size `jsize`.
#[inline]
pub fn pair_index(i: usize, j: usize, jsize: usize) -> usize {
    i * jsize + j
}

/// Inverse of [`pair_index`].
#[inline]
pub fn unpair_index(k: usize, jsize: usize) -> (usize, usize) {
    (k / jsize, k % jsize)
}
