//! Shifted and lexicographic combinatorial optimization over matroids given
//! by independence oracles.
//!
//! The central routine finds `n` bases of a matroid whose vulnerability
//! vector is lexicographically minimal, e.g. `n` spanning trees sharing as
//! few edges as possible. It works by greedy optimization over the shuffle
//! matroid `[Sⁿ]`, realized as the `n`-union of the `n`-lift of `S`, followed
//! by decomposition back into `n` independent sets.

pub mod brute;
pub mod constructions;
pub mod error;
pub mod families;
pub mod intersection;
pub mod matrix;
pub mod matroid;
pub mod shifted;

pub use error::{Error, Result};
pub use families::{Family, MatroidDesc, MatroidKind};
pub use matrix::{equivalent, lex_less, vulnerability_vector, IntMatrix, Matrix01, ProfitMatrix, VulnVector};
pub use matroid::{greedy_max, is_independent, rank, IndependenceOracle, Subset01, Weights};
