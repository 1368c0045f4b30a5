//! Exact minimum-description-complexity recovery for underdetermined
//! integer linear systems.
//!
//! The crate centers on a small prefix-free description language for integer
//! vectors of a fixed dimension n. The length of the shortest program
//! evaluating to x is an exactly computable complexity measure, and the
//! recovery rule for an observation y = A·x picks, among all solutions z of
//! y = A·z reachable within a length budget, one of minimal complexity.
//!
//! Modules:
//! - [`bits`]: bit strings and readers.
//! - [`lang`]: programs, their prefix-free code, evaluation, enumeration in
//!   code order, and the complexity function with its precomputed table.
//! - [`linalg`]: exact integer vectors and small binary/sign matrices.
//! - [`solver`]: minimum-complexity recovery, simplest null vectors, the
//!   recovery threshold K*, and the pairwise recovery guarantee.
//! - [`walsh`]: Sylvester Hadamard matrices, sequency-ordered Walsh
//!   functions, and the exhaustive Walsh-family triple census.
//! - [`census`]: sampled and exhaustive censuses of null-vector complexity,
//!   end-to-end recovery, and output tables, plus the small-n sweep of the
//!   difference bound.
//! - [`report`]: provenance and RNG metadata, JSON/CSV serialization, and
//!   shared statistics helpers.

pub mod bits;
pub mod census;
pub mod error;
pub mod lang;
pub mod linalg;
pub mod report;
pub mod solver;
pub mod walsh;
