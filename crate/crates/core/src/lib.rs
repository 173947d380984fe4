//! Eigenvector influence scores for weighted endorsement graphs.
//!
//! Each node's score is the sum of the scores of the nodes that cite it,
//! each weighted by the fraction of the citer's citations that go to it.
//! Consistency of that definition makes the score vector a non-negative
//! eigenvector of the column-normalized citation matrix, scaled so the
//! largest score is 1.
//!
//! The pipeline:
//!
//! 1. [`model::build_raw`] interns labels and accumulates counts, dropping
//!    self-citations.
//! 2. [`model::normalize`] divides every nonzero column by its sum.
//! 3. [`structure::analyze`] finds strongly connected components and
//!    classifies the matrix as irreducible, block diagonal, chained
//!    reducible, or degenerate.
//! 4. [`solver::solve_scores`] computes the scores; for a reducible matrix
//!    with one recurrent class, [`solver::verify_reducible`] checks the
//!    block equations.
//!
//! ```
//! use citescore::model::{build_raw, normalize, Edge};
//! use citescore::solver::{solve_scores, SolverOptions};
//! use citescore::structure::analyze;
//!
//! let edges = [
//!     Edge::new("ana", "ben", 1),
//!     Edge::new("ben", "cleo", 1),
//!     Edge::new("cleo", "ana", 1),
//! ];
//! let graph = build_raw(&edges).unwrap();
//! let c = normalize(&graph.raw);
//! let result = solve_scores(&c, &analyze(&c), &SolverOptions::default()).unwrap();
//! assert_eq!(result.scores.unwrap(), vec![1.0, 1.0, 1.0]);
//! ```
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod diagnostics;
pub mod error;
pub mod matrix;
pub mod model;
pub mod report;
pub mod solver;
pub mod structure;

pub use diagnostics::Diagnostic;
pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use model::{build_raw, normalize, CitationGraph, Edge, NodeTable, NormalizedCitationMatrix, RawCitationMatrix};
pub use solver::{solve_scores, verify_reducible, ScoreResult, SolverOptions, Support};
pub use structure::{analyze, classify, permute, scc_decompose, Classification, Permutation, StructureReport};
