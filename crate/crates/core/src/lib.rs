//! Exact linear algebra and counting for matrices whose support digraph has
//! small treewidth.
//!
//! The engine computes determinants (and characteristic polynomials, ranks,
//! inverses, matrix powers, linear-system feasibility, arborescence and Euler
//! tour counts) by dynamic programming over a nice tree decomposition of the
//! support graph. The DP counts cycle covers grouped by cycle count and by
//! edge value class; the determinant is the alternating sum of those counts.
//! Everything is exact: entries are arbitrary-precision rationals, counts are
//! arbitrary-precision integers.
//!
//! Independent brute-force oracles live in [`oracle`]; the test suites check
//! every pipeline result against them.

pub mod ccdp;
pub mod counting;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod hardness;
pub mod linalg;
pub mod matrix;
pub mod mm;
pub mod msocheck;
pub mod nice;
pub mod oracle;
pub mod pace;
pub mod rational;
pub mod treedecomp;

pub use error::Error;
pub use graph::{BipartiteGraph, WeightedDigraph};
pub use matrix::RationalMatrix;
pub use rational::Rational;
pub use treedecomp::{Strategy, TreeDecomposition};
