//! Recognition, construction and exact certificates for box-perfect graphs.
//!
//! Graphs are dense-indexed with at most 64 vertices and adjacency rows
//! stored as bitsets. All arithmetic is exact: determinants run over any
//! [`ExactInt`], certificates over any [`ExactRational`].

pub mod bitset;
pub mod boxtdi;
pub mod budget;
pub mod classes;
pub mod cliques;
pub mod error;
pub mod esp;
pub mod flow;
pub mod graph;
pub mod invariants;
pub mod matrix;
pub mod scalar;
pub mod suite;
pub mod tu;

use num_bigint::BigInt;
use num_rational::Ratio;

pub use bitset::VertexSet;
pub use budget::Budget;
pub use cliques::{clique_matrix, maximal_cliques, CliqueFamily};
pub use error::{Error, Result};
pub use graph::{Digraph, Graph, Multigraph};
pub use matrix::IntMatrix;
pub use scalar::{ExactInt, ExactRational};

/// Machine-word rationals; enough for every certificate the crate builds.
pub type Rational = Ratio<i64>;

/// Arbitrary-precision rationals for externally supplied certificates.
pub type BigRational = Ratio<BigInt>;
