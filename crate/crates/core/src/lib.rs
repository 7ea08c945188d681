//! Maximal biclique size pairs of twin-free bipartite graphs.
//!
//! The central object is the set of Pareto-maximal (black, white) size pairs
//! over all bicliques of a graph. It is computed by dynamic programming over
//! a decomposition tree whose internal nodes are Parallel (disjoint union),
//! Series (complete join), KS (an ordered chain of one-directionally joined
//! parts) and Prime (substitution along non-overlapping bimodules), and whose
//! leaves are single vertices or path/cycle-like base graphs. From that set
//! the vertex-maximum, edge-maximum, balanced and nontrivial variants of the
//! maximum biclique problem are read off directly, and witness bicliques are
//! reconstructed by walking the recorded derivations.

pub mod bimodule;
pub mod bitset;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod graph;
pub mod maxbisize;
pub mod oracle;
pub mod shapes;
pub mod solver;
pub mod tree;
pub mod witness;

pub use error::{Error, Result};
