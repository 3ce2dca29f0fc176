//! Lower bounds, constructive extraction and exact oracles for biholes and
//! balanced induced `d`-degenerate subgraphs of `n x n` bipartite graphs.
//!
//! A *bihole* of size `t` is a pair of `t`-sets, one per side, with no edges
//! between them. For every balanced graph and every `d >= 0` the crate
//! computes `⌊ Σ_v min(1, (d+1)/(d(v)+1)) / 2 ⌋` exactly ([`bounds`]), extracts
//! a witness at least that large ([`extract`]) and checks both against brute
//! force on small instances ([`oracle`]).
//!
//! ```
//! use bihole::{bounds, extract, BipartiteGraph, GraphModel};
//!
//! let c6 = BipartiteGraph::generate(GraphModel::Cycle, 3, 0).unwrap();
//! assert_eq!(bounds::floor_bound(&c6, 0).unwrap(), 1);
//! let (witness, _trace) = extract::find_bihole(&c6).unwrap();
//! assert_eq!(witness.size(), 1);
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod extract;
pub mod graph;
pub mod oracle;
pub mod rational;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, GraphModel, IndexMap, Side, VertexRef};
pub use rational::Rational;
