//! Constructions, certificates and exact verifiers around monochromatic
//! tree embedding: spectral expanders and their mixing bounds, graph
//! products and blowups, Friedman–Pippenger style tree embedding, the
//! tree-or-multipartite dichotomy, a product-host search pipeline, and the
//! edge colourings that keep degenerate graphs free of monochromatic trees.

pub mod bitset;
pub mod chopping;
pub mod colouring;
pub mod constants;
pub mod degenerate;
pub mod dichotomy;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod host;
pub mod io;
pub mod kss;
pub mod lll;
pub mod matching;
pub mod pipeline;
pub mod products;
pub mod spectral;
pub mod tree;
pub mod verify;

pub use colouring::{Colour, EdgeColouring};
pub use embedding::Embedding;
pub use error::{Error, Result};
pub use graph::Graph;
pub use tree::RootedTree;

/// Seed type threaded through every randomized routine: identical seeds and
/// parameters give bit-identical results.
pub type Seed = u64;
