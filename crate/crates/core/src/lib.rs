//! Clustered colorings of graphs with bounded layered treewidth.
//!
//! The crate covers the structural substrate (graphs, layerings,
//! tree-decompositions and their validators), neighborhood bounds for
//! `K_{s,t}`-free graphs, 2-coloring of bounded-treewidth graphs with
//! bounded clustering, the 3-coloring pipeline for bounded layered
//! treewidth and bounded degree, fences and fans in tree-decompositions,
//! list-coloring scaffolding, and independent verifiers.

pub mod decomposition;
pub mod decomposition_coloring;
pub mod error;
pub mod fans;
pub mod fences;
pub mod generators;
pub mod graph;
pub mod layering;
pub mod lists;
pub mod neighborhoods;
pub mod pace;
pub mod report;
pub mod three_coloring;
pub mod verification;

pub use decomposition::{LayeredTreeDecomposition, Node, TreeDecomposition};
pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use layering::Layering;
pub use report::{AxiomCheck, ValidationReport};
