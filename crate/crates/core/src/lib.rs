//! Homotopy computations for graph complexes: complexes of directed trees,
//! independence complexes and anti-Rips complexes, with a brute-force ℤ₂
//! homology oracle to check every prediction.

pub mod anti_rips;
pub mod cli;
pub mod complex;
pub mod dt;
pub mod error;
pub mod graph;
pub mod homology;
pub mod homotopy;
pub mod independence;
pub mod label;
pub mod limits;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use graph::{DirectedGraph, UndirectedGraph};
pub use homotopy::HomotopyType;
pub use label::Label;
