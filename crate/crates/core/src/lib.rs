//! Rainbow triangle packings in edge-coloured complete graphs.
//!
//! The crate builds the extremal colourings that avoid a rainbow `(t+2)K_3`,
//! decides whether a colouring contains a rainbow packing of `k` disjoint
//! triangles, computes anti-Ramsey numbers `ar(n, kK_3)` exactly for tiny
//! `n`, and runs exhaustive censuses of the extremal results the anti-Ramsey
//! bound depends on.

pub mod census;
pub mod coloring;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod packing;
pub mod search;

pub use census::{CensusOptions, CensusResult, PairsExtraction};
pub use coloring::{EdgeColoring, RainbowWitness};
pub use error::{Error, Result};
pub use formulas::{ar_formula, moon_ex, turan_edges, ArFormula, FormulaParams};
pub use graph::{Graph, GraphBuilder, VertexSet};
pub use packing::{Matching, Triangle, TrianglePacking};
pub use search::{ar_exact, exists_avoiding_coloring, Certification, SearchOptions, SearchReport};
