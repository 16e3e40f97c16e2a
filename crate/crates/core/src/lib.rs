//! Cone-based proximity graphs over planar point sets.
//!
//! Builds Yao (`Y_k`), Theta (`Θ_k`), Yao-Yao (`YY_k`) and Theta-Theta
//! (`ΘΘ_k`) graphs, measures their spanning ratios, and generates the
//! adversarial point sets that separate `YY_6` from `ΘΘ_6`.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;

pub use error::{Error, Result};
pub use geometry::{ConeSystem, Coord, Point, PointSet};
pub use graph::{ConeGraph, DirectedEdge, Family};
