//! Spherical quadrangulations with vertex degrees 3 and 4, viewed as
//! transversal immersions of cubic multigraphs on eight vertices.

pub mod constructions;
pub mod disk;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod iso;
pub mod map;
pub mod multigraph;
pub mod transverse;
pub mod validate;

pub use disk::DiskQuadrangulation;
pub use error::{Error, Result};
pub use map::{Dart, EmbeddedGraph, MapBuilder};
pub use multigraph::Multigraph;
pub use validate::{bipartition, validate_cq, Bipartition, ValidationReport, Violation};
