//! Exhaustive generation of cubic quadrangulations and quadrangulated disks,
//! the cubic multigraph census, and coverage of the census by extractions.

pub mod census;
pub mod corpus;
pub mod cq;
pub mod disks;
pub(crate) mod fill;
pub mod oracle;

pub use census::{census_connected_cubic_multigraphs, census_disconnected_8, connected_cubic_multigraphs, CensusResult};
pub use corpus::{add_construction_sweep, coverage_report, enumerated_corpus, ClassCoverage, Corpus, CorpusEntry, CoverageReport, Provenance};
pub use cq::{enumerate_cq, enumerate_cq_with};
pub use disks::{boundary_words, classify, classify_irreducible, enumerate_disks, enumerate_disks_with, DiskClassification};
pub use oracle::{enumerate_cq_filtered, enumerate_cq_filtered_with};

use serde::{Deserialize, Serialize};

/// Size limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest vertex count for face-expansion enumeration.
    pub max_n: usize,
    /// Largest vertex count for the graph-first filter enumeration.
    pub oracle_max_n: usize,
    /// Largest boundary length for disk enumeration.
    pub max_boundary: usize,
    /// Largest vertex count for disk enumeration.
    pub max_disk_vertices: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_n: 16,
            oracle_max_n: 12,
            max_boundary: 14,
            max_disk_vertices: 40,
        }
    }
}
