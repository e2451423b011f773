//! Constructions producing new cubic quadrangulations from old ones.

pub mod cable;
pub mod radial;
pub mod spiral;
pub mod two_disks;

pub use cable::{cable, classify_turn, CablingWalk, Turn};
pub use radial::radial;
pub use spiral::{spiral, SpiralInput};
pub use two_disks::{split_along_cycle, two_disks, BoundaryBijection, TwoDisksOutput};
