//! Transverse admissible surfaces over an oriented cellulated target surface.

mod analysis;
mod builder;
mod format;
mod model;
mod target;

pub use model::{
    AdmissibleSurface, Assignment, Circuit, End, FPiece, FreeArc, HPiece, NamedLoop, Pieces, Side, Slot, VPiece,
};
pub(crate) use builder::polygon_pieces;
pub(crate) use model::{cyclically_equal, glued_side, runs_forward, side_next_to_corner, word_index};
pub use analysis::{BarComplex, DegreeReport, Pushforward, StandardFormReport, SurfaceComponent};
pub use builder::{assign_and_build, auto_pairs, boundary_loops, from_polygons, PolySide};
pub use format::{format_arc, parse_adm, print_adm};
pub use target::{surface_orientation, Target};

use crate::homlin::HomError;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum AdmError {
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("target is not a surface at vertices {0:?}")]
    TargetNotSurface(Vec<usize>),
    #[error("target surface is not orientable")]
    TargetNotOrientable,
    #[error("loop {0} is not a nonempty closed edge path with nonzero multiplicity")]
    BadLoop(usize),
    #[error("gluing is not an involution: {0}")]
    NonInvolutive(String),
    #[error("wrong edge: {0}")]
    WrongEdge(String),
    #[error("vertex mismatch: {0}")]
    VertexMismatch(String),
    #[error("inconsistent orientation: {0}")]
    OrientationInconsistent(String),
    #[error("corner mismatch: {0}")]
    CornerMismatch(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("assembly failed: {0}")]
    AssemblyFailed(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error(transparent)]
    Hom(#[from] HomError),
}

#[cfg(test)]
mod tests;
