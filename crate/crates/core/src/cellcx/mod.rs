//! Finite combinatorial 2-complexes.
//!
//! A [`TwoComplex`] has vertices, oriented edges and faces whose attaching maps are cyclic words
//! of signed edges. Every iteration order is ascending id, which is input order.

mod complex;
mod format;
mod link;
mod subcomplex;

pub use complex::{ComplexBuilder, ComplexError, Edge, Face, Letter, TwoComplex};
pub use format::{parse_2cx, parse_cells, print_2cx, print_cells};
pub use link::{HalfEdge, LinkEdge, LinkGraph, LinkShape, SmallLinks, SurfaceReport};
pub use subcomplex::{CellSet, Inclusion, Subcomplex};
pub(crate) use link::UnionFind;
