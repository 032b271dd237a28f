//! Exact linear algebra over Z and Q and the cellular homology built on it.

mod chain;
mod complex;
mod cone;
mod matrix;
mod orient;
mod snf;

pub use chain::{parse_chain_file, print_chain_file, ChainVec, Ring};
pub use complex::{
    boundary_matrices, homology, homology_of, quotient_complex, relative_homology, ChainComplex, DegreeHomology,
    HomError, HomologySummary,
};
pub use cone::{cone_homology, ConeComplex, ConeHomology, EdgeLoop};
pub use matrix::{solve_rational, IntMatrix};
pub use orient::{
    check_support_lemma, excision_image_rank, is_orientable, is_relative_cycle, restrict_orientation, SupportVerdict,
};
pub use snf::{invariant_factors, smith_normal_form, SnfResult};
