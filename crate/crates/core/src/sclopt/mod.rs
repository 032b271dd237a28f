//! Exact scl for chains in free groups and the rotation-number lower bound.

mod chain;
mod lp;
mod rot;
mod scl;

pub use chain::{cyclically_reduce, inverse, is_rotation, Gen, OneChain};
pub use lp::{LpSolution, RationalLp, Simplex};
pub use rot::{bavard_sandwich, RotStructure, Sandwich};
pub use scl::{
    scl_compare_under_inclusion, scl_lp, scl_upper_from_surface, InclusionReport, SclProgram, SclResult, SclValue,
    MAX_POLYGONS,
};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SclError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("term `{0}` reduces to the empty word")]
    TrivialTerm(String),
    #[error("the chain is zero after merging terms")]
    ZeroChain,
    #[error("generator `{0}` is not in the ambient basis")]
    NotSubBasis(char),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("more than {0} polygon types")]
    TooLarge(usize),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("boundary degrees are not uniform and monotone")]
    NonUniformDegree,
    #[error("rotation structure: {0}")]
    Rot(String),
    #[error("the chain is not a boundary in the surface")]
    NotBoundary,
    #[error("inconsistent bounds: {0}")]
    Inconsistent(String),
}
