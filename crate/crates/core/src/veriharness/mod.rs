//! Verifiers for the containment and isometric embedding statements, plus fixtures.

mod containment;
mod embedding;
pub mod fixtures;
mod spine;

pub use containment::{
    check_h1_injectivity, image_subcomplex, verify_theorem_main, CellNames, ContainmentReport, FaceVerdict, H1Report,
    Hypothesis, Verdict,
};
pub use embedding::{
    chain_corpus, class_difference, retarget, theorem_a_harness, theorem_b_harness, ChainComparison, ClassDifference,
    TheoremAReport, TheoremBReport, WitnessTransport,
};
pub use spine::Spine;

use crate::admsurf::AdmError;
use crate::homlin::HomError;
use crate::sclopt::SclError;

/// Which hypothesis the containment argument runs under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Standard form and `H2(S, T) = 0`.
    Standard,
    /// Perfect standard form and a pushed-forward class vanishing in `H2(S, T)`.
    Perfect,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Standard => "standard",
            Mode::Perfect => "perfect",
        })
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Adm(#[from] AdmError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Scl(#[from] SclError),
}
