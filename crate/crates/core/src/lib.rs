//! Combinatorial machinery for stable commutator length in surface and free groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`cellcx`] finite combinatorial 2-complexes, vertex links, boundaries and subcomplexes;
//! * [`homlin`] exact integer/rational linear algebra: Smith normal form, absolute, relative and
//!   mapping-cone homology, orientability;
//! * [`admsurf`] transverse admissible surfaces decomposed into vertex discs, 1-handles and
//!   cellular discs, together with their standard-form predicates;
//! * [`normalize`] the rewriting moves that bring admissible surfaces into (perfect) standard form;
//! * [`sclopt`] an exact-rational LP for scl in free groups and the rotation-number lower bound;
//! * [`veriharness`] fixtures, the containment verifier and the isometric-embedding harnesses.

pub mod admsurf;
pub mod cellcx;
pub mod cli;
pub mod homlin;
pub mod normalize;
pub mod par;
pub mod sclopt;
pub mod veriharness;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
