use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::SclError;
use crate::admsurf::Target;
use crate::homlin::{boundary_matrices, homology, solve_rational, EdgeLoop, Ring};

/// An oriented surface with boundary and positive face areas in units of `π`, summing to `-2χ(S)`.
#[derive(Clone, Debug)]
pub struct RotStructure {
    pub target: Arc<Target>,
    pub areas: Vec<BigRational>,
}

impl RotStructure {
    /// Areas proportional to `deg(σ) − 2`, scaled to total `-2χ(S)`.
    pub fn balanced(target: Arc<Target>) -> Result<Self, SclError> {
        let x = &target.complex;
        let total: i64 = (0..x.num_faces()).map(|f| x.degree(f) as i64 - 2).sum();
        let chi = x.euler_characteristic();
        if total <= 0 || chi >= 0 {
            return Err(SclError::Rot("faces must have average degree above 2 and χ(S) < 0".into()));
        }
        let scale = BigRational::new(BigInt::from(-2 * chi), BigInt::from(total));
        let areas = (0..x.num_faces()).map(|f| BigRational::from_integer(BigInt::from(x.degree(f) as i64 - 2)) * &scale).collect();
        Self::new(target, areas)
    }

    pub fn new(target: Arc<Target>, areas: Vec<BigRational>) -> Result<Self, SclError> {
        let x = &target.complex;
        if areas.len() != x.num_faces() || areas.iter().any(|a| !a.is_positive()) {
            return Err(SclError::Rot("one positive area per face is required".into()));
        }
        let total: BigRational = areas.iter().sum();
        if total != BigRational::from_integer(BigInt::from(-2 * x.euler_characteristic())) {
            return Err(SclError::Rot(format!("areas sum to {total}π, not -2χ(S)π")));
        }
        if homology(x, Ring::Q).betti(2) != 0 {
            return Err(SclError::Rot("H2(S; Q) must vanish".into()));
        }
        Ok(RotStructure { target, areas })
    }

    /// `rot(c) = area(b) / 2π` for the unique 2-chain `b` with `∂b = c`.
    pub fn rot_value(&self, loops: &[EdgeLoop]) -> Result<BigRational, SclError> {
        let x = &self.target.complex;
        let mut c = vec![BigInt::zero(); x.num_edges()];
        for l in loops {
            for (ci, v) in c.iter_mut().zip(l.abelianized(x.num_edges())) {
                *ci += v;
            }
        }
        let (d2, _) = boundary_matrices(x, Ring::Q);
        let b = solve_rational(&d2, &c).ok_or(SclError::NotBoundary)?;
        let area: BigRational = b.iter().zip(&self.areas).zip(&self.target.orientation).map(|((bf, a), &e)| bf * a * BigInt::from(e)).sum();
        Ok(area / BigRational::from_integer(BigInt::from(2)))
    }
}

/// The interval `[|rot|/2, upper]` for scl, exact when both ends meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    #[serde(serialize_with = "ser_q")]
    pub lower: BigRational,
    #[serde(serialize_with = "ser_oq")]
    pub upper: Option<BigRational>,
}

fn ser_q<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_oq<S: serde::Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

impl Sandwich {
    pub fn exact(&self) -> Option<&BigRational> {
        self.upper.as_ref().filter(|u| **u == self.lower)
    }
}

/// Combines the rotation lower bound (defect one) with a surface upper bound.
pub fn bavard_sandwich(r: &RotStructure, loops: &[EdgeLoop], upper: Option<BigRational>) -> Result<Sandwich, SclError> {
    let lower = r.rot_value(loops)?.abs() / BigRational::from_integer(BigInt::from(2));
    if let Some(u) = &upper {
        if *u < lower {
            return Err(SclError::Inconsistent(format!("upper bound {u} below lower bound {lower}")));
        }
    }
    Ok(Sandwich { lower, upper })
}
