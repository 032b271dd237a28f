use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use super::{invariant_factors, IntMatrix, Ring};
use crate::cellcx::{Subcomplex, TwoComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),
    #[error("chain term {term} is not a closed edge path")]
    OpenPath { term: usize },
    #[error("chain term {term} is empty")]
    EmptyTerm { term: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("the boundary of the complex is not contained in the subcomplex")]
    BoundaryNotContained,
    #[error("the complex is not orientable over {0}")]
    NotOrientable(Ring),
}

/// A chain complex concentrated in degrees 0, 1, 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub dims: [usize; 3],
    /// C1 -> C0
    pub d1: IntMatrix,
    /// C2 -> C1
    pub d2: IntMatrix,
}

impl ChainComplex {
    /// Panics unless the shapes agree and `d1 * d2 == 0`.
    pub fn new(d1: IntMatrix, d2: IntMatrix) -> Self {
        assert_eq!(d1.cols(), d2.rows(), "C1 dimension mismatch");
        assert!(d1.mul(&d2).is_zero(), "d1 * d2 != 0");
        ChainComplex { dims: [d1.rows(), d1.cols(), d2.cols()], d1, d2 }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims[0] as i64 - self.dims[1] as i64 + self.dims[2] as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologySummary {
    pub ring: Ring,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologySummary {
    pub fn betti(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.rank)
    }

    pub fn torsion(&self, n: usize) -> &[BigInt] {
        self.degrees.get(n).map_or(&[], |d| d.torsion.as_slice())
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.rank).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|d| if d.degree % 2 == 0 { d.rank as i64 } else { -(d.rank as i64) }).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(|d| d.rank == 0 && d.torsion.is_empty())
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.degrees {
            let tors: Vec<String> = d.torsion.iter().map(ToString::to_string).collect();
            writeln!(f, "H{} rank {} torsion [{}]", d.degree, d.rank, tors.join(", "))?;
        }
        Ok(())
    }
}

/// Homology of a 3-term chain complex over `ring`.
pub fn homology_of(cc: &ChainComplex, ring: Ring) -> HomologySummary {
    let f1 = invariant_factors(&cc.d1);
    let f2 = invariant_factors(&cc.d2);
    let (r1, r2) = (f1.len(), f2.len());
    let tors = |f: &[BigInt]| match ring {
        Ring::Z => f.iter().filter(|x| !x.is_one()).cloned().collect(),
        Ring::Q => Vec::new(),
    };
    let degrees = vec![
        DegreeHomology { degree: 0, rank: cc.dims[0] - r1, torsion: tors(&f1) },
        DegreeHomology { degree: 1, rank: cc.dims[1] - r1 - r2, torsion: tors(&f2) },
        DegreeHomology { degree: 2, rank: cc.dims[2] - r2, torsion: Vec::new() },
    ];
    HomologySummary { ring, degrees }
}

/// Cellular boundary matrices `(d2, d1)`; entries are integers for either ring.
pub fn boundary_matrices(x: &TwoComplex, _ring: Ring) -> (IntMatrix, IntMatrix) {
    let mut d1 = IntMatrix::zeros(x.num_vertices(), x.num_edges());
    for (e, ed) in x.edges().iter().enumerate() {
        d1[(ed.dst, e)] += 1;
        d1[(ed.src, e)] -= 1;
    }
    let mut d2 = IntMatrix::zeros(x.num_edges(), x.num_faces());
    for (f, face) in x.faces().iter().enumerate() {
        for l in &face.word {
            d2[(l.edge, f)] += l.sign();
        }
    }
    assert!(d1.mul(&d2).is_zero(), "d1 * d2 != 0");
    (d2, d1)
}

pub(crate) fn cellular_chain_complex(x: &TwoComplex) -> ChainComplex {
    let (d2, d1) = boundary_matrices(x, Ring::Z);
    ChainComplex::new(d1, d2)
}

pub fn homology(x: &TwoComplex, ring: Ring) -> HomologySummary {
    let h = homology_of(&cellular_chain_complex(x), ring);
    assert!(h.torsion(2).is_empty());
    h
}

pub(crate) fn check_subcomplex(x: &TwoComplex, y: &Subcomplex) -> Result<(), HomError> {
    let c = &y.cells;
    let in_range = c.vertices.iter().all(|&v| v < x.num_vertices())
        && c.edges.iter().all(|&e| e < x.num_edges())
        && c.faces.iter().all(|&f| f < x.num_faces());
    if !in_range {
        return Err(HomError::NotSubcomplex("cell id out of range".into()));
    }
    if !c.is_closed_in(x) {
        return Err(HomError::NotSubcomplex("cell set is not closed under taking faces".into()));
    }
    Ok(())
}

/// The quotient `C(X)/C(Y)` together with the surviving cell ids of X in each degree.
pub fn quotient_complex(x: &TwoComplex, y: &Subcomplex) -> Result<(ChainComplex, [Vec<usize>; 3]), HomError> {
    check_subcomplex(x, y)?;
    let (d2, d1) = boundary_matrices(x, Ring::Z);
    let vs: Vec<usize> = (0..x.num_vertices()).filter(|v| !y.cells.vertices.contains(v)).collect();
    let es: Vec<usize> = (0..x.num_edges()).filter(|e| !y.cells.edges.contains(e)).collect();
    let fs: Vec<usize> = (0..x.num_faces()).filter(|f| !y.cells.faces.contains(f)).collect();
    let cc = ChainComplex::new(d1.select(&vs, &es), d2.select(&es, &fs));
    Ok((cc, [vs, es, fs]))
}

pub fn relative_homology(x: &TwoComplex, y: &Subcomplex, ring: Ring) -> Result<HomologySummary, HomError> {
    Ok(homology_of(&quotient_complex(x, y)?.0, ring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcx::{parse_2cx, CellSet};

    fn rp2() -> TwoComplex {
        parse_2cx("vertex v\nedge a v v\nface f = a a\n").unwrap()
    }

    #[test]
    fn projective_plane() {
        let x = rp2();
        let (d2, d1) = boundary_matrices(&x, Ring::Z);
        assert_eq!(d2[(0, 0)], BigInt::from(2));
        assert!(d1.is_zero());
        let hz = homology(&x, Ring::Z);
        assert_eq!(hz.betti_numbers(), vec![1, 0, 0]);
        assert_eq!(hz.torsion(1), &[BigInt::from(2)]);
        assert_eq!(homology(&x, Ring::Q).betti(2), 0);
        assert!(homology(&x, Ring::Q).torsion(1).is_empty());
    }

    #[test]
    fn torus_boundaries_vanish() {
        let x = parse_2cx("vertex v\nedge a v v\nedge b v v\nface f = a b a- b-\n").unwrap();
        let (d2, d1) = boundary_matrices(&x, Ring::Z);
        assert!(d2.is_zero() && d1.is_zero());
        assert_eq!(homology(&x, Ring::Z).betti_numbers(), vec![1, 2, 1]);
    }

    #[test]
    fn relative_to_itself_vanishes() {
        let x = rp2();
        let h = relative_homology(&x, &Subcomplex::full(&x), Ring::Z).unwrap();
        assert!(h.is_zero());
        let bad = Subcomplex { cells: CellSet::faces([0]) };
        assert!(relative_homology(&x, &bad, Ring::Z).is_err());
    }
}
