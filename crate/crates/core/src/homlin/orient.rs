use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::{check_subcomplex, quotient_complex};
use super::{boundary_matrices, smith_normal_form, ChainVec, HomError, IntMatrix, Ring};
use crate::cellcx::{Inclusion, Subcomplex, TwoComplex};

/// Whether `chain` (indexed by faces of `x`) has boundary supported on the boundary of `x`.
pub fn is_relative_cycle(x: &TwoComplex, chain: &ChainVec) -> bool {
    let bdry = x.boundary_subcomplex();
    let (d2, _) = boundary_matrices(x, chain.ring());
    let dense = chain.to_dense_integers(x.num_faces());
    d2.mul_vec(&dense).iter().enumerate().all(|(e, v)| v.is_zero() || bdry.cells.edges.contains(&e))
}

/// A relative 2-cycle mod the boundary whose support is every face, if one exists.
pub fn is_orientable(x: &TwoComplex, ring: Ring) -> Option<ChainVec> {
    let bdry = x.boundary_subcomplex();
    let (d2, _) = boundary_matrices(x, ring);
    let interior: Vec<usize> = (0..x.num_edges()).filter(|e| !bdry.cells.edges.contains(e)).collect();
    let faces: Vec<usize> = (0..x.num_faces()).collect();
    let m = d2.select(&interior, &faces);
    let basis = smith_normal_form(&m).kernel_basis();
    let covered: BTreeSet<usize> =
        basis.iter().flat_map(|b| b.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i)).collect();
    if covered.len() != x.num_faces() {
        return None;
    }
    // Weighted sums with powers of successive odd primes; stop at the first full-support witness.
    for p in [3u32, 5, 7, 11, 13, 17, 19, 23] {
        let mut w = vec![BigInt::zero(); x.num_faces()];
        let mut weight = BigInt::one();
        for b in &basis {
            weight *= p;
            for (i, v) in b.iter().enumerate() {
                w[i] += &weight * v;
            }
        }
        if w.iter().all(|v| !v.is_zero()) {
            let z = ChainVec::from_integers(ring, &w);
            assert!(is_relative_cycle(x, &z));
            return Some(z);
        }
    }
    unreachable!("prime-power weighting failed on every trial prime")
}

/// Truncates an orientation chain of `x` to the faces of `x0`, in `x0`'s face numbering.
pub fn restrict_orientation(beta: &ChainVec, inclusion: &Inclusion) -> ChainVec {
    let mut out = ChainVec::zero(beta.ring());
    for (new, &old) in inclusion.faces.iter().enumerate() {
        out.add(new, beta.get(old)).expect("same ring");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportVerdict {
    /// `H2(X,Y) = 0` and Y contains every face of X.
    ContainsAllFaces {
        /// When X is a closed surface: whether Y is all of X.
        surface_equality: Option<bool>,
    },
    /// `H2(X,Y)` has the given positive rank.
    HypothesisFails { h2_rank: usize },
    /// `H2(X,Y) = 0` but some face lies outside Y; never expected.
    Violated { missing_faces: Vec<usize> },
}

/// Checks the statement: for orientable X and `∂X ⊆ Y ⊆ X` with `H2(X,Y) = 0`, Y contains every face.
pub fn check_support_lemma(x: &TwoComplex, y: &Subcomplex, ring: Ring) -> Result<SupportVerdict, HomError> {
    check_subcomplex(x, y)?;
    let bdry = x.boundary_subcomplex();
    if !bdry.cells.is_subset(&y.cells) {
        return Err(HomError::BoundaryNotContained);
    }
    if is_orientable(x, ring).is_none() {
        return Err(HomError::NotOrientable(ring));
    }
    let (cc, _) = quotient_complex(x, y)?;
    let h2 = cc.dims[2] - cc.d2.rank();
    if h2 > 0 {
        return Ok(SupportVerdict::HypothesisFails { h2_rank: h2 });
    }
    let missing: Vec<usize> = (0..x.num_faces()).filter(|f| !y.cells.faces.contains(f)).collect();
    if !missing.is_empty() {
        return Ok(SupportVerdict::Violated { missing_faces: missing });
    }
    let report = x.surface_check();
    let closed_surface = report.is_surface && report.boundary_vertices.is_empty();
    let surface_equality = closed_surface.then(|| y.cells == Subcomplex::full(x).cells);
    Ok(SupportVerdict::ContainsAllFaces { surface_equality })
}

/// Rank over Q of the image of `H2(X0, Y∩X0) -> H2(X, Y)` for subcomplexes `X0, Y` of `X`.
pub fn excision_image_rank(x: &TwoComplex, x0: &Subcomplex, y: &Subcomplex) -> Result<(usize, usize), HomError> {
    check_subcomplex(x, x0)?;
    check_subcomplex(x, y)?;
    let y0 = x0.intersection(y);
    let (small, small_inc) = x0.extract(x);
    let y0_small = Subcomplex {
        cells: crate::cellcx::CellSet {
            vertices: small_inc.vertices.iter().enumerate().filter(|(_, v)| y0.cells.vertices.contains(v)).map(|(i, _)| i).collect(),
            edges: small_inc.edges.iter().enumerate().filter(|(_, e)| y0.cells.edges.contains(e)).map(|(i, _)| i).collect(),
            faces: small_inc.faces.iter().enumerate().filter(|(_, f)| y0.cells.faces.contains(f)).map(|(i, _)| i).collect(),
        },
    };
    let (qsmall, [_, _, fs_small]) = quotient_complex(&small, &y0_small)?;
    let (_, [_, _, fs_big]) = quotient_complex(x, y)?;
    let basis = smith_normal_form(&qsmall.d2).kernel_basis();
    let images: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|z| {
            let mut img = vec![BigInt::zero(); fs_big.len()];
            for (k, v) in z.iter().enumerate() {
                let parent = small_inc.faces[fs_small[k]];
                let pos = fs_big.binary_search(&parent).expect("face outside Y0 lies outside Y");
                img[pos] += v;
            }
            img
        })
        .collect();
    let rank = if images.is_empty() { 0 } else { IntMatrix::from_columns(fs_big.len(), &images).rank() };
    Ok((rank, basis.len()))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcx::{parse_2cx, CellSet};

    const DISC: &str = "vertex v\nedge a v v\nface f = a\n";
    const RP2: &str = "vertex v\nedge a v v\nface f = a a\n";
    const TORUS: &str = "vertex v\nedge a v v\nedge b v v\nface f = a b a- b-\n";

    #[test]
    fn orientability_examples() {
        assert!(is_orientable(&parse_2cx(RP2).unwrap(), Ring::Q).is_none());
        let disc = parse_2cx(DISC).unwrap();
        let z = is_orientable(&disc, Ring::Z).unwrap();
        assert_eq!(z.support().count(), 1);
        assert!(is_orientable(&parse_2cx(TORUS).unwrap(), Ring::Z).is_some());
    }

    #[test]
    fn support_lemma_on_torus_missing_face() {
        let x = parse_2cx(TORUS).unwrap();
        let mut cells = CellSet::all(&x);
        cells.faces.clear();
        let y = Subcomplex { cells };
        assert_eq!(check_support_lemma(&x, &y, Ring::Z).unwrap(), SupportVerdict::HypothesisFails { h2_rank: 1 });
        assert_eq!(
            check_support_lemma(&x, &Subcomplex::full(&x), Ring::Z).unwrap(),
            SupportVerdict::ContainsAllFaces { surface_equality: Some(true) }
        );
    }

    #[test]
    fn support_lemma_precondition() {
        let disc = parse_2cx(DISC).unwrap();
        let empty = Subcomplex::default();
        assert_eq!(check_support_lemma(&disc, &empty, Ring::Z), Err(HomError::BoundaryNotContained));
        assert_eq!(
            check_support_lemma(&parse_2cx(RP2).unwrap(), &Subcomplex::default(), Ring::Q),
            Err(HomError::NotOrientable(Ring::Q))
        );
    }
}
