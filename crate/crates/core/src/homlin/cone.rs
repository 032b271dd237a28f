use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::complex::cellular_chain_complex;
use super::{homology_of, smith_normal_form, solve_rational, ChainComplex, HomError, HomologySummary, IntMatrix, Ring};
use crate::cellcx::{Letter, TwoComplex};

/// One term `word^mult` of a 1-chain, with `word` a closed edge path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeLoop {
    pub word: Vec<Letter>,
    pub mult: i64,
}

impl EdgeLoop {
    pub fn new(word: Vec<Letter>, mult: i64) -> Self {
        EdgeLoop { word, mult }
    }

    /// The edge path traversed by the subdivided circle.
    pub fn unrolled(&self) -> Vec<Letter> {
        let base: Vec<Letter> = if self.mult < 0 {
            self.word.iter().rev().map(|l| l.inv()).collect()
        } else {
            self.word.clone()
        };
        base.iter().copied().cycle().take(base.len() * self.mult.unsigned_abs() as usize).collect()
    }

    /// Image of the circle's fundamental class in C1(X).
    pub fn abelianized(&self, num_edges: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); num_edges];
        for l in &self.word {
            v[l.edge] += l.sign() * self.mult;
        }
        v
    }
}

/// Algebraic mapping cone of the chain map from the subdivided circles into X.
///
/// Degree n is `C_n(X) ⊕ C_{n-1}(circles)`; X coordinates come first. A 2-cycle `(x, s)`
/// satisfies `d x = γ(s)`, so its circle part is the boundary degree vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeComplex {
    pub chain: ChainComplex,
    /// Number of edges (= vertices) of each circle.
    pub circle_lengths: Vec<usize>,
    pub x_dims: [usize; 3],
}

impl ConeComplex {
    pub fn build(x: &TwoComplex, loops: &[EdgeLoop]) -> Result<Self, HomError> {
        for (i, l) in loops.iter().enumerate() {
            if l.word.is_empty() || l.mult == 0 {
                return Err(HomError::EmptyTerm { term: i });
            }
            if !x.is_closed_path(&l.word) {
                return Err(HomError::OpenPath { term: i });
            }
        }
        let xc = cellular_chain_complex(x);
        let lengths: Vec<usize> = loops.iter().map(|l| l.word.len() * l.mult.unsigned_abs() as usize).collect();
        let n: usize = lengths.iter().sum();
        let mut gamma0 = IntMatrix::zeros(x.num_vertices(), n);
        let mut gamma1 = IntMatrix::zeros(x.num_edges(), n);
        let mut dc = IntMatrix::zeros(n, n);
        let mut off = 0;
        for (l, &len) in loops.iter().zip(&lengths) {
            for (j, letter) in l.unrolled().into_iter().enumerate() {
                gamma0[(x.letter_src(letter), off + j)] += 1;
                gamma1[(letter.edge, off + j)] += letter.sign();
                dc[(off + (j + 1) % len, off + j)] += 1;
                dc[(off + j, off + j)] -= 1;
            }
            off += len;
        }
        let mut neg_gamma1 = IntMatrix::zeros(x.num_edges(), n);
        for i in 0..x.num_edges() {
            for j in 0..n {
                neg_gamma1[(i, j)] = -gamma1[(i, j)].clone();
            }
        }
        let d1 = xc.d1.hcat(&gamma0);
        let zero = IntMatrix::zeros(n, x.num_faces());
        let d2 = IntMatrix::block(&[vec![&xc.d2, &neg_gamma1], vec![&zero, &dc]]);
        Ok(ConeComplex { chain: ChainComplex::new(d1, d2), circle_lengths: lengths, x_dims: xc.dims })
    }

    /// Index in cone degree 2 of the first edge of circle `i`.
    pub fn circle_offset(&self, i: usize) -> usize {
        self.x_dims[2] + self.circle_lengths[..i].iter().sum::<usize>()
    }

    /// Connecting map to `H1(circles) = Z^k`: reads the circle component of a cone 2-cycle.
    pub fn connecting(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        (0..self.circle_lengths.len()).map(|i| cycle[self.circle_offset(i)].clone()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeHomology {
    pub cone: ConeComplex,
    pub summary: HomologySummary,
    /// Integer basis of `H2(X, c)` (= 2-cycles of the cone).
    pub h2_basis: Vec<Vec<BigInt>>,
    /// `connecting[i]` is the image of `h2_basis[i]` in `H1(circles)`.
    pub connecting: Vec<Vec<BigInt>>,
    pub rank_h2_x: usize,
    /// Rank of the kernel of `H1(circles) -> H1(X)`.
    pub rank_ker_gamma: usize,
}

impl ConeHomology {
    /// Rank over Q of the connecting map.
    pub fn connecting_rank(&self) -> usize {
        if self.connecting.is_empty() {
            return 0;
        }
        IntMatrix::from_columns(self.cone.circle_lengths.len(), &self.connecting).rank()
    }

    pub fn connecting_is_injective(&self) -> bool {
        self.connecting_rank() == self.h2_basis.len()
    }

    /// Coordinates of a cone 2-cycle in `h2_basis`, or `None` if it is not a cycle.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Option<Vec<BigRational>> {
        if !self.cone.chain.d2.mul_vec(cycle).iter().all(Zero::is_zero) {
            return None;
        }
        let basis = IntMatrix::from_columns(cycle.len(), &self.h2_basis);
        solve_rational(&basis, cycle)
    }
}

/// `H_*(X, c)` with the connecting map `H2(X, c) -> H1(circles)`; asserts the rank identity
/// `rank H2(X,c) = rank H2(X) + rank ker(H1(circles) -> H1(X))` and exactness at `H1(circles)`.
pub fn cone_homology(x: &TwoComplex, loops: &[EdgeLoop], ring: Ring) -> Result<ConeHomology, HomError> {
    let cone = ConeComplex::build(x, loops)?;
    let summary = homology_of(&cone.chain, ring);
    let h2_basis = smith_normal_form(&cone.chain.d2).kernel_basis();
    let connecting: Vec<Vec<BigInt>> = h2_basis.iter().map(|z| cone.connecting(z)).collect();

    let xc = cellular_chain_complex(x);
    let rank_h2_x = xc.dims[2] - xc.d2.rank();
    let images: Vec<Vec<BigInt>> = loops.iter().map(|l| l.abelianized(x.num_edges())).collect();
    let gamma_rank = if images.is_empty() {
        0
    } else {
        xc.d2.hcat(&IntMatrix::from_columns(x.num_edges(), &images)).rank() - xc.d2.rank()
    };
    let rank_ker_gamma = loops.len() - gamma_rank;
    let out = ConeHomology { cone, summary, h2_basis, connecting, rank_h2_x, rank_ker_gamma };
    assert_eq!(out.summary.betti(2), rank_h2_x + rank_ker_gamma, "cone exact-sequence rank identity");
    assert_eq!(out.connecting_rank(), rank_ker_gamma, "exactness at H1 of the circles");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcx::parse_2cx;

    fn punctured_torus() -> TwoComplex {
        parse_2cx("vertex v\nedge a v v\nedge b v v\nedge c v v\nface f = a b a- b- c-\n").unwrap()
    }

    #[test]
    fn boundary_loop_of_punctured_torus() {
        let x = punctured_torus();
        let c = EdgeLoop::new(x.parse_word("c").unwrap(), 1);
        let h = cone_homology(&x, &[c], Ring::Q).unwrap();
        assert_eq!(h.summary.betti(2), 1);
        assert!(h.connecting_is_injective());
        assert_eq!(h.rank_h2_x, 0);
    }

    #[test]
    fn empty_chain_is_absolute() {
        let x = parse_2cx("vertex v\nedge a v v\nedge b v v\nface f = a b a- b-\n").unwrap();
        let h = cone_homology(&x, &[], Ring::Q).unwrap();
        assert_eq!(h.summary.betti_numbers(), vec![1, 2, 1]);
    }

    #[test]
    fn errors_and_multiplicity() {
        let x = parse_2cx("vertex v\nvertex w\nedge a v w\nedge b v v\nface f = b b-\n").unwrap();
        assert_eq!(cone_homology(&x, &[EdgeLoop::new(x.parse_word("a").unwrap(), 1)], Ring::Q).unwrap_err(), HomError::OpenPath { term: 0 });
        assert_eq!(cone_homology(&x, &[EdgeLoop::new(vec![], 1)], Ring::Q).unwrap_err(), HomError::EmptyTerm { term: 0 });
        let p = punctured_torus();
        let h = cone_homology(&p, &[EdgeLoop::new(p.parse_word("c").unwrap(), -2)], Ring::Z).unwrap();
        assert_eq!(h.cone.circle_lengths, vec![2]);
        assert_eq!(h.summary.betti(2), 1);
    }
}
