//! Checks shared by the acceptance suite and the property suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sclcx::cellcx::{CellSet, Subcomplex, TwoComplex};
use sclcx::homlin::{homology, is_orientable, relative_homology, smith_normal_form, IntMatrix, Ring};
use sclcx::par::ExecPolicy;
use sclcx::sclopt::{scl_lp, OneChain, SclValue};
use sclcx::veriharness::fixtures::*;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Complexes used as ambient spaces for random subcomplexes.
pub fn ambient_complexes() -> Vec<(&'static str, TwoComplex)> {
    vec![
        ("torus", torus()),
        ("rp2", projective_plane()),
        ("disc", disc()),
        ("sg1b-2", sg1b(2)),
        ("closed-s2", closed_surface(2)),
        ("closed-s3", closed_s3()),
        ("sg1b-ambient-2", sg1b_ambient(2)),
        ("fan-disc", fan_disc()),
        ("grid-torus-3x4", grid_torus(3, 4)),
        ("three-squares", three_squares()),
    ]
}

/// Three squares sharing one edge: no small links.
pub fn three_squares() -> TwoComplex {
    let mut text = String::from("vertex p\nvertex q\nedge e p q\n");
    for i in 0..3 {
        text += &format!("vertex r{i}\nvertex s{i}\nedge a{i} q r{i}\nedge b{i} r{i} s{i}\nedge c{i} s{i} p\n");
        text += &format!("face f{i} = e a{i} b{i} c{i}\n");
    }
    sclcx::cellcx::parse_2cx(&text).expect("three squares")
}

/// A random subcomplex: each face with probability 1/2, a few extra edges and vertices,
/// closed under faces.
pub fn random_subcomplex(x: &TwoComplex, r: &mut impl Rng) -> Subcomplex {
    let mut cells = CellSet::default();
    for f in 0..x.num_faces() {
        if r.gen_bool(0.5) {
            cells.faces.insert(f);
        }
    }
    for e in 0..x.num_edges() {
        if r.gen_bool(0.2) {
            cells.edges.insert(e);
        }
    }
    for v in 0..x.num_vertices() {
        if r.gen_bool(0.2) {
            cells.vertices.insert(v);
        }
    }
    Subcomplex::induced(x, &cells).expect("closure of existing cells")
}

fn alternating(ranks: &[usize]) -> i64 {
    ranks.iter().enumerate().map(|(i, &r)| if i % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
}

/// `χ(Y) = Σ(-1)^i b_i(Y)` and `χ(X) − χ(Y) = Σ(-1)^i b_i(X, Y)`, with `χ` from cell counts.
pub fn euler_poincare(x: &TwoComplex, y: &Subcomplex) -> Result<(), String> {
    let (yx, _) = y.extract(x);
    let chi_y = yx.euler_characteristic();
    let hy = homology(&yx, Ring::Q).betti_numbers();
    if alternating(&hy) != chi_y {
        return Err(format!("χ(Y) = {chi_y} but Betti numbers {hy:?}"));
    }
    let rel = relative_homology(x, y, Ring::Q).map_err(|e| e.to_string())?.betti_numbers();
    let chi_rel = x.euler_characteristic() - chi_y;
    if alternating(&rel) != chi_rel {
        return Err(format!("χ(X, Y) = {chi_rel} but relative Betti numbers {rel:?}"));
    }
    let hx = homology(x, Ring::Z);
    let hx_q = homology(x, Ring::Q).betti_numbers();
    if hx.betti_numbers() != hx_q {
        return Err("Betti numbers depend on the ring".into());
    }
    Ok(())
}

pub fn random_matrix(r: &mut impl Rng, max: usize) -> IntMatrix {
    let rows = r.gen_range(0..=max);
    let cols = r.gen_range(0..=max);
    let density = r.gen_range(0.1..1.0);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| if r.gen_bool(density) { r.gen_range(-9..=9) } else { 0 }).collect())
        .collect();
    if rows == 0 {
        IntMatrix::zeros(0, cols)
    } else {
        IntMatrix::from_rows(&data)
    }
}

/// Rank over Q by fraction-free elimination.
pub fn bareiss_rank(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..rows {
            for j in c + 1..cols {
                a[i][j] = (&a[i][j] * &a[rank][c] - &a[i][c] * &a[rank][j]) / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

/// `U·M·V = D`, `U` and `V` unimodular, `D` diagonal nonnegative with `d_i | d_{i+1}`, and the
/// rank agrees with an elimination oracle.
pub fn snf_identities(m: &IntMatrix) -> Result<(), String> {
    let s = smith_normal_form(m);
    if s.u.mul(m).mul(&s.v) != s.d {
        return Err("U·M·V ≠ D".into());
    }
    if !s.u.is_unimodular() || !s.v.is_unimodular() {
        return Err("transform is not unimodular".into());
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d[(i, j)].is_zero() {
                return Err(format!("D has off-diagonal entry at ({i}, {j})"));
            }
        }
    }
    let diag: Vec<BigInt> = (0..s.d.rows().min(s.d.cols())).map(|i| s.d[(i, i)].clone()).collect();
    if diag.iter().any(|d| d.is_negative()) {
        return Err("negative diagonal entry".into());
    }
    for w in diag.windows(2) {
        let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
        if !divides {
            return Err(format!("{} does not divide {}", w[0], w[1]));
        }
    }
    if s.rank() != bareiss_rank(m) {
        return Err(format!("rank {} but elimination gives {}", s.rank(), bareiss_rank(m)));
    }
    Ok(())
}

/// Each corner of a face gives exactly one link edge.
pub fn link_corner_accounting(x: &TwoComplex) -> bool {
    let links: usize = x.link_graphs().iter().map(|l| l.edges.len()).sum();
    let corners: usize = x.faces().iter().map(|f| f.word.len()).sum();
    links == corners
}

/// Small links and orientability pass from `X` to the subcomplex `Y`.
pub fn subcomplex_stability(x: &TwoComplex, y: &Subcomplex) -> Result<(), String> {
    let (yx, _) = y.extract(x);
    if x.has_small_links().holds && !yx.has_small_links().holds {
        return Err("small links lost on a subcomplex".into());
    }
    if x.has_small_links().holds && is_orientable(x, Ring::Q).is_some() && is_orientable(&yx, Ring::Q).is_none() {
        return Err("orientability lost on a subcomplex".into());
    }
    Ok(())
}

/// Every term's word raised to the power `n`.
pub fn power(c: &OneChain, n: usize) -> OneChain {
    let terms = c.terms.iter().map(|(k, w)| (*k, w.repeat(n))).collect();
    OneChain::from_terms(&c.basis, terms).expect("powers of reduced words stay reduced")
}

pub fn scl(c: &OneChain) -> SclValue {
    let r = scl_lp(c, ExecPolicy::Parallel).expect("LP solves");
    assert!(r.verify(), "certificate of `{c}` verifies");
    r.value
}

/// `scl(c^n) = n · scl(c)`.
pub fn homogeneous(c: &OneChain, n: usize) -> Result<(), String> {
    let (a, b) = (scl(c), scl(&power(c, n)));
    let expect = match &a {
        SclValue::Finite(v) => SclValue::Finite(v * BigRational::from_integer(BigInt::from(n))),
        SclValue::Infinite => SclValue::Infinite,
    };
    if b == expect {
        Ok(())
    } else {
        Err(format!("scl({c}) = {a} but scl of its power {n} is {b}"))
    }
}
