//! Named complexes, subcomplexes and admissible surfaces used by the harnesses and tests.

use std::sync::Arc;

use crate::admsurf::{
    assign_and_build, auto_pairs, boundary_loops, from_polygons, glued_side, polygon_pieces, side_next_to_corner, AdmissibleSurface,
    NamedLoop, PolySide, Slot, Target,
};
use crate::cellcx::{parse_2cx, Subcomplex, TwoComplex};
use crate::homlin::EdgeLoop;

fn complex(text: &str) -> TwoComplex {
    parse_2cx(text).expect("fixture complex parses")
}

fn commutators(prefix: &[(String, String)]) -> String {
    prefix.iter().map(|(a, b)| format!("{a} {b} {a}- {b}-")).collect::<Vec<_>>().join(" ")
}

fn genus_edges(range: std::ops::RangeInclusive<usize>) -> Vec<(String, String)> {
    range.map(|i| (format!("a{i}"), format!("b{i}"))).collect()
}

fn edge_lines(pairs: &[(String, String)]) -> String {
    pairs.iter().map(|(a, b)| format!("edge {a} v v\nedge {b} v v\n")).collect()
}

pub fn torus() -> TwoComplex {
    complex("vertex v\nedge a v v\nedge b v v\nface f = a b a- b-\n")
}

pub fn projective_plane() -> TwoComplex {
    complex("vertex v\nedge a v v\nface f = a a\n")
}

pub fn disc() -> TwoComplex {
    complex("vertex v\nedge a v v\nface f = a\n")
}

/// Genus `g` with one boundary circle `c`: one vertex, face `[a1,b1]...[ag,bg] c⁻¹`.
pub fn sg1b(g: usize) -> TwoComplex {
    let pairs = genus_edges(1..=g);
    complex(&format!("vertex v\n{}edge c v v\nface f = {} c-\n", edge_lines(&pairs), commutators(&pairs)))
}

/// Closed genus `g` surface with a single face.
pub fn closed_surface(g: usize) -> TwoComplex {
    let pairs = genus_edges(1..=g);
    if g == 0 {
        return complex("vertex v\nvertex w\nedge a v w\nface f1 = a a-\n");
    }
    complex(&format!("vertex v\n{}face f = {}\n", edge_lines(&pairs), commutators(&pairs)))
}

/// Closed genus 3 surface split by the curve `c` into faces `f1 = [a1,b1][a2,b2]c⁻¹` and `f2 = [a3,b3]c`.
pub fn closed_s3() -> TwoComplex {
    let mut text = String::from("vertex v\n");
    text += &edge_lines(&genus_edges(1..=2));
    text += "edge c v v\n";
    text += &edge_lines(&genus_edges(3..=3));
    text += &format!("face f1 = {} c-\n", commutators(&genus_edges(1..=2)));
    text += &format!("face f2 = {} c\n", commutators(&genus_edges(3..=3)));
    complex(&text)
}

/// `Sg1b(g)` embedded in `Sg1b(g + 1)`: faces `f1 = [a1,b1]...[ag,bg] c⁻¹` and `f2 = c [a_{g+1},b_{g+1}] d⁻¹`.
/// The subsurface is the closure of `f1`; its complement meets the outer boundary `d`.
pub fn sg1b_ambient(g: usize) -> TwoComplex {
    let mut text = String::from("vertex v\n");
    text += &edge_lines(&genus_edges(1..=g));
    text += "edge c v v\n";
    text += &edge_lines(&genus_edges(g + 1..=g + 1));
    text += "edge d v v\n";
    text += &format!("face f1 = {} c-\n", commutators(&genus_edges(1..=g)));
    text += &format!("face f2 = c {} d-\n", commutators(&genus_edges(g + 1..=g + 1)));
    complex(&text)
}

/// Closure of the named faces.
pub fn closure_of(x: &TwoComplex, faces: &[&str]) -> Subcomplex {
    let ids: Vec<usize> = faces.iter().map(|f| x.face_id(f).expect("fixture face")).collect();
    Subcomplex::induced(x, &crate::cellcx::CellSet::faces(ids)).expect("closure of faces")
}

/// A disc subdivided into four triangles around a central vertex `o`.
pub fn fan_disc() -> TwoComplex {
    let mut text = String::from("vertex o\n");
    for i in 1..=4 {
        text += &format!("vertex p{i}\n");
    }
    for i in 1..=4 {
        text += &format!("edge s{i} o p{i}\n");
    }
    for i in 1..=4 {
        text += &format!("edge t{i} p{i} p{}\n", i % 4 + 1);
    }
    for i in 1..=4 {
        text += &format!("face g{i} = s{i} t{i} s{}-\n", i % 4 + 1);
    }
    complex(&text)
}

pub fn target(x: TwoComplex) -> Arc<Target> {
    Arc::new(Target::new(x).expect("fixture target is an oriented surface"))
}

fn word_loop(x: &TwoComplex, name: &str, word: &str, mult: i64) -> NamedLoop {
    NamedLoop { name: name.to_string(), edge_loop: EdgeLoop::new(x.parse_word(word).expect("fixture word"), mult) }
}

/// The positively oriented boundary of the subsurface `f1` of `ClosedS3` (or of the
/// ambient fixtures): the loop `c⁻¹`.
pub fn boundary_loop_c(x: &TwoComplex) -> Arc<Vec<NamedLoop>> {
    Arc::new(vec![word_loop(x, "w", "c-", 1)])
}

fn polygon_surface(t: &Arc<Target>, loops: Arc<Vec<NamedLoop>>, discs: &[(usize, i64)]) -> AdmissibleSurface {
    let pairs = auto_pairs(t, discs);
    from_polygons(t.clone(), loops, discs, &pairs, true).expect("fixture surface is valid")
}

/// The subsurface `f1` itself: one vertex disc, five handles, one cellular disc.
pub fn t_itself(t: &Arc<Target>) -> AdmissibleSurface {
    let f1 = t.complex.face_id("f1").expect("face f1");
    polygon_surface(t, boundary_loop_c(&t.complex), &[(f1, 1)])
}

/// Genus one surface over `ClosedS3` made from `f2` with reversed orientation; its
/// boundary also reads `c⁻¹`.
pub fn sigma_genus_1(t: &Arc<Target>) -> AdmissibleSurface {
    let f2 = t.complex.face_id("f2").expect("face f2");
    polygon_surface(t, boundary_loop_c(&t.complex), &[(f2, -1)])
}

/// Both of the above as one surface over the same chain.
pub fn t_and_sigma(t: &Arc<Target>) -> AdmissibleSurface {
    let (f1, f2) = (t.complex.face_id("f1").unwrap(), t.complex.face_id("f2").unwrap());
    polygon_surface(t, boundary_loop_c(&t.complex), &[(f1, 1), (f2, -1)])
}

/// The surface `Sg1b(g)` mapping to itself, bounding its boundary loop `c⁻¹`.
pub fn identity_surface(t: &Arc<Target>) -> AdmissibleSurface {
    let discs: Vec<(usize, i64)> = (0..t.complex.num_faces()).map(|f| (f, 1)).collect();
    polygon_surface(t, boundary_loop_c(&t.complex), &discs)
}

/// Fan disc with a vertex disc at `o` joining a positive disc over `g1` and a negative
/// disc over `g3`; the link of the central vertex is disconnected.
pub fn figlnk(t: &Arc<Target>) -> AdmissibleSurface {
    let x = &t.complex;
    let (g1, g3) = (x.face_id("g1").unwrap(), x.face_id("g3").unwrap());
    let mut pieces = polygon_pieces(t, &[(g1, 1), (g3, -1)], &[]).expect("fan pieces");
    // Merge the two vertex discs over `o` into one with free corners between the discs.
    let o = x.vertex_id("o").unwrap();
    let at_o: Vec<usize> = pieces.vpieces.iter().enumerate().filter(|(_, v)| v.vertex == o).map(|(i, _)| i).collect();
    assert_eq!(at_o.len(), 2);
    let mut glued = std::collections::BTreeSet::new();
    for fp in &pieces.fpieces {
        for (k, &h) in fp.sides.iter().enumerate() {
            glued.insert((h, glued_side(fp.sign, x.face(fp.face).word[k])));
        }
    }
    // Rotate each disc so that its free corner comes last, then concatenate.
    let rotated = |slots: &[Slot]| -> Vec<Slot> {
        let r = (0..slots.len())
            .find(|&i| match slots[i] {
                Slot::End(h, e) => !glued.contains(&(h, side_next_to_corner(e, true))),
                Slot::Free => true,
            })
            .expect("free corner");
        slots[r + 1..].iter().chain(&slots[..=r]).copied().collect()
    };
    let second = pieces.vpieces.remove(at_o[1]);
    let merged: Vec<Slot> = rotated(&pieces.vpieces[at_o[0]].slots).into_iter().chain(rotated(&second.slots)).collect();
    pieces.vpieces[at_o[0]].slots = merged;
    let loops = Arc::new(boundary_loops(t, &pieces).expect("fan circuits"));
    crate::admsurf::assign_and_build(t.clone(), loops, pieces, true).expect("FIGLNK is valid")
}

/// Two cellular discs over the same face of the torus with opposite signs, glued along
/// the handle over `a` at matching sides: a fold.
pub fn fold(t: &Arc<Target>) -> AdmissibleSurface {
    let x = &t.complex;
    let f = 0;
    let a = x.edge_id("a").unwrap();
    let k = x.face(f).word.iter().position(|l| l.edge == a).unwrap();
    let discs = [(f, 1), (f, -1)];
    let pieces = polygon_pieces(t, &discs, &[((0, k), (1, k))]).expect("fold pieces");
    let loops = Arc::new(boundary_loops(t, &pieces).expect("fold circuits"));
    crate::admsurf::assign_and_build(t.clone(), loops, pieces, true).expect("FOLD is valid")
}

/// Torus cut into `rows × cols` squares `q{i}_{j} = x{i}_{j} y{i}_{j+1} x{i+1}_{j}⁻ y{i}_{j}⁻`.
pub fn grid_torus(rows: usize, cols: usize) -> TwoComplex {
    let mut text = String::new();
    let v = |i: usize, j: usize| format!("v{}_{}", i % rows, j % cols);
    for i in 0..rows {
        for j in 0..cols {
            text += &format!("vertex {}\n", v(i, j));
        }
    }
    for i in 0..rows {
        for j in 0..cols {
            text += &format!("edge x{i}_{j} {} {}\n", v(i, j), v(i, j + 1));
            text += &format!("edge y{i}_{j} {} {}\n", v(i, j), v(i + 1, j));
        }
    }
    for i in 0..rows {
        for j in 0..cols {
            let (i1, j1) = ((i + 1) % rows, (j + 1) % cols);
            text += &format!("face q{i}_{j} = x{i}_{j} y{i}_{j1} x{i1}_{j}- y{i}_{j}-\n");
        }
    }
    complex(&text)
}

fn grid_face(t: &Target, i: usize, j: usize) -> usize {
    t.complex.face_id(&format!("q{i}_{j}")).expect("grid face")
}

fn with_own_boundary(t: &Arc<Target>, discs: &[(usize, i64)], pairs: &[(PolySide, PolySide)]) -> AdmissibleSurface {
    let pieces = polygon_pieces(t, discs, pairs).expect("grid pieces");
    let loops = Arc::new(boundary_loops(t, &pieces).expect("grid circuits"));
    assign_and_build(t.clone(), loops, pieces, true).expect("grid surface is valid")
}

/// The annulus formed by row `row` of a grid torus, bounding its own two boundary words.
pub fn grid_row_annulus(t: &Arc<Target>, cols: usize, row: usize) -> AdmissibleSurface {
    let discs: Vec<(usize, i64)> = (0..cols).map(|j| (grid_face(t, row, j), 1)).collect();
    with_own_boundary(t, &discs, &auto_pairs(t, &discs))
}

/// A row annulus with a reversed copy of square `col` folded onto it along side `side`
/// (`0` or `2`, the horizontal sides).
pub fn grid_fold(t: &Arc<Target>, cols: usize, row: usize, col: usize, side: usize) -> AdmissibleSurface {
    let mut discs: Vec<(usize, i64)> = (0..cols).map(|j| (grid_face(t, row, j), 1)).collect();
    let mut pairs = auto_pairs(t, &discs);
    discs.push((grid_face(t, row, col), -1));
    pairs.push(((col, side), (cols, side)));
    with_own_boundary(t, &discs, &pairs)
}

/// A ring of four squares over a grid torus with two columns: `+q0_0`, `-q0_0`, `-q0_1`,
/// `+q0_1`, folded along both vertical handles.
pub fn grid_double_fold(t: &Arc<Target>) -> AdmissibleSurface {
    let (a, b) = (grid_face(t, 0, 0), grid_face(t, 0, 1));
    let discs = [(a, 1), (a, -1), (b, -1), (b, 1)];
    let pairs = [((0, 1), (3, 3)), ((3, 1), (2, 1)), ((2, 3), (1, 1)), ((1, 3), (0, 3))];
    with_own_boundary(t, &discs, &pairs)
}

/// A row annulus together with the whole grid torus mapped with reversed orientation.
pub fn grid_annulus_and_reversed_torus(t: &Arc<Target>, rows: usize, cols: usize) -> AdmissibleSurface {
    let mut discs: Vec<(usize, i64)> = (0..cols).map(|j| (grid_face(t, 0, j), 1)).collect();
    let torus: Vec<(usize, i64)> = (0..rows).flat_map(|i| (0..cols).map(move |j| (i, j))).map(|(i, j)| (grid_face(t, i, j), -1)).collect();
    let mut pairs = auto_pairs(t, &discs);
    let offset = discs.len();
    pairs.extend(auto_pairs(t, &torus).into_iter().map(|((p, k), (q, l))| ((p + offset, k), (q + offset, l))));
    discs.extend(torus);
    with_own_boundary(t, &discs, &pairs)
}

/// Row `0` annulus together with a sphere made of `±q1_0` glued along all four sides.
pub fn grid_annulus_and_folded_sphere(t: &Arc<Target>, cols: usize) -> AdmissibleSurface {
    let mut discs: Vec<(usize, i64)> = (0..cols).map(|j| (grid_face(t, 0, j), 1)).collect();
    let mut pairs = auto_pairs(t, &discs);
    let f = grid_face(t, 1, 0);
    discs.extend([(f, 1), (f, -1)]);
    pairs.extend((0..4).map(|k| ((cols, k), (cols + 1, k))));
    with_own_boundary(t, &discs, &pairs)
}

/// Declared invariants of a named complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexFixture {
    pub name: &'static str,
    pub complex: TwoComplex,
    pub euler: i64,
    pub surface: bool,
    /// Betti numbers over Q.
    pub betti: [usize; 3],
}

/// A named surface and the complex it maps to.
#[derive(Clone, Debug)]
pub struct SurfaceFixture {
    pub name: &'static str,
    pub target: &'static str,
    pub surface: AdmissibleSurface,
}

/// All fixtures, in a fixed order.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    pub complexes: Vec<ComplexFixture>,
    pub surfaces: Vec<SurfaceFixture>,
}

impl FixtureSet {
    pub fn load() -> Self {
        let c = |name, complex, euler, surface, betti| ComplexFixture { name, complex, euler, surface, betti };
        let complexes = vec![
            c("torus", torus(), 0, true, [1, 2, 1]),
            c("rp2", projective_plane(), 1, true, [1, 0, 0]),
            c("disc", disc(), 1, true, [1, 0, 0]),
            c("sg1b-1", sg1b(1), -1, true, [1, 2, 0]),
            c("sg1b-2", sg1b(2), -3, true, [1, 4, 0]),
            c("sg1b-3", sg1b(3), -5, true, [1, 6, 0]),
            c("closed-s0", closed_surface(0), 2, true, [1, 0, 1]),
            c("closed-s1", closed_surface(1), 0, true, [1, 2, 1]),
            c("closed-s2", closed_surface(2), -2, true, [1, 4, 1]),
            c("closed-s3", closed_s3(), -4, true, [1, 6, 1]),
            c("sg1b-ambient-1", sg1b_ambient(1), -3, true, [1, 4, 0]),
            c("sg1b-ambient-2", sg1b_ambient(2), -5, true, [1, 6, 0]),
            c("fan-disc", fan_disc(), 1, true, [1, 0, 0]),
            c("grid-torus-2x2", grid_torus(2, 2), 0, true, [1, 2, 1]),
        ];
        let by = |name: &str| Arc::new(Target::new(complexes.iter().find(|f| f.name == name).expect("fixture").complex.clone()).expect("target"));
        let (s3, fan, t2, grid) = (by("closed-s3"), by("fan-disc"), by("torus"), by("grid-torus-2x2"));
        let s = |name, target, surface| SurfaceFixture { name, target, surface };
        let surfaces = vec![
            s("t-itself", "closed-s3", t_itself(&s3)),
            s("sigma-genus-1", "closed-s3", sigma_genus_1(&s3)),
            s("t-and-sigma", "closed-s3", t_and_sigma(&s3)),
            s("t-itself-ambient", "sg1b-ambient-2", t_itself(&by("sg1b-ambient-2"))),
            s("identity-sg1b-1", "sg1b-1", identity_surface(&by("sg1b-1"))),
            s("identity-sg1b-2", "sg1b-2", identity_surface(&by("sg1b-2"))),
            s("identity-sg1b-3", "sg1b-3", identity_surface(&by("sg1b-3"))),
            s("figlnk", "fan-disc", figlnk(&fan)),
            s("fold", "torus", fold(&t2)),
            s("grid-fold", "grid-torus-2x2", grid_fold(&grid, 2, 0, 0, 0)),
            s("grid-double-fold", "grid-torus-2x2", grid_double_fold(&grid)),
            s("grid-annulus-reversed-torus", "grid-torus-2x2", grid_annulus_and_reversed_torus(&grid, 2, 2)),
        ];
        FixtureSet { complexes, surfaces }
    }

    pub fn complex(&self, name: &str) -> Option<&TwoComplex> {
        self.complexes.iter().find(|f| f.name == name).map(|f| &f.complex)
    }

    pub fn surface(&self, name: &str) -> Option<&SurfaceFixture> {
        self.surfaces.iter().find(|f| f.name == name)
    }

    /// Names of fixtures whose declared checks fail.
    pub fn self_check(&self) -> Vec<&'static str> {
        let mut bad = Vec::new();
        for f in &self.complexes {
            let h = crate::homlin::homology(&f.complex, crate::homlin::Ring::Q);
            let ok = f.complex.euler_characteristic() == f.euler
                && f.complex.surface_check().is_surface == f.surface
                && h.betti_numbers() == f.betti;
            if !ok {
                bad.push(f.name);
            }
        }
        for f in &self.surfaces {
            let round = crate::admsurf::parse_adm(f.surface.target().clone(), &crate::admsurf::print_adm(&f.surface));
            if round.as_ref().map(|s| s != &f.surface).unwrap_or(true) {
                bad.push(f.name);
            }
        }
        bad
    }
}
