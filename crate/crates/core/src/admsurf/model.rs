use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{AdmError, Target};
use crate::cellcx::{ComplexBuilder, Letter, TwoComplex, UnionFind};
use crate::homlin::{boundary_matrices, EdgeLoop, Ring};

/// End of a 1-handle: `Src` lies over the source of its edge, `Dst` over the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Src,
    Dst,
}

impl End {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn other(self) -> End {
        match self {
            End::Src => End::Dst,
            End::Dst => End::Src,
        }
    }
}

/// Long side of a 1-handle, seen while travelling from its `Src` end to its `Dst` end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One position on the boundary of a vertex disc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    End(usize, End),
    Free,
}

/// Vertex disc: slots listed counterclockwise; between consecutive slots lies a corner.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VPiece {
    pub name: String,
    pub vertex: usize,
    pub slots: Vec<Slot>,
}

/// 1-handle over an edge of the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPiece {
    pub name: String,
    pub edge: usize,
}

/// Cellular disc; `sides[k]` is the handle glued along position `k` of the face word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FPiece {
    pub name: String,
    pub face: usize,
    pub sign: i64,
    pub sides: Vec<usize>,
}

/// A free arc on the boundary of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeArc {
    Side(usize, Side),
    Slot(usize, usize),
    /// The corner of a vertex disc following the given slot.
    Corner(usize, usize),
    /// The whole boundary of a vertex disc without slots.
    Loop(usize),
}

/// One term of the chain: a closed edge path of the target with a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NamedLoop {
    pub name: String,
    pub edge_loop: EdgeLoop,
}

/// Maps the boundary circuit through `arc` onto circle `circle` with local degree `degree`.
/// `homotopy` is a 2-chain `b` with `[circuit] - degree·[circle] = ∂b`; empty means the words agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Assignment {
    pub arc: FreeArc,
    pub circle: usize,
    pub degree: i64,
    pub homotopy: BTreeMap<usize, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub arcs: Vec<FreeArc>,
    pub word: Vec<Letter>,
    /// Index into the assignments, if the circuit is assigned.
    pub assignment: Option<usize>,
}

/// Raw pieces of a surface, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pieces {
    pub vpieces: Vec<VPiece>,
    pub hpieces: Vec<HPiece>,
    pub fpieces: Vec<FPiece>,
    pub assignments: Vec<Assignment>,
    pub incompressible: bool,
}

/// A validated transverse admissible surface.
#[derive(Clone, Debug)]
pub struct AdmissibleSurface {
    target: Arc<Target>,
    loops: Arc<Vec<NamedLoop>>,
    pieces: Pieces,
    ends: Vec<[(usize, usize); 2]>,
    sides: Vec<[Option<(usize, usize)>; 2]>,
    corner_owner: BTreeMap<(usize, usize), (usize, usize)>,
    circuits: Vec<Circuit>,
}

impl PartialEq for AdmissibleSurface {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.loops == other.loops && self.pieces == other.pieces
    }
}

/// Position `p` counterclockwise around `f` corresponds to this word index.
pub(crate) fn word_index(f: &FPiece, degree: usize, p: usize) -> usize {
    if f.sign > 0 {
        p % degree
    } else {
        degree - 1 - (p % degree)
    }
}

/// Whether the cellular disc runs along the letter at word index `k` from its `Src` to its `Dst` end.
pub(crate) fn runs_forward(sign: i64, letter: Letter) -> bool {
    (sign > 0) != letter.inverse
}

pub(crate) fn glued_side(sign: i64, letter: Letter) -> Side {
    if runs_forward(sign, letter) {
        Side::Left
    } else {
        Side::Right
    }
}

/// The side of the handle at `end` adjacent to the corner after (`after = true`) or before its slot.
pub(crate) fn side_next_to_corner(end: End, after: bool) -> Side {
    match (end, after) {
        (End::Dst, true) | (End::Src, false) => Side::Right,
        (End::Dst, false) | (End::Src, true) => Side::Left,
    }
}

impl AdmissibleSurface {
    pub fn new(target: Arc<Target>, loops: Arc<Vec<NamedLoop>>, pieces: Pieces) -> Result<Self, AdmError> {
        Self::build(target, loops, pieces, true)
    }

    /// Structural validation only; boundary circuits are left unassigned.
    pub(crate) fn new_unassigned(target: Arc<Target>, pieces: Pieces) -> Result<Self, AdmError> {
        Self::build(target, Arc::new(Vec::new()), pieces, false)
    }

    fn build(target: Arc<Target>, loops: Arc<Vec<NamedLoop>>, pieces: Pieces, assigned: bool) -> Result<Self, AdmError> {
        let x = &target.complex;
        for (i, l) in loops.iter().enumerate() {
            if l.edge_loop.word.is_empty() || l.edge_loop.mult == 0 || !x.is_closed_path(&l.edge_loop.word) {
                return Err(AdmError::BadLoop(i));
            }
        }
        let nh = pieces.hpieces.len();
        for h in &pieces.hpieces {
            if h.edge >= x.num_edges() {
                return Err(AdmError::UnknownName(format!("edge #{} of handle {}", h.edge, h.name)));
            }
        }
        let mut ends: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; nh];
        for (d, vp) in pieces.vpieces.iter().enumerate() {
            if vp.vertex >= x.num_vertices() {
                return Err(AdmError::UnknownName(format!("vertex #{} of vertex disc {}", vp.vertex, vp.name)));
            }
            for (i, slot) in vp.slots.iter().enumerate() {
                let Slot::End(h, end) = *slot else { continue };
                if h >= nh {
                    return Err(AdmError::UnknownName(format!("handle #{h} in vertex disc {}", vp.name)));
                }
                if ends[h][end.index()].replace((d, i)).is_some() {
                    return Err(AdmError::NonInvolutive(format!(
                        "end {:?} of handle {} appears in two slots",
                        end, pieces.hpieces[h].name
                    )));
                }
                let e = x.edge(pieces.hpieces[h].edge);
                let want = if end == End::Src { e.src } else { e.dst };
                if want != vp.vertex {
                    return Err(AdmError::VertexMismatch(format!(
                        "handle {} end {:?} sits in vertex disc {} over the wrong vertex",
                        pieces.hpieces[h].name, end, vp.name
                    )));
                }
            }
        }
        let ends: Vec<[(usize, usize); 2]> = ends
            .into_iter()
            .enumerate()
            .map(|(h, [a, b])| match (a, b) {
                (Some(a), Some(b)) => Ok([a, b]),
                _ => Err(AdmError::NonInvolutive(format!("handle {} has an unattached end", pieces.hpieces[h].name))),
            })
            .collect::<Result<_, _>>()?;

        let mut sides: Vec<[Option<(usize, usize)>; 2]> = vec![[None, None]; nh];
        for (fi, f) in pieces.fpieces.iter().enumerate() {
            if f.face >= x.num_faces() {
                return Err(AdmError::UnknownName(format!("face #{} of cellular disc {}", f.face, f.name)));
            }
            if f.sign != 1 && f.sign != -1 {
                return Err(AdmError::OrientationInconsistent(format!("cellular disc {} has sign {}", f.name, f.sign)));
            }
            let word = &x.face(f.face).word;
            if f.sides.len() != word.len() {
                return Err(AdmError::WrongEdge(format!(
                    "cellular disc {} lists {} sides for a face of degree {}",
                    f.name,
                    f.sides.len(),
                    word.len()
                )));
            }
            for (k, &h) in f.sides.iter().enumerate() {
                if h >= nh {
                    return Err(AdmError::UnknownName(format!("handle #{h} in cellular disc {}", f.name)));
                }
                if pieces.hpieces[h].edge != word[k].edge {
                    return Err(AdmError::WrongEdge(format!(
                        "side {k} of cellular disc {} is glued to handle {} over the wrong edge",
                        f.name, pieces.hpieces[h].name
                    )));
                }
                let side = glued_side(f.sign, word[k]);
                if sides[h][side.index()].replace((fi, k)).is_some() {
                    return Err(AdmError::NonInvolutive(format!(
                        "side {:?} of handle {} is glued twice",
                        side, pieces.hpieces[h].name
                    )));
                }
            }
        }

        let mut corner_owner = BTreeMap::new();
        for (fi, f) in pieces.fpieces.iter().enumerate() {
            let word = &x.face(f.face).word;
            let d = word.len();
            for p in 0..d {
                let ka = word_index(f, d, p);
                let kb = word_index(f, d, p + 1);
                let (ha, hb) = (f.sides[ka], f.sides[kb]);
                let a_end = if runs_forward(f.sign, word[ka]) { End::Dst } else { End::Src };
                let b_end = if runs_forward(f.sign, word[kb]) { End::Src } else { End::Dst };
                let (da, ia) = ends[ha][a_end.index()];
                let (db, ib) = ends[hb][b_end.index()];
                let m = pieces.vpieces[db].slots.len();
                if da != db || ia != (ib + 1) % m {
                    return Err(AdmError::CornerMismatch(format!(
                        "corner {p} of cellular disc {}: handles {} and {} are not consecutive in one vertex disc",
                        f.name, pieces.hpieces[hb].name, pieces.hpieces[ha].name
                    )));
                }
                if corner_owner.insert((db, ib), (fi, p)).is_some() {
                    return Err(AdmError::CornerMismatch(format!("corner after slot {ib} of {} used twice", pieces.vpieces[db].name)));
                }
            }
        }
        // Every glued side next to a corner must belong to the cellular disc owning that corner.
        for (d, vp) in pieces.vpieces.iter().enumerate() {
            let m = vp.slots.len();
            for i in 0..m {
                let after = match vp.slots[i] {
                    Slot::End(h, e) => sides[h][side_next_to_corner(e, true).index()],
                    Slot::Free => None,
                };
                let before = match vp.slots[(i + 1) % m] {
                    Slot::End(h, e) => sides[h][side_next_to_corner(e, false).index()],
                    Slot::Free => None,
                };
                let owner = corner_owner.get(&(d, i)).map(|&(f, _)| f);
                if after.map(|s| s.0) != owner || before.map(|s| s.0) != owner {
                    return Err(AdmError::CornerMismatch(format!(
                        "corner after slot {i} of vertex disc {} is half glued",
                        vp.name
                    )));
                }
            }
        }

        let mut surface = AdmissibleSurface { target, loops, pieces, ends, sides, corner_owner, circuits: Vec::new() };
        surface.circuits = surface.trace_circuits();
        if assigned {
            surface.check_assignments()?;
        }
        surface.check_assembly()?;
        Ok(surface)
    }

    pub fn target(&self) -> &Arc<Target> {
        &self.target
    }

    pub fn complex(&self) -> &TwoComplex {
        &self.target.complex
    }

    pub fn loops(&self) -> &Arc<Vec<NamedLoop>> {
        &self.loops
    }

    pub fn pieces(&self) -> &Pieces {
        &self.pieces
    }

    pub fn into_pieces(self) -> Pieces {
        self.pieces
    }

    pub fn vpieces(&self) -> &[VPiece] {
        &self.pieces.vpieces
    }

    pub fn hpieces(&self) -> &[HPiece] {
        &self.pieces.hpieces
    }

    pub fn fpieces(&self) -> &[FPiece] {
        &self.pieces.fpieces
    }

    pub fn assignments(&self) -> &[Assignment] {
        &self.pieces.assignments
    }

    pub fn incompressible(&self) -> bool {
        self.pieces.incompressible
    }

    /// `(vertex disc, slot)` holding the given end of handle `h`.
    pub fn handle_end(&self, h: usize, end: End) -> (usize, usize) {
        self.ends[h][end.index()]
    }

    /// `(cellular disc, word position)` glued along the given side of handle `h`.
    pub fn handle_side(&self, h: usize, side: Side) -> Option<(usize, usize)> {
        self.sides[h][side.index()]
    }

    /// `(cellular disc, ccw position)` whose corner fills the corner after slot `i` of `d`.
    pub fn corner_owner(&self, d: usize, i: usize) -> Option<(usize, usize)> {
        self.corner_owner.get(&(d, i)).copied()
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    /// Orientation type of a cellular disc relative to the target's orientation.
    pub fn orientation_type(&self, f: usize) -> i64 {
        let fp = &self.pieces.fpieces[f];
        fp.sign * self.target.orientation[fp.face]
    }

    pub fn free_arcs(&self) -> Vec<FreeArc> {
        let mut out = Vec::new();
        for (h, s) in self.sides.iter().enumerate() {
            for side in [Side::Left, Side::Right] {
                if s[side.index()].is_none() {
                    out.push(FreeArc::Side(h, side));
                }
            }
        }
        for (d, vp) in self.pieces.vpieces.iter().enumerate() {
            if vp.slots.is_empty() {
                out.push(FreeArc::Loop(d));
            }
            for (i, slot) in vp.slots.iter().enumerate() {
                if *slot == Slot::Free {
                    out.push(FreeArc::Slot(d, i));
                }
                if !self.corner_owner.contains_key(&(d, i)) {
                    out.push(FreeArc::Corner(d, i));
                }
            }
        }
        out.sort();
        out
    }

    /// The free arc following `a` along the boundary (surface on the left).
    pub fn next_free_arc(&self, a: FreeArc) -> FreeArc {
        match a {
            FreeArc::Side(h, Side::Right) => {
                let (d, i) = self.ends[h][End::Dst.index()];
                FreeArc::Corner(d, i)
            }
            FreeArc::Side(h, Side::Left) => {
                let (d, i) = self.ends[h][End::Src.index()];
                FreeArc::Corner(d, i)
            }
            FreeArc::Slot(d, i) => FreeArc::Corner(d, i),
            FreeArc::Corner(d, i) => {
                let m = self.pieces.vpieces[d].slots.len();
                let j = (i + 1) % m;
                match self.pieces.vpieces[d].slots[j] {
                    Slot::Free => FreeArc::Slot(d, j),
                    Slot::End(h, e) => FreeArc::Side(h, side_next_to_corner(e, false)),
                }
            }
            FreeArc::Loop(d) => FreeArc::Loop(d),
        }
    }

    pub fn arc_letter(&self, a: FreeArc) -> Option<Letter> {
        match a {
            FreeArc::Side(h, Side::Right) => Some(Letter::pos(self.pieces.hpieces[h].edge)),
            FreeArc::Side(h, Side::Left) => Some(Letter::neg(self.pieces.hpieces[h].edge)),
            _ => None,
        }
    }

    fn trace_circuits(&self) -> Vec<Circuit> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.free_arcs() {
            if seen.contains(&start) {
                continue;
            }
            let mut arcs = Vec::new();
            let mut a = start;
            loop {
                seen.insert(a);
                arcs.push(a);
                a = self.next_free_arc(a);
                if a == start {
                    break;
                }
            }
            let word = arcs.iter().filter_map(|&a| self.arc_letter(a)).collect();
            out.push(Circuit { arcs, word, assignment: None });
        }
        out
    }

    pub fn circuit_of(&self, a: FreeArc) -> Option<usize> {
        self.circuits.iter().position(|c| c.arcs.contains(&a))
    }

    /// Expected word of a boundary circuit winding `degree` times around circle `i`.
    pub fn expected_word(&self, circle: usize, degree: i64) -> Vec<Letter> {
        Self::expected_word_of(&self.loops[circle].edge_loop, degree)
    }

    pub(crate) fn expected_word_of(l: &EdgeLoop, degree: i64) -> Vec<Letter> {
        let base = l.unrolled();
        let once: Vec<Letter> = if degree < 0 { base.iter().rev().map(|l| l.inv()).collect() } else { base };
        once.iter().copied().cycle().take(once.len() * degree.unsigned_abs() as usize).collect()
    }

    fn check_assignments(&mut self) -> Result<(), AdmError> {
        let x = &self.target.complex;
        for (ai, a) in self.pieces.assignments.iter().enumerate() {
            if a.circle >= self.loops.len() {
                return Err(AdmError::BoundaryMismatch(format!("assignment {ai} names circle {}", a.circle)));
            }
            if a.degree == 0 {
                return Err(AdmError::BoundaryMismatch(format!("assignment {ai} has degree 0")));
            }
            let c = self.circuits.iter().position(|c| c.arcs.contains(&a.arc)).ok_or_else(|| {
                AdmError::BoundaryMismatch(format!("assignment {ai} does not name a free arc"))
            })?;
            if self.circuits[c].assignment.replace(ai).is_some() {
                return Err(AdmError::BoundaryMismatch(format!("boundary circuit {c} is assigned twice")));
            }
            let word = &self.circuits[c].word;
            if a.homotopy.is_empty() {
                let want = self.expected_word(a.circle, a.degree);
                if !cyclically_equal(word, &want) {
                    return Err(AdmError::BoundaryMismatch(format!(
                        "boundary circuit {c} reads `{}` but circle {} with degree {} reads `{}`",
                        x.format_word(word),
                        self.loops[a.circle].name,
                        a.degree,
                        x.format_word(&want)
                    )));
                }
            } else {
                let (d2, _) = boundary_matrices(x, Ring::Z);
                let mut b = vec![BigInt::zero(); x.num_faces()];
                for (&f, &k) in &a.homotopy {
                    if f >= x.num_faces() {
                        return Err(AdmError::UnknownName(format!("face #{f} in homotopy certificate")));
                    }
                    b[f] += k;
                }
                let db = d2.mul_vec(&b);
                let mut lhs = vec![BigInt::zero(); x.num_edges()];
                for l in word {
                    lhs[l.edge] += l.sign();
                }
                let circle = self.loops[a.circle].edge_loop.abelianized(x.num_edges());
                for e in 0..x.num_edges() {
                    lhs[e] -= &circle[e] * a.degree;
                }
                if lhs != db {
                    return Err(AdmError::BoundaryMismatch(format!(
                        "homotopy certificate of circuit {c} does not bound the difference of words"
                    )));
                }
            }
        }
        for (c, circ) in self.circuits.iter().enumerate() {
            if circ.assignment.is_none() && !circ.word.is_empty() {
                return Err(AdmError::BoundaryMismatch(format!(
                    "boundary circuit {c} (`{}`) is not assigned to a circle",
                    x.format_word(&circ.word)
                )));
            }
        }
        Ok(())
    }

    /// The surface as a 2-complex with one face per piece, plus the face ranges
    /// `(vertex discs, handles, cellular discs)`.
    pub fn assemble(&self) -> TwoComplex {
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
        enum Key {
            HandleEnd(usize, End),
            HandleSide(usize, Side),
            Corner(usize, usize),
            FreeSlot(usize, usize),
            Loop(usize),
        }
        let x = &self.target.complex;
        let mut polys: Vec<(String, Vec<Key>)> = Vec::new();
        for (d, vp) in self.pieces.vpieces.iter().enumerate() {
            let mut keys = Vec::new();
            if vp.slots.is_empty() {
                keys.push(Key::Loop(d));
            }
            for (i, s) in vp.slots.iter().enumerate() {
                keys.push(match *s {
                    Slot::End(h, e) => Key::HandleEnd(h, e),
                    Slot::Free => Key::FreeSlot(d, i),
                });
                keys.push(Key::Corner(d, i));
            }
            polys.push((vp.name.clone(), keys));
        }
        for (h, hp) in self.pieces.hpieces.iter().enumerate() {
            let keys = vec![
                Key::HandleSide(h, Side::Right),
                Key::HandleEnd(h, End::Dst),
                Key::HandleSide(h, Side::Left),
                Key::HandleEnd(h, End::Src),
            ];
            polys.push((hp.name.clone(), keys));
        }
        for f in &self.pieces.fpieces {
            let word = &x.face(f.face).word;
            let d = word.len();
            let mut keys = Vec::new();
            for p in 0..d {
                let k = word_index(f, d, p);
                keys.push(Key::HandleSide(f.sides[k], glued_side(f.sign, word[k])));
                let kb = word_index(f, d, p + 1);
                let b_end = if runs_forward(f.sign, word[kb]) { End::Src } else { End::Dst };
                let (db, ib) = self.ends[f.sides[kb]][b_end.index()];
                keys.push(Key::Corner(db, ib));
            }
            polys.push((f.name.clone(), keys));
        }
        // Corner points: polygon vertex j starts arc j.
        let offsets: Vec<usize> = polys
            .iter()
            .scan(0, |acc, (_, k)| {
                let o = *acc;
                *acc += k.len();
                Some(o)
            })
            .collect();
        let total: usize = polys.iter().map(|(_, k)| k.len()).sum();
        let mut uf = UnionFind::new(total);
        let mut first: BTreeMap<Key, (usize, usize)> = BTreeMap::new();
        for (pi, (_, keys)) in polys.iter().enumerate() {
            let n = keys.len();
            for (j, key) in keys.iter().enumerate() {
                match first.get(key) {
                    None => {
                        first.insert(*key, (pi, j));
                    }
                    Some(&(qi, k)) => {
                        let nq = polys[qi].1.len();
                        uf.union(offsets[pi] + j, offsets[qi] + (k + 1) % nq);
                        uf.union(offsets[pi] + (j + 1) % n, offsets[qi] + k);
                    }
                }
            }
        }
        let labels = uf.labels();
        let mut b = ComplexBuilder::new();
        let nv = labels.iter().copied().max().map_or(0, |m| m + 1);
        for v in 0..nv {
            b.vertex(format!("p{v}"));
        }
        let mut edge_of: BTreeMap<Key, usize> = BTreeMap::new();
        for (key, &(pi, j)) in &first {
            let n = polys[pi].1.len();
            let e = b.edge(format!("{key:?}"), labels[offsets[pi] + j], labels[offsets[pi] + (j + 1) % n]);
            edge_of.insert(*key, e);
        }
        for (pi, (name, keys)) in polys.iter().enumerate() {
            let word = keys
                .iter()
                .enumerate()
                .map(|(j, key)| {
                    let e = edge_of[key];
                    Letter { edge: e, inverse: first[key] != (pi, j) }
                })
                .collect();
            b.face(name.clone(), word);
        }
        b.build().expect("assembled piece complex is a valid 2-complex")
    }

    fn check_assembly(&self) -> Result<(), AdmError> {
        let sigma = self.assemble();
        let report = sigma.surface_check();
        if !report.is_surface {
            return Err(AdmError::AssemblyFailed(format!(
                "pieces do not glue to a surface at {:?}",
                report.non_surface_vertices
            )));
        }
        let (d2, _) = boundary_matrices(&sigma, Ring::Z);
        let ones = vec![BigInt::from(1); sigma.num_faces()];
        let boundary = sigma.boundary_subcomplex();
        let ok = d2.mul_vec(&ones).iter().enumerate().all(|(e, v)| v.is_zero() || boundary.cells.edges.contains(&e));
        if !ok {
            return Err(AdmError::OrientationInconsistent("piece orientations do not glue to an oriented surface".into()));
        }
        if sigma.euler_characteristic() != self.euler_characteristic() {
            return Err(AdmError::AssemblyFailed("Euler characteristic of the pieces disagrees with the assembly".into()));
        }
        Ok(())
    }

    /// Disjoint union over the same target and chain; pieces of `other` are renamed with a `'` suffix.
    pub fn disjoint_union(&self, other: &AdmissibleSurface) -> Result<AdmissibleSurface, AdmError> {
        if self.target != other.target || self.loops != other.loops {
            return Err(AdmError::MoveNotApplicable("disjoint union needs a common target and chain".into()));
        }
        let mut p = self.pieces.clone();
        let (nv, nh) = (p.vpieces.len(), p.hpieces.len());
        let shift_arc = |a: FreeArc| match a {
            FreeArc::Side(h, s) => FreeArc::Side(h + nh, s),
            FreeArc::Slot(d, i) => FreeArc::Slot(d + nv, i),
            FreeArc::Corner(d, i) => FreeArc::Corner(d + nv, i),
            FreeArc::Loop(d) => FreeArc::Loop(d + nv),
        };
        let q = &other.pieces;
        p.vpieces.extend(q.vpieces.iter().map(|v| VPiece {
            name: format!("{}'", v.name),
            vertex: v.vertex,
            slots: v
                .slots
                .iter()
                .map(|s| match *s {
                    Slot::End(h, e) => Slot::End(h + nh, e),
                    Slot::Free => Slot::Free,
                })
                .collect(),
        }));
        p.hpieces.extend(q.hpieces.iter().map(|h| HPiece { name: format!("{}'", h.name), edge: h.edge }));
        p.fpieces.extend(q.fpieces.iter().map(|f| FPiece {
            name: format!("{}'", f.name),
            face: f.face,
            sign: f.sign,
            sides: f.sides.iter().map(|h| h + nh).collect(),
        }));
        p.assignments.extend(q.assignments.iter().map(|a| Assignment { arc: shift_arc(a.arc), ..a.clone() }));
        p.incompressible = self.pieces.incompressible && q.incompressible;
        AdmissibleSurface::new(self.target.clone(), self.loops.clone(), p)
    }

    /// `#vertex discs - #handles + #cellular discs`.
    pub fn euler_characteristic(&self) -> i64 {
        self.pieces.vpieces.len() as i64 - self.pieces.hpieces.len() as i64 + self.pieces.fpieces.len() as i64
    }
}

pub(crate) fn cyclically_equal(a: &[Letter], b: &[Letter]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|r| (0..a.len()).all(|i| a[(i + r) % a.len()] == b[i]))
}
