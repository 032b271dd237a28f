use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::{
    cyclically_equal, glued_side, runs_forward, side_next_to_corner, word_index, AdmError, AdmissibleSurface,
    Assignment, End, FPiece, FreeArc, HPiece, NamedLoop, Pieces, Side, Slot, Target, VPiece,
};
use crate::cellcx::Letter;

/// A side of a polygon: `(disc index, word index)`.
pub type PolySide = (usize, usize);

/// Builds the surface obtained from cellular discs by gluing the listed pairs of sides.
///
/// Each pair becomes a handle with both sides glued, every other side a handle with one
/// free side. Vertex discs are read off from the links of the glued polygons. Boundary
/// circuits are assigned to circles by matching words.
pub fn from_polygons(
    target: Arc<Target>,
    loops: Arc<Vec<NamedLoop>>,
    discs: &[(usize, i64)],
    pairs: &[(PolySide, PolySide)],
    incompressible: bool,
) -> Result<AdmissibleSurface, AdmError> {
    let pieces = polygon_pieces(&target, discs, pairs)?;
    assign_and_build(target, loops, pieces, incompressible)
}

/// Pairs every Left-glued side over an edge with a Right-glued side over the same edge, in order.
pub fn auto_pairs(target: &Target, discs: &[(usize, i64)]) -> Vec<(PolySide, PolySide)> {
    let x = &target.complex;
    let mut left: BTreeMap<usize, Vec<PolySide>> = BTreeMap::new();
    let mut right: BTreeMap<usize, Vec<PolySide>> = BTreeMap::new();
    for (i, &(f, sign)) in discs.iter().enumerate() {
        for (k, &l) in x.face(f).word.iter().enumerate() {
            match glued_side(sign, l) {
                Side::Left => left.entry(l.edge).or_default().push((i, k)),
                Side::Right => right.entry(l.edge).or_default().push((i, k)),
            }
        }
    }
    let mut out = Vec::new();
    for (e, ls) in left {
        if let Some(rs) = right.get(&e) {
            out.extend(ls.into_iter().zip(rs.iter().copied()));
        }
    }
    out
}

pub(crate) fn polygon_pieces(target: &Target, discs: &[(usize, i64)], pairs: &[(PolySide, PolySide)]) -> Result<Pieces, AdmError> {
    let x = &target.complex;
    let mut handle_of: BTreeMap<PolySide, usize> = BTreeMap::new();
    let mut hpieces = Vec::new();
    let mut sides: Vec<[Option<PolySide>; 2]> = Vec::new();
    for (i, &(f, sign)) in discs.iter().enumerate() {
        if f >= x.num_faces() || (sign != 1 && sign != -1) {
            return Err(AdmError::UnknownName(format!("disc {i} over face #{f} with sign {sign}")));
        }
    }
    let letter = |(i, k): PolySide| -> Result<Letter, AdmError> {
        let (f, _) = *discs.get(i).ok_or_else(|| AdmError::UnknownName(format!("disc {i}")))?;
        x.face(f).word.get(k).copied().ok_or_else(|| AdmError::UnknownName(format!("side {k} of disc {i}")))
    };
    for &(a, b) in pairs {
        let (la, lb) = (letter(a)?, letter(b)?);
        if la.edge != lb.edge {
            return Err(AdmError::WrongEdge(format!("paired sides {a:?} and {b:?} lie over different edges")));
        }
        let (sa, sb) = (glued_side(discs[a.0].1, la), glued_side(discs[b.0].1, lb));
        if sa == sb {
            return Err(AdmError::OrientationInconsistent(format!("paired sides {a:?} and {b:?} glue to the same side")));
        }
        if handle_of.contains_key(&a) || handle_of.contains_key(&b) {
            return Err(AdmError::NonInvolutive(format!("side {a:?} or {b:?} is paired twice")));
        }
        let h = hpieces.len();
        hpieces.push(HPiece { name: format!("h{h}"), edge: la.edge });
        let mut s = [None, None];
        s[sa.index()] = Some(a);
        s[sb.index()] = Some(b);
        sides.push(s);
        handle_of.insert(a, h);
        handle_of.insert(b, h);
    }
    for (i, &(f, sign)) in discs.iter().enumerate() {
        for (k, &l) in x.face(f).word.iter().enumerate() {
            if handle_of.contains_key(&(i, k)) {
                continue;
            }
            let h = hpieces.len();
            hpieces.push(HPiece { name: format!("h{h}"), edge: l.edge });
            let mut s = [None, None];
            s[glued_side(sign, l).index()] = Some((i, k));
            sides.push(s);
            handle_of.insert((i, k), h);
        }
    }
    let fpieces: Vec<FPiece> = discs
        .iter()
        .enumerate()
        .map(|(i, &(f, sign))| FPiece {
            name: format!("F{i}"),
            face: f,
            sign,
            sides: (0..x.face(f).word.len()).map(|k| handle_of[&(i, k)]).collect(),
        })
        .collect();

    // Successor of a handle end in counterclockwise order around its vertex disc,
    // when the corner after it is filled by a cellular disc.
    let glued_next = |h: usize, e: End| -> Option<(usize, End)> {
        let (i, k) = sides[h][side_next_to_corner(e, true).index()]?;
        let fp = &fpieces[i];
        let word = &x.face(fp.face).word;
        let d = word.len();
        let p = (0..d).find(|&p| word_index(fp, d, p) == k).expect("position");
        // h departs from this corner, so the arrival handle sits at the previous position.
        let ka = word_index(fp, d, p + d - 1);
        let a_end = if runs_forward(fp.sign, word[ka]) { End::Dst } else { End::Src };
        Some((fp.sides[ka], a_end))
    };
    let mut prev: BTreeMap<(usize, End), (usize, End)> = BTreeMap::new();
    for h in 0..hpieces.len() {
        for e in [End::Src, End::Dst] {
            if let Some(n) = glued_next(h, e) {
                prev.insert(n, (h, e));
            }
        }
    }
    let next = |h: usize, e: End| -> (usize, End) {
        if let Some(n) = glued_next(h, e) {
            return n;
        }
        let mut cur = (h, e);
        while let Some(&p) = prev.get(&cur) {
            cur = p;
            if cur == (h, e) {
                break;
            }
        }
        cur
    };
    let mut seen = BTreeSet::new();
    let mut vpieces = Vec::new();
    for h in 0..hpieces.len() {
        for e in [End::Src, End::Dst] {
            if seen.contains(&(h, e)) {
                continue;
            }
            let mut slots = Vec::new();
            let mut cur = (h, e);
            while seen.insert(cur) {
                slots.push(Slot::End(cur.0, cur.1));
                cur = next(cur.0, cur.1);
            }
            let edge = x.edge(hpieces[h].edge);
            let vertex = if e == End::Src { edge.src } else { edge.dst };
            let n = vpieces.len();
            vpieces.push(VPiece { name: format!("D{n}"), vertex, slots });
        }
    }
    Ok(Pieces { vpieces, hpieces, fpieces, assignments: Vec::new(), incompressible: false })
}

/// Validates `pieces` after assigning every nonempty boundary circuit to the circle whose
/// word it repeats, trying degrees of both signs.
pub fn assign_and_build(
    target: Arc<Target>,
    loops: Arc<Vec<NamedLoop>>,
    mut pieces: Pieces,
    incompressible: bool,
) -> Result<AdmissibleSurface, AdmError> {
    pieces.assignments.clear();
    pieces.incompressible = incompressible;
    // Validate structure first with a temporary loop-free surface to read off circuits.
    let circuits = circuit_words(&target, &pieces)?;
    for (arc, word) in circuits {
        if word.is_empty() {
            continue;
        }
        let mut found = None;
        'search: for (i, l) in loops.iter().enumerate() {
            let len = l.edge_loop.unrolled().len();
            if len == 0 || word.len() % len != 0 {
                continue;
            }
            let k = (word.len() / len) as i64;
            for d in [k, -k] {
                let probe = AdmissibleSurface::expected_word_of(&l.edge_loop, d);
                if cyclically_equal(&word, &probe) {
                    found = Some((i, d));
                    break 'search;
                }
            }
        }
        let (circle, degree) = found.ok_or_else(|| {
            AdmError::BoundaryMismatch(format!("boundary word `{}` matches no circle", target.complex.format_word(&word)))
        })?;
        pieces.assignments.push(Assignment { arc, circle, degree, homotopy: BTreeMap::new() });
    }
    AdmissibleSurface::new(target, loops, pieces)
}

/// One loop per nonempty boundary circuit, named `w0, w1, ...`, each read with degree 1.
pub fn boundary_loops(target: &Arc<Target>, pieces: &Pieces) -> Result<Vec<NamedLoop>, AdmError> {
    Ok(circuit_words(target, pieces)?
        .into_iter()
        .filter(|(_, w)| !w.is_empty())
        .enumerate()
        .map(|(i, (_, w))| NamedLoop { name: format!("w{i}"), edge_loop: crate::homlin::EdgeLoop::new(w, 1) })
        .collect())
}

fn circuit_words(target: &Arc<Target>, pieces: &Pieces) -> Result<Vec<(FreeArc, Vec<Letter>)>, AdmError> {
    let mut bare = pieces.clone();
    bare.assignments.clear();
    let s = AdmissibleSurface::new_unassigned(target.clone(), bare)?;
    Ok(s.circuits().iter().map(|c| (c.arcs[0], c.word.clone())).collect())
}
