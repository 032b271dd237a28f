use std::collections::{BTreeMap, BTreeSet};

use super::{rebuild, NormError};
use crate::admsurf::{word_index, AdmissibleSurface, End, FreeArc, HPiece, Side, Slot, VPiece};
use crate::cellcx::UnionFind;

fn class_of(class_ids: &mut BTreeMap<usize, usize>, uf: &mut UnionFind, h: usize) -> usize {
    let r = uf.find(h);
    let next = class_ids.len();
    *class_ids.entry(r).or_insert(next)
}

/// Removes the cellular discs `f1`, `f2` (same face, opposite signs) and glues the two
/// holes along matching sides: handles at equal word positions merge, vertex discs are
/// spliced at matching corners, and handles glued to both discs at one position vanish.
pub(crate) fn zip(s: &AdmissibleSurface, f1: usize, f2: usize) -> Result<AdmissibleSurface, NormError> {
    let x = s.complex();
    let fps = s.fpieces();
    let (a, b) = (&fps[f1], &fps[f2]);
    if f1 == f2 || a.face != b.face || a.sign == b.sign {
        return Err(NormError::NotApplicable(format!(
            "{} and {} are not opposite discs over one face",
            a.name, b.name
        )));
    }
    let d = x.face(a.face).word.len();
    let nh = s.hpieces().len();
    let mut uf = UnionFind::new(nh);
    for k in 0..d {
        uf.union(a.sides[k], b.sides[k]);
    }
    // Sides consumed by the two discs.
    let mut consumed: BTreeSet<(usize, Side)> = BTreeSet::new();
    for h in 0..nh {
        for side in [Side::Left, Side::Right] {
            if let Some((f, _)) = s.handle_side(h, side) {
                if f == f1 || f == f2 {
                    consumed.insert((h, side));
                }
            }
        }
    }
    let deleted = |dv: usize, i: usize| -> Option<(usize, usize)> {
        s.corner_owner(dv, i).filter(|(f, _)| *f == f1 || *f == f2)
    };
    let degenerate = |what: &str| NormError::Degenerate(format!("zip of {} and {}: {what}", a.name, b.name));

    // Follows merged slots across deleted corners; returns the visited slots and the last one.
    let chain = |start: (usize, usize)| -> Result<Vec<(usize, usize)>, NormError> {
        let mut out = vec![start];
        let mut cur = start;
        while let Some((f, p)) = deleted(cur.0, cur.1) {
            let Slot::End(h, e) = s.vpieces()[cur.0].slots[cur.1] else {
                return Err(degenerate("free slot next to a disc corner"));
            };
            let fp = &fps[f];
            let kb = word_index(fp, d, p + 1);
            debug_assert_eq!(fp.sides[kb], h);
            let other = if f == f1 { b } else { a };
            let partner = s.handle_end(other.sides[kb], e);
            if out.contains(&partner) {
                return Err(degenerate("a vertex disc closes up on itself"));
            }
            out.push(partner);
            cur = partner;
        }
        Ok(out)
    };

    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut vpieces: Vec<VPiece> = Vec::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut arc_map: BTreeMap<FreeArc, FreeArc> = BTreeMap::new();
    let mut class_ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut end_emitted: BTreeMap<(usize, End), usize> = BTreeMap::new();
    for (dv, vp) in s.vpieces().iter().enumerate() {
        if vp.slots.is_empty() {
            let nd = vpieces.len();
            arc_map.insert(FreeArc::Loop(dv), FreeArc::Loop(nd));
            names.insert(vp.name.clone());
            vpieces.push(vp.clone());
        }
    }
    for (dv, vp) in s.vpieces().iter().enumerate() {
        let m = vp.slots.len();
        for i in 0..m {
            let entry = (dv, i);
            let prev = (i + m - 1) % m;
            if visited.contains(&entry) || deleted(dv, prev).is_some() {
                continue;
            }
            let nd = vpieces.len();
            let mut slots = Vec::new();
            let mut cur = entry;
            loop {
                let ch = chain(cur)?;
                for &c in &ch {
                    if !visited.insert(c) {
                        return Err(degenerate("slot reached twice"));
                    }
                }
                let last = *ch.last().expect("nonempty chain");
                let idx = slots.len();
                match s.vpieces()[cur.0].slots[cur.1] {
                    Slot::Free => {
                        arc_map.insert(FreeArc::Slot(cur.0, cur.1), FreeArc::Slot(nd, idx));
                        slots.push(Slot::Free);
                    }
                    Slot::End(h, e) => {
                        let c = class_of(&mut class_ids, &mut uf, h);
                        *end_emitted.entry((c, e)).or_insert(0) += 1;
                        slots.push(Slot::End(c, e));
                    }
                }
                arc_map.insert(FreeArc::Corner(last.0, last.1), FreeArc::Corner(nd, idx));
                let lm = s.vpieces()[last.0].slots.len();
                cur = (last.0, (last.1 + 1) % lm);
                if cur == entry {
                    break;
                }
                if visited.contains(&cur) {
                    return Err(degenerate("vertex disc walk does not close"));
                }
            }
            let mut name = vp.name.clone();
            while !names.insert(name.clone()) {
                name.push('~');
            }
            vpieces.push(VPiece { name, vertex: vp.vertex, slots });
        }
    }
    // Every surviving handle end must have been placed exactly once.
    let mut removed_handles = BTreeSet::new();
    for h in 0..nh {
        let alive = [Side::Left, Side::Right].iter().any(|&sd| !consumed.contains(&(h, sd)));
        for e in [End::Src, End::Dst] {
            let (dv, i) = s.handle_end(h, e);
            if !visited.contains(&(dv, i)) {
                if alive {
                    return Err(degenerate("a surviving handle end was not reached"));
                }
                removed_handles.insert(h);
            }
        }
    }
    // Assemble merged handles.
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for h in 0..nh {
        if !removed_handles.contains(&h) {
            groups.entry(class_of(&mut class_ids, &mut uf, h)).or_default().push(h);
        }
    }
    let count = class_ids.len();
    let mut hpieces: Vec<Option<HPiece>> = vec![None; count];
    let mut side_owner: BTreeMap<(usize, Side), (usize, usize)> = BTreeMap::new();
    for (&c, members) in &groups {
        hpieces[c] = Some(HPiece { name: s.hpieces()[members[0]].name.clone(), edge: s.hpieces()[members[0]].edge });
        for e in [End::Src, End::Dst] {
            if end_emitted.get(&(c, e)).copied().unwrap_or(0) != 1 {
                return Err(degenerate("merged handle end is not a single slot"));
            }
        }
        let mut free_sides = [0usize; 2];
        for &h in members {
            for side in [Side::Left, Side::Right] {
                if consumed.contains(&(h, side)) {
                    continue;
                }
                match s.handle_side(h, side) {
                    Some(owner) => {
                        if side_owner.insert((c, side), owner).is_some() {
                            return Err(degenerate("merged handle has two discs on one side"));
                        }
                    }
                    None => {
                        free_sides[side.index()] += 1;
                        arc_map.insert(FreeArc::Side(h, side), FreeArc::Side(c, side));
                    }
                }
            }
        }
        for side in [Side::Left, Side::Right] {
            if free_sides[side.index()] + usize::from(side_owner.contains_key(&(c, side))) != 1 {
                return Err(degenerate("merged handle does not have exactly two long sides"));
            }
        }
    }
    if hpieces.iter().any(Option::is_none) {
        return Err(degenerate("handle class without surviving members"));
    }
    let hpieces: Vec<HPiece> = hpieces.into_iter().map(Option::unwrap).collect();
    let mut fpieces = Vec::new();
    for (f, fp) in fps.iter().enumerate() {
        if f == f1 || f == f2 {
            continue;
        }
        let mut nf = fp.clone();
        nf.sides = fp.sides.iter().map(|&h| class_of(&mut class_ids, &mut uf, h)).collect();
        fpieces.push(nf);
    }
    let mut pieces = s.pieces().clone();
    pieces.vpieces = vpieces;
    pieces.hpieces = hpieces;
    pieces.fpieces = fpieces;
    rebuild(s, s.target().clone(), pieces, &arc_map, &BTreeMap::new())
}

/// Faces glued to both sides of one handle with opposite orientation types, lowest first.
pub fn find_fold(s: &AdmissibleSurface) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for h in 0..s.hpieces().len() {
        let (Some((fa, ka)), Some((fb, kb))) = (s.handle_side(h, Side::Left), s.handle_side(h, Side::Right)) else {
            continue;
        };
        if fa == fb || ka != kb {
            continue;
        }
        let (p, q) = (&s.fpieces()[fa], &s.fpieces()[fb]);
        if p.face == q.face && p.sign != q.sign {
            let pair = (fa.min(fb), fa.max(fb));
            if best.is_none_or(|b| pair < b) {
                best = Some(pair);
            }
        }
    }
    best
}

/// Deletes two adjacent cellular discs over one face with opposite signs and splices
/// their remaining sides pairwise. Preserves the boundary and the pushed-forward chain;
/// when the discs share a single handle χ is preserved too, and sharing more handles
/// can only raise it.
pub fn eliminate_fold(s: &AdmissibleSurface, d1: usize, d2: usize) -> Result<AdmissibleSurface, NormError> {
    let n = s.fpieces().len();
    if d1 >= n || d2 >= n {
        return Err(NormError::NotApplicable(format!("no cellular discs #{d1}, #{d2}")));
    }
    let (a, b) = (&s.fpieces()[d1], &s.fpieces()[d2]);
    if a.face != b.face {
        return Err(NormError::NotApplicable(format!("{} and {} lie over different faces", a.name, b.name)));
    }
    if a.sign == b.sign {
        return Err(NormError::NotApplicable(format!("{} and {} have the same sign", a.name, b.name)));
    }
    let shared = a.sides.iter().zip(&b.sides).filter(|(x, y)| x == y).count() as i64;
    if shared == 0 {
        return Err(NormError::NotApplicable(format!("{} and {} are not adjacent through a handle", a.name, b.name)));
    }
    let out = zip(s, d1, d2)?;
    let expected = s.euler_characteristic();
    if shared == 1 && out.euler_characteristic() != expected {
        return Err(NormError::Degenerate(format!(
            "fold elimination of {} and {} gives χ = {} instead of {}",
            a.name,
            b.name,
            out.euler_characteristic(),
            expected
        )));
    }
    Ok(out)
}
