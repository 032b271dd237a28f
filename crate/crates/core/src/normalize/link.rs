use std::collections::BTreeMap;
use std::sync::Arc;

use super::{rebuild, Names, NormError};
use crate::admsurf::{side_next_to_corner, AdmissibleSurface, End, FPiece, FreeArc, HPiece, Slot, Target, VPiece};
use crate::cellcx::{ComplexBuilder, Letter, TwoComplex};

/// Which way around the link circle the move walks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LinkPolicy {
    /// Inserted cellular discs are orientation preserving.
    #[default]
    Positive,
    /// Inserted cellular discs are orientation reversing.
    Negative,
}

/// Number of link components of each vertex disc in the collapsed complex.
pub fn link_components(s: &AdmissibleSurface) -> Vec<usize> {
    let bar = s.collapse();
    (0..bar.complex.num_vertices())
        .map(|v| bar.complex.link_graph(v).map(|g| g.num_components()).unwrap_or(0))
        .collect()
}

/// A half-edge of the target at a vertex: the edge and which of its ends.
type HalfEdge = (usize, End);

fn arriving(l: Letter) -> HalfEdge {
    (l.edge, if l.inverse { End::Src } else { End::Dst })
}

fn departing(l: Letter) -> HalfEdge {
    (l.edge, if l.inverse { End::Dst } else { End::Src })
}

struct Step {
    face: usize,
    sign: i64,
    /// Word indices of the sides leaving and entering the vertex, in the disc's ccw order.
    dep: usize,
    arr: usize,
}

fn walk_link(t: &Target, v: usize, from: HalfEdge, to: HalfEdge, policy: LinkPolicy) -> Result<Vec<Step>, NormError> {
    let x = &t.complex;
    let mut corners = Vec::new();
    for (f, face) in x.faces().iter().enumerate() {
        let d = face.word.len();
        for k in 0..d {
            if x.letter_dst(face.word[k]) == v {
                corners.push((f, k, arriving(face.word[k]), departing(face.word[(k + 1) % d]), d));
            }
        }
    }
    let mut steps = Vec::new();
    let mut cur = from;
    loop {
        let next = corners.iter().find_map(|&(f, k, a, b, d)| {
            let eps = t.orientation[f];
            let sign = if policy == LinkPolicy::Positive { eps } else { -eps };
            if sign > 0 && b == cur {
                Some((Step { face: f, sign, dep: (k + 1) % d, arr: k }, a))
            } else if sign < 0 && a == cur {
                Some((Step { face: f, sign, dep: k, arr: (k + 1) % d }, b))
            } else {
                None
            }
        });
        let (step, nxt) = next.ok_or_else(|| {
            NormError::NotApplicable(format!(
                "the link walk at {} runs into the boundary; thicken the target first",
                x.vertex_name(v)
            ))
        })?;
        steps.push(step);
        cur = nxt;
        if cur == to {
            return Ok(steps);
        }
        if steps.len() > corners.len() {
            return Err(NormError::NotApplicable("link walk does not reach the target half-edge".into()));
        }
    }
}

/// Joins two link components of vertex disc `d` by inserting cellular discs over the faces
/// met while turning around the image vertex, moving the boundary across them.
pub fn connect_link(s: &AdmissibleSurface, d: usize, policy: LinkPolicy) -> Result<AdmissibleSurface, NormError> {
    let t = s.target();
    let x = s.complex();
    let vp = s.vpieces().get(d).ok_or_else(|| NormError::NotApplicable(format!("no vertex disc #{d}")))?;
    let v = vp.vertex;
    if link_components(s)[d] < 2 {
        return Err(NormError::NotApplicable(format!("vertex disc {} already has connected link", vp.name)));
    }
    let m = vp.slots.len();
    let is_handle = |i: usize| matches!(vp.slots[i], Slot::End(..));
    let xi = (0..m)
        .find(|&i| is_handle(i) && s.corner_owner(d, i).is_none())
        .expect("a disconnected link has a free corner after a handle");
    let mut gap = Vec::new();
    let mut yi = (xi + 1) % m;
    while !is_handle(yi) {
        gap.push(yi);
        yi = (yi + 1) % m;
    }
    let (Slot::End(hx, ex), Slot::End(hy, ey)) = (vp.slots[xi], vp.slots[yi]) else { unreachable!() };
    let steps = walk_link(t, v, (s.hpieces()[hx].edge, ex), (s.hpieces()[hy].edge, ey), policy)?;
    let degenerate = |m: &str| NormError::Degenerate(format!("link move at {}: {m}", vp.name));

    let mut hpieces = s.hpieces().to_vec();
    let mut fpieces = s.fpieces().to_vec();
    let mut fresh_v: Vec<VPiece> = Vec::new();
    let mut names = Names::of(s);
    let new_handle = |hp: &mut Vec<HPiece>, names: &mut Names, edge: usize, tag: &str| -> usize {
        hp.push(HPiece { name: names.fresh(tag), edge });
        hp.len() - 1
    };
    let l = steps.len();
    // Handles shared by consecutive inserted discs.
    let mut between = Vec::new();
    for j in 0..l.saturating_sub(1) {
        let e = x.face(steps[j].face).word[steps[j].arr].edge;
        between.push(new_handle(&mut hpieces, &mut names, e, "n"));
    }
    let mut before_slot: BTreeMap<(usize, usize), Vec<Slot>> = BTreeMap::new();
    let mut after_slot: BTreeMap<(usize, usize), Vec<Slot>> = BTreeMap::new();
    // (F_{j+1} departure-corner handle at the far end of between[j], F_j arrival-corner handle there)
    let mut u_parts: Vec<[Option<usize>; 2]> = vec![[None, None]; between.len()];
    let mut homotopy: BTreeMap<usize, i64> = BTreeMap::new();
    for (j, st) in steps.iter().enumerate() {
        let word = &x.face(st.face).word;
        let deg = word.len();
        if deg < 3 {
            return Err(degenerate("inserted face has fewer than three sides"));
        }
        let mut sides = vec![usize::MAX; deg];
        sides[st.dep] = if j == 0 { hx } else { between[j - 1] };
        sides[st.arr] = if j + 1 == l { hy } else { between[j] };
        for k in 0..deg {
            if sides[k] == usize::MAX {
                sides[k] = new_handle(&mut hpieces, &mut names, word[k].edge, "g");
            }
        }
        fpieces.push(FPiece { name: names.fresh("N"), face: st.face, sign: st.sign, sides: sides.clone() });
        *homotopy.entry(st.face).or_insert(0) += st.sign;
        // Remaining corners in ccw order: walk from the departure side onwards.
        let step_dir = |k: usize| if st.sign > 0 { (k + 1) % deg } else { (k + deg - 1) % deg };
        let mut arr_k = st.dep;
        loop {
            let dep_k = step_dir(arr_k);
            if arr_k == st.arr {
                break;
            }
            let (ha, hb) = (sides[arr_k], sides[dep_k]);
            if arr_k == st.dep {
                // Far end of the departure side.
                if j == 0 {
                    let far = s.handle_end(hx, ex.other());
                    before_slot.entry(far).or_default().push(Slot::End(hb, hb_start(x, word[dep_k], st.sign)));
                } else {
                    u_parts[j - 1][0] = Some(hb);
                }
            } else if dep_k == st.arr {
                if j + 1 == l {
                    let far = s.handle_end(hy, ey.other());
                    after_slot.entry(far).or_default().push(Slot::End(ha, ha_end(x, word[arr_k], st.sign)));
                } else {
                    u_parts[j][1] = Some(ha);
                }
            } else {
                let vtx = x.letter_dst(if st.sign > 0 { word[arr_k] } else { word[arr_k].inv() });
                fresh_v.push(VPiece {
                    name: names.fresh("W"),
                    vertex: vtx,
                    slots: vec![
                        Slot::End(hb, hb_start(x, word[dep_k], st.sign)),
                        Slot::End(ha, ha_end(x, word[arr_k], st.sign)),
                    ],
                });
            }
            arr_k = dep_k;
        }
    }
    for (j, &h) in between.iter().enumerate() {
        let [Some(g_next), Some(g_prev)] = u_parts[j] else {
            return Err(degenerate("missing corner at an intermediate link vertex"));
        };
        let far_end = {
            let st = &steps[j];
            let l_arr = x.face(st.face).word[st.arr];
            // The arrival side of F_j enters v; its far end is the other end of the handle.
            arriving_end(l_arr, st.sign).other()
        };
        let fp_next = &steps[j + 1];
        let word_next = &x.face(fp_next.face).word;
        let dep_letter = word_next[next_after(fp_next, word_next.len(), fp_next.dep)];
        let prev = &steps[j];
        let word_prev = &x.face(prev.face).word;
        let arr_letter = word_prev[prev_before(prev, word_prev.len(), prev.arr)];
        let vtx = x.letter_src(if fp_next.sign > 0 { dep_letter } else { dep_letter.inv() });
        fresh_v.push(VPiece {
            name: names.fresh("U"),
            vertex: vtx,
            slots: vec![
                Slot::End(g_next, hb_start(x, dep_letter, fp_next.sign)),
                Slot::End(h, far_end),
                Slot::End(g_prev, ha_end(x, arr_letter, prev.sign)),
            ],
        });
    }

    // Rewrite the existing vertex discs.
    let mut arc_map = BTreeMap::new();
    let mut vpieces = Vec::new();
    for (dv, old) in s.vpieces().iter().enumerate() {
        let mut slots = Vec::new();
        let mut corner_src: Vec<Option<(usize, usize)>> = Vec::new();
        if old.slots.is_empty() {
            arc_map.insert(FreeArc::Loop(dv), FreeArc::Loop(vpieces.len()));
        }
        for i in 0..old.slots.len() {
            if dv == d && gap.contains(&i) {
                continue;
            }
            for &sl in before_slot.get(&(dv, i)).into_iter().flatten() {
                slots.push(sl);
                corner_src.push(None);
            }
            if old.slots[i] == Slot::Free {
                arc_map.insert(FreeArc::Slot(dv, i), FreeArc::Slot(vpieces.len(), slots.len()));
            }
            slots.push(old.slots[i]);
            let inserted_after: Vec<Slot> = if dv == d && i == xi {
                between.iter().map(|&h| Slot::End(h, between_v_end(&steps, x, &between, h))).collect()
            } else {
                after_slot.get(&(dv, i)).cloned().unwrap_or_default()
            };
            if inserted_after.is_empty() {
                corner_src.push(Some((dv, i)));
            } else {
                corner_src.push(None);
                for (q, &sl) in inserted_after.iter().enumerate() {
                    slots.push(sl);
                    corner_src.push(if q + 1 == inserted_after.len() { Some((dv, i)) } else { None });
                }
            }
        }
        let nd = vpieces.len();
        for (idx, src) in corner_src.iter().enumerate() {
            if let Some((od, oi)) = *src {
                if !(od == d && oi == xi) {
                    arc_map.insert(FreeArc::Corner(od, oi), FreeArc::Corner(nd, idx));
                }
            }
        }
        vpieces.push(VPiece { name: old.name.clone(), vertex: old.vertex, slots });
    }
    // At the far end of y the old free corner now follows the inserted handle; at x's
    // far end it precedes it, which the bookkeeping above already reflects.
    vpieces.extend(fresh_v);
    for h in 0..s.hpieces().len() {
        for side in [crate::admsurf::Side::Left, crate::admsurf::Side::Right] {
            if s.handle_side(h, side).is_none() {
                let taken = (h == hx && side == side_next_to_corner(ex, true)) || (h == hy && side == side_next_to_corner(ey, false));
                if !taken {
                    arc_map.insert(FreeArc::Side(h, side), FreeArc::Side(h, side));
                }
            }
        }
    }
    let circuit = s
        .circuit_of(FreeArc::Side(hx, side_next_to_corner(ex, true)))
        .expect("the free side next to the gap lies on a boundary circuit");
    homotopy.retain(|_, k| *k != 0);
    let extra = BTreeMap::from([(circuit, homotopy)]);
    let mut pieces = s.pieces().clone();
    pieces.vpieces = vpieces;
    pieces.hpieces = hpieces;
    pieces.fpieces = fpieces;
    rebuild(s, t.clone(), pieces, &arc_map, &extra).map_err(|e| match e {
        NormError::Adm(a) => degenerate(&a.to_string()),
        other => other,
    })
}

/// End of the handle over `l` at which a disc of sign `sign` leaves along it.
fn hb_start(_x: &TwoComplex, l: Letter, sign: i64) -> End {
    if (sign > 0) != l.inverse {
        End::Src
    } else {
        End::Dst
    }
}

/// End of the handle over `l` at which a disc of sign `sign` arrives along it.
fn ha_end(_x: &TwoComplex, l: Letter, sign: i64) -> End {
    hb_start(_x, l, sign).other()
}

fn arriving_end(l: Letter, sign: i64) -> End {
    if (sign > 0) != l.inverse {
        End::Dst
    } else {
        End::Src
    }
}

fn next_after(st: &Step, deg: usize, k: usize) -> usize {
    if st.sign > 0 {
        (k + 1) % deg
    } else {
        (k + deg - 1) % deg
    }
}

fn prev_before(st: &Step, deg: usize, k: usize) -> usize {
    if st.sign > 0 {
        (k + deg - 1) % deg
    } else {
        (k + 1) % deg
    }
}

fn between_v_end(steps: &[Step], x: &TwoComplex, between: &[usize], h: usize) -> End {
    let j = between.iter().position(|&b| b == h).expect("inserted handle");
    let st = &steps[j];
    arriving_end(x.face(st.face).word[st.arr], st.sign)
}

/// A target with a collar glued to each boundary circle; original cells keep their ids.
#[derive(Clone, Debug)]
pub struct Thickened {
    pub target: Arc<Target>,
}

impl Thickened {
    /// The same pieces over the thickened target.
    pub fn retarget(&self, s: &AdmissibleSurface) -> Result<AdmissibleSurface, NormError> {
        Ok(AdmissibleSurface::new(self.target.clone(), s.loops().clone(), s.pieces().clone())?)
    }
}

/// Glues a cellulated annulus along every boundary circle so all old vertices become interior.
pub fn thicken_boundary(t: &Target) -> Result<Thickened, NormError> {
    let x = &t.complex;
    let mut b = ComplexBuilder::new();
    for name in x.vertex_names() {
        b.vertex(name.clone());
    }
    for e in x.edges() {
        b.edge(e.name.clone(), e.src, e.dst);
    }
    for f in x.faces() {
        b.face(f.name.clone(), f.word.clone());
    }
    // Positively oriented boundary letters, keyed by their source vertex.
    let mut next_letter: BTreeMap<usize, Letter> = BTreeMap::new();
    for (f, face) in x.faces().iter().enumerate() {
        for l in &face.word {
            if x.side_incidence(l.edge) == 1 {
                let along = if t.orientation[f] > 0 { *l } else { l.inv() };
                next_letter.insert(x.letter_src(along), along);
            }
        }
    }
    let mut done = std::collections::BTreeSet::new();
    let mut collar = 0;
    for &start in next_letter.clone().keys() {
        if done.contains(&start) {
            continue;
        }
        let mut circle = Vec::new();
        let mut v = start;
        while done.insert(v) {
            let l = next_letter[&v];
            circle.push(l);
            v = x.letter_dst(l);
        }
        let m = circle.len();
        let verts: Vec<usize> = circle.iter().map(|&l| x.letter_src(l)).collect();
        let outer: Vec<usize> = verts.iter().map(|&w| b.vertex(format!("{}'{collar}", x.vertex_name(w)))).collect();
        let radial: Vec<usize> = (0..m)
            .map(|i| b.edge(format!("r{collar}_{}", x.vertex_name(verts[i])), verts[i], outer[i]))
            .collect();
        let rim: Vec<usize> = (0..m)
            .map(|i| b.edge(format!("{}'{collar}", x.edge(circle[i].edge).name), outer[i], outer[(i + 1) % m]))
            .collect();
        for i in 0..m {
            let j = (i + 1) % m;
            let word = vec![circle[i].inv(), Letter::pos(radial[i]), Letter::pos(rim[i]), Letter::neg(radial[j])];
            b.face(format!("q{collar}_{i}"), word);
        }
        collar += 1;
    }
    let complex = b.build().map_err(|e| NormError::NotApplicable(e.to_string()))?;
    let target = Target::new(complex)?;
    debug_assert!(target.boundary_vertices.iter().all(|&v| v >= x.num_vertices()));
    Ok(Thickened { target: Arc::new(target) })
}
