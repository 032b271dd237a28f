use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::NormError;
use crate::admsurf::{side_next_to_corner, AdmissibleSurface, Assignment, FPiece, FreeArc, HPiece, Pieces, Side, Slot, VPiece};
use crate::homlin::{smith_normal_form, IntMatrix};

/// A `Z/N`-valued cocycle on the gluings of an admissible surface.
///
/// Copy `i` of handle `h` meets copy `i + end_shift[h][e]` of the vertex disc at end `e`
/// and copy `i + side_shift[h][s]` of the cellular disc on side `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverSpec {
    pub degree: usize,
    pub end_shift: Vec<[i64; 2]>,
    pub side_shift: Vec<[i64; 2]>,
}

impl CoverSpec {
    pub fn trivial(s: &AdmissibleSurface, degree: usize) -> Self {
        let nh = s.hpieces().len();
        CoverSpec { degree, end_shift: vec![[0; 2]; nh], side_shift: vec![[0; 2]; nh] }
    }

    /// Whether every disc corner sees consistent copies.
    pub fn is_cocycle(&self, s: &AdmissibleSurface) -> bool {
        let n = self.degree as i64;
        corner_rows(s).iter().all(|row| row.iter().map(|&(c, k)| k * self.var(c)).sum::<i64>().rem_euclid(n) == 0)
    }

    fn var(&self, c: usize) -> i64 {
        let nh = self.end_shift.len();
        if c < 2 * nh {
            self.end_shift[c / 2][c % 2]
        } else {
            self.side_shift[(c - 2 * nh) / 2][c % 2]
        }
    }

    fn from_vector(s: &AdmissibleSurface, degree: usize, v: &[i64]) -> Self {
        let nh = s.hpieces().len();
        let n = degree as i64;
        CoverSpec {
            degree,
            end_shift: (0..nh).map(|h| [v[2 * h].rem_euclid(n), v[2 * h + 1].rem_euclid(n)]).collect(),
            side_shift: (0..nh)
                .map(|h| [v[2 * nh + 2 * h].rem_euclid(n), v[2 * nh + 2 * h + 1].rem_euclid(n)])
                .collect(),
        }
    }

    /// A cocycle whose cover has connected preimage over every component of `s`.
    pub fn connected(s: &AdmissibleSurface, degree: usize) -> Result<Self, NormError> {
        if degree == 0 {
            return Err(NormError::NotApplicable("cover degree must be positive".into()));
        }
        if degree == 1 {
            return Ok(Self::trivial(s, 1));
        }
        let nh = s.hpieces().len();
        let rows = corner_rows(s);
        let dense: Vec<Vec<i64>> = rows
            .iter()
            .map(|row| {
                let mut r = vec![0i64; 4 * nh];
                for &(c, k) in row {
                    r[c] += k;
                }
                r
            })
            .collect();
        let basis: Vec<Vec<i64>> = if dense.is_empty() {
            (0..4 * nh).map(|i| (0..4 * nh).map(|j| i64::from(i == j)).collect()).collect()
        } else {
            smith_normal_form(&IntMatrix::from_rows(&dense))
                .kernel_basis()
                .into_iter()
                .map(|col| col.iter().map(|x: &BigInt| x.to_i64().unwrap_or(0)).collect())
                .collect()
        };
        let target_components = s.components().len();
        let mut candidates: Vec<Vec<i64>> = basis.clone();
        for t in 1..=24i64 {
            let mut v = vec![0i64; 4 * nh];
            let mut c = 1i64;
            for b in &basis {
                c = (c * t + 1) % 9973;
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = (*vi + c * bi).rem_euclid(degree as i64 * 9973);
                }
            }
            candidates.push(v);
        }
        for v in candidates {
            let spec = Self::from_vector(s, degree, &v);
            let cover = cover_pieces(s, &spec);
            if component_count(&cover) == target_components {
                return Ok(spec);
            }
        }
        Err(NormError::NotApplicable(format!("no connected {degree}-fold cyclic cover found")))
    }
}

/// Cocycle constraints: for each disc corner, the two handle incidences must agree.
/// Variables: `2h + e` for handle ends, `2nh + 2h + s` for handle sides.
fn corner_rows(s: &AdmissibleSurface) -> Vec<Vec<(usize, i64)>> {
    let nh = s.hpieces().len();
    let side_var = |h: usize, side: Side| -> usize { 2 * nh + 2 * h + side.index() };
    let mut rows = Vec::new();
    for (d, vp) in s.vpieces().iter().enumerate() {
        let m = vp.slots.len();
        for i in 0..m {
            if s.corner_owner(d, i).is_none() {
                continue;
            }
            let (Slot::End(ha, ea), Slot::End(hb, eb)) = (vp.slots[i], vp.slots[(i + 1) % m]) else {
                continue;
            };
            let mut row = vec![
                (2 * ha + ea.index(), -1),
                (side_var(ha, side_next_to_corner(ea, true)), 1),
                (2 * hb + eb.index(), 1),
                (side_var(hb, side_next_to_corner(eb, false)), -1),
            ];
            row.retain(|&(_, k)| k != 0);
            rows.push(row);
        }
    }
    rows
}

fn cover_pieces(s: &AdmissibleSurface, spec: &CoverSpec) -> Pieces {
    let n = spec.degree;
    let shift = |base: usize, k: i64| -> usize { ((base as i64 + k).rem_euclid(n as i64)) as usize };
    let mut pieces = Pieces { incompressible: s.incompressible(), ..Pieces::default() };
    for vp in s.vpieces() {
        for j in 0..n {
            let slots = vp
                .slots
                .iter()
                .map(|sl| match *sl {
                    Slot::End(h, e) => Slot::End(h * n + shift(j, -spec.end_shift[h][e.index()]), e),
                    Slot::Free => Slot::Free,
                })
                .collect();
            pieces.vpieces.push(VPiece { name: format!("{}~{j}", vp.name), vertex: vp.vertex, slots });
        }
    }
    for hp in s.hpieces() {
        for j in 0..n {
            pieces.hpieces.push(HPiece { name: format!("{}~{j}", hp.name), edge: hp.edge });
        }
    }
    for (f, fp) in s.fpieces().iter().enumerate() {
        for j in 0..n {
            let sides = fp
                .sides
                .iter()
                .enumerate()
                .map(|(k, &h)| {
                    let side = if s.handle_side(h, Side::Left) == Some((f, k)) { Side::Left } else { Side::Right };
                    h * n + shift(j, -spec.side_shift[h][side.index()])
                })
                .collect();
            pieces.fpieces.push(FPiece { name: format!("{}~{j}", fp.name), face: fp.face, sign: fp.sign, sides });
        }
    }
    pieces
}

fn component_count(p: &Pieces) -> usize {
    let (nv, nh) = (p.vpieces.len(), p.hpieces.len());
    let mut uf = crate::cellcx::UnionFind::new(nv + nh + p.fpieces.len());
    for (d, vp) in p.vpieces.iter().enumerate() {
        for sl in &vp.slots {
            if let Slot::End(h, _) = sl {
                uf.union(d, nv + h);
            }
        }
    }
    for (f, fp) in p.fpieces.iter().enumerate() {
        for &h in &fp.sides {
            uf.union(nv + nh + f, nv + h);
        }
    }
    let labels = uf.labels();
    labels.iter().collect::<std::collections::BTreeSet<_>>().len()
}

fn project(a: FreeArc, n: usize) -> FreeArc {
    match a {
        FreeArc::Side(h, s) => FreeArc::Side(h / n, s),
        FreeArc::Slot(d, i) => FreeArc::Slot(d / n, i),
        FreeArc::Corner(d, i) => FreeArc::Corner(d / n, i),
        FreeArc::Loop(d) => FreeArc::Loop(d / n),
    }
}

/// The cyclic cover of `s` described by `spec`, with boundary assignments lifted:
/// a circuit covering a degree-`d` circuit `k` times gets degree `k·d`.
pub fn cyclic_cover(s: &AdmissibleSurface, spec: &CoverSpec) -> Result<AdmissibleSurface, NormError> {
    if !spec.is_cocycle(s) {
        return Err(NormError::NotApplicable("cover data is not a cocycle".into()));
    }
    let n = spec.degree;
    let mut pieces = cover_pieces(s, spec);
    let bare = AdmissibleSurface::new_unassigned(s.target().clone(), pieces.clone())?;
    let base_arc: BTreeMap<FreeArc, usize> = s
        .circuits()
        .iter()
        .enumerate()
        .flat_map(|(c, circ)| circ.arcs.iter().map(move |&a| (a, c)))
        .collect();
    for circ in bare.circuits() {
        let first = circ.arcs[0];
        let c = base_arc[&project(first, n)];
        let base = &s.circuits()[c];
        let Some(ai) = base.assignment else { continue };
        let a = &s.assignments()[ai];
        let k = (circ.arcs.len() / base.arcs.len().max(1)) as i64;
        pieces.assignments.push(Assignment {
            arc: first,
            circle: a.circle,
            degree: a.degree * k,
            homotopy: a.homotopy.iter().map(|(&f, &m)| (f, m * k)).collect(),
        });
    }
    Ok(AdmissibleSurface::new(s.target().clone(), s.loops().clone(), pieces)?)
}

