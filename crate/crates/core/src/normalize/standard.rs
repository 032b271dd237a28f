use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::cover::{cyclic_cover, CoverSpec};
use super::link::{connect_link, link_components, thicken_boundary, LinkPolicy};
use super::zip::{eliminate_fold, find_fold, zip};
use super::{same_class, Metrics, MoveLog, NormError};
use crate::admsurf::{AdmissibleSurface, Assignment, FPiece, FreeArc, HPiece, Pieces, Slot, SurfaceComponent, VPiece};

/// The sub-surface made of the given components, keeping the boundary assignments on them.
fn restrict(s: &AdmissibleSurface, keep: &[&SurfaceComponent]) -> Result<AdmissibleSurface, NormError> {
    let mut vmap = BTreeMap::new();
    let mut hmap = BTreeMap::new();
    let mut fmap = BTreeMap::new();
    for c in keep {
        for &d in &c.vpieces {
            let k = vmap.len();
            vmap.insert(d, k);
        }
        for &h in &c.hpieces {
            let k = hmap.len();
            hmap.insert(h, k);
        }
        for &f in &c.fpieces {
            let k = fmap.len();
            fmap.insert(f, k);
        }
    }
    let mut pieces = Pieces { incompressible: s.incompressible(), ..Pieces::default() };
    for &d in vmap.keys() {
        let vp = &s.vpieces()[d];
        let slots = vp
            .slots
            .iter()
            .map(|sl| match *sl {
                Slot::End(h, e) => Slot::End(hmap[&h], e),
                Slot::Free => Slot::Free,
            })
            .collect();
        pieces.vpieces.push(VPiece { name: vp.name.clone(), vertex: vp.vertex, slots });
    }
    for &h in hmap.keys() {
        let hp = &s.hpieces()[h];
        pieces.hpieces.push(HPiece { name: hp.name.clone(), edge: hp.edge });
    }
    for &f in fmap.keys() {
        let fp = &s.fpieces()[f];
        pieces.fpieces.push(FPiece {
            name: fp.name.clone(),
            face: fp.face,
            sign: fp.sign,
            sides: fp.sides.iter().map(|h| hmap[h]).collect(),
        });
    }
    let map_arc = |a: FreeArc| -> Option<FreeArc> {
        Some(match a {
            FreeArc::Side(h, side) => FreeArc::Side(*hmap.get(&h)?, side),
            FreeArc::Slot(d, i) => FreeArc::Slot(*vmap.get(&d)?, i),
            FreeArc::Corner(d, i) => FreeArc::Corner(*vmap.get(&d)?, i),
            FreeArc::Loop(d) => FreeArc::Loop(*vmap.get(&d)?),
        })
    };
    for a in s.assignments() {
        if let Some(arc) = map_arc(a.arc) {
            pieces.assignments.push(Assignment { arc, ..a.clone() });
        }
    }
    Ok(AdmissibleSurface::new(s.target().clone(), s.loops().clone(), pieces)?)
}

/// Drops every disc and sphere component; fails if that changes the class in `H2(S, c)`.
pub fn remove_trivial_components(s: &AdmissibleSurface) -> Result<AdmissibleSurface, NormError> {
    let comps = s.components();
    let keep: Vec<&SurfaceComponent> = comps.iter().filter(|c| c.euler_characteristic() <= 0).collect();
    if keep.len() == comps.len() {
        return Ok(s.clone());
    }
    let r = restrict(s, &keep)?;
    if !same_class(s, &r)? {
        let dropped: Vec<String> = comps
            .iter()
            .filter(|c| c.euler_characteristic() > 0)
            .map(|c| c.vpieces.iter().map(|&d| s.vpieces()[d].name.clone()).collect::<Vec<_>>().join(","))
            .collect();
        return Err(NormError::ClassChange(dropped.join(" ; ")));
    }
    Ok(r)
}

/// Drops the first disc or sphere component whose removal keeps the class.
fn drop_one_trivial(s: &AdmissibleSurface) -> Result<Option<(AdmissibleSurface, usize)>, NormError> {
    let comps = s.components();
    for (i, c) in comps.iter().enumerate() {
        if c.euler_characteristic() <= 0 {
            continue;
        }
        let keep: Vec<&SurfaceComponent> = comps.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c).collect();
        let r = restrict(s, &keep)?;
        if same_class(s, &r)? {
            return Ok(Some((r, i)));
        }
    }
    Ok(None)
}

const MAX_MOVES: usize = 100_000;

/// Alternates fold elimination, link connection and trivial-component removal until
/// none applies. Disc components carrying a nonzero class are kept.
pub fn make_standard_form(s: &AdmissibleSurface) -> Result<(AdmissibleSurface, MoveLog), NormError> {
    let mut cur = s.clone();
    let mut log = MoveLog::default();
    for _ in 0..MAX_MOVES {
        if let Some((a, b)) = find_fold(&cur) {
            let next = eliminate_fold(&cur, a, b)?;
            let args = format!("{} {}", cur.fpieces()[a].name, cur.fpieces()[b].name);
            let kept = same_class(&cur, &next)?;
            log.push("fold", args, &cur, &next, Some(kept));
            cur = next;
            continue;
        }
        let ks = link_components(&cur);
        if let Some(d) = (0..ks.len()).find(|&d| ks[d] >= 2) {
            let next = match connect_link(&cur, d, LinkPolicy::Positive) {
                Err(NormError::NotApplicable(_)) if !cur.target().is_interior(cur.vpieces()[d].vertex) => {
                    let th = thicken_boundary(cur.target())?;
                    let next = th.retarget(&cur)?;
                    log.push("thicken", String::new(), &cur, &next, None);
                    cur = next;
                    connect_link(&cur, d, LinkPolicy::Positive)?
                }
                other => other?,
            };
            let kept = same_class(&cur, &next)?;
            log.push("link", cur.vpieces()[d].name.clone(), &cur, &next, Some(kept));
            cur = next;
            continue;
        }
        if let Some((next, i)) = drop_one_trivial(&cur)? {
            log.push("drop", format!("component{i}"), &cur, &next, Some(true));
            cur = next;
            continue;
        }
        return Ok((cur, log));
    }
    Err(NormError::NotApplicable("standard form did not stabilise".into()))
}

/// Outcome of the asymptotic promotion.
#[derive(Clone, Debug)]
pub struct Promotion {
    pub surface: AdmissibleSurface,
    pub log: MoveLog,
    pub cover_degree: usize,
    pub gluings: usize,
    /// `-χ⁻ / n` before and after.
    pub ratio_before: BigRational,
    pub ratio_after: BigRational,
    /// `(#components) · 2ε`.
    pub allowance: BigRational,
}

impl Promotion {
    pub fn bound_holds(&self) -> bool {
        self.ratio_after <= &self.ratio_before + &self.allowance
    }
}

fn ratio(s: &AdmissibleSurface) -> Option<BigRational> {
    let m = Metrics::of(s);
    let n = s.degree().n?;
    Some(BigRational::new(BigInt::from(m.chi_minus), BigInt::from(n)))
}

fn opposite_pair(s: &AdmissibleSurface) -> Option<(usize, usize)> {
    let comps = s.components();
    let mut comp_of = vec![0; s.fpieces().len()];
    for (i, c) in comps.iter().enumerate() {
        for &f in &c.fpieces {
            comp_of[f] = i;
        }
    }
    let fps = s.fpieces();
    (0..fps.len()).find_map(|a| {
        (a + 1..fps.len())
            .find(|&b| fps[a].face == fps[b].face && fps[a].sign != fps[b].sign && comp_of[a] != comp_of[b])
            .map(|b| (a, b))
    })
}

/// Passes to a connected `N`-fold cyclic cover with `1/N ≤ ε`, then glues opposite discs
/// in distinct components and restores the standard form until no face is covered twice
/// with opposite orientations.
pub fn promote_orientation_perfect(s: &AdmissibleSurface, eps: &BigRational) -> Result<Promotion, NormError> {
    if !eps.is_positive() {
        return Err(NormError::BadEpsilon);
    }
    let ratio_before = ratio(s).ok_or(NormError::NoAdmissibleComponent)?;
    let components = s.components().len();
    let allowance = eps * BigRational::from_integer(BigInt::from(2 * components));
    let report = s.standard_form_report();
    if report.orientation_perfect {
        return Ok(Promotion {
            surface: s.clone(),
            log: MoveLog::default(),
            cover_degree: 1,
            gluings: 0,
            ratio_after: ratio_before.clone(),
            ratio_before,
            allowance,
        });
    }
    if !(report.non_folded && report.connected_links && report.disc_sphere_free) {
        return Err(NormError::NotApplicable("promotion needs a non-folded, disc-free surface with connected links".into()));
    }
    let inv = eps.recip();
    let (q, r) = inv.numer().div_rem(inv.denom());
    let n: BigInt = q + if r.is_zero() { 0 } else { 1 };
    let n: usize = usize::try_from(n).map_err(|_| NormError::BadEpsilon)?;
    let n = n.max(1);
    let spec = CoverSpec::connected(s, n)?;
    let mut cur = cyclic_cover(s, &spec)?;
    let mut log = MoveLog::default();
    log.push("cover", n.to_string(), s, &cur, None);
    let mut gluings = 0;
    while let Some((a, b)) = opposite_pair(&cur) {
        let next = zip(&cur, a, b)?;
        let args = format!("{} {}", cur.fpieces()[a].name, cur.fpieces()[b].name);
        log.push("glue", args, &cur, &next, Some(same_class(&cur, &next)?));
        gluings += 1;
        let (std, sub) = make_standard_form(&next)?;
        log.entries.extend(sub.entries);
        cur = std;
        if gluings > components * n + 1 {
            return Err(NormError::NotApplicable("promotion did not converge".into()));
        }
    }
    let ratio_after = ratio(&cur).ok_or(NormError::NoAdmissibleComponent)?;
    Ok(Promotion { surface: cur, log, cover_degree: n, gluings, ratio_before, ratio_after, allowance })
}

/// The component with least `-χ⁻ / n` among those of positive degree on every circle.
pub fn best_connected_component(s: &AdmissibleSurface) -> Result<AdmissibleSurface, NormError> {
    let comps = s.components();
    let mut best: Option<(BigRational, AdmissibleSurface)> = None;
    for c in &comps {
        let r = restrict(s, &[c])?;
        let Some(q) = ratio(&r) else { continue };
        if best.as_ref().is_none_or(|(b, _)| q < *b) {
            best = Some((q, r));
        }
    }
    best.map(|(_, r)| r).ok_or(NormError::NoAdmissibleComponent)
}
