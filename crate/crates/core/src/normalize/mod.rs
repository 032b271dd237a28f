//! Rewriting moves on admissible surfaces with exact accounting of `χ⁻` and degree.

mod cover;
mod link;
mod standard;
mod zip;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::admsurf::{AdmError, AdmissibleSurface, Assignment, FreeArc, Pieces, Target};
use crate::homlin::Ring;

pub use cover::{cyclic_cover, CoverSpec};
pub use link::{connect_link, link_components, thicken_boundary, LinkPolicy, Thickened};
pub use standard::{
    best_connected_component, make_standard_form, promote_orientation_perfect, remove_trivial_components, Promotion,
};
pub use zip::{eliminate_fold, find_fold};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum NormError {
    #[error("move not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("removing trivial components would change the class: {0}")]
    ClassChange(String),
    #[error("epsilon must be positive")]
    BadEpsilon,
    #[error("no component has positive degree")]
    NoAdmissibleComponent,
    #[error(transparent)]
    Adm(#[from] AdmError),
}

/// Quantities tracked across moves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Metrics {
    /// `-χ⁻`.
    pub chi_minus: i64,
    pub chi: i64,
    pub per_circle: Vec<i64>,
    pub positive_discs: usize,
    pub negative_discs: usize,
    /// `Σ (k - 1)` over vertex discs with `k ≥ 1` link components.
    pub link_excess: usize,
}

impl Metrics {
    pub fn of(s: &AdmissibleSurface) -> Self {
        let negative_discs = (0..s.fpieces().len()).filter(|&f| s.orientation_type(f) < 0).count();
        Metrics {
            chi_minus: -s.reduced_euler(),
            chi: s.euler_characteristic(),
            per_circle: s.degree().per_circle,
            positive_discs: s.fpieces().len() - negative_discs,
            negative_discs,
            link_excess: link_components(s).iter().map(|&k| k.saturating_sub(1)).sum(),
        }
    }

    /// Lexicographic termination potential of the standard-form procedure.
    pub fn potential(&self) -> (usize, usize, usize) {
        (self.negative_discs, self.link_excess, self.positive_discs + self.negative_discs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveEntry {
    pub name: String,
    pub args: String,
    pub before: Metrics,
    pub after: Metrics,
    /// Whether the class in `H2(S, c)` is unchanged, when it was checked.
    pub class_preserved: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveLog {
    pub entries: Vec<MoveEntry>,
}

fn fmt_degrees(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for MoveLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(
                f,
                "move {} {} ; chi_minus {} -> {} ; n {} -> {} ; discs +{}/-{} -> +{}/-{} ; link_excess {} -> {}",
                e.name,
                e.args,
                e.before.chi_minus,
                e.after.chi_minus,
                fmt_degrees(&e.before.per_circle),
                fmt_degrees(&e.after.per_circle),
                e.before.positive_discs,
                e.before.negative_discs,
                e.after.positive_discs,
                e.after.negative_discs,
                e.before.link_excess,
                e.after.link_excess
            )?;
            match e.class_preserved {
                Some(true) => writeln!(f, " ; class preserved")?,
                Some(false) => writeln!(f, " ; class changed")?,
                None => writeln!(f)?,
            }
        }
        Ok(())
    }
}

impl MoveLog {
    pub fn push(&mut self, name: &str, args: String, before: &AdmissibleSurface, after: &AdmissibleSurface, class_preserved: Option<bool>) {
        self.entries.push(MoveEntry {
            name: name.to_string(),
            args,
            before: Metrics::of(before),
            after: Metrics::of(after),
            class_preserved,
        });
    }

    /// Recomputes nothing; checks that consecutive entries chain (after of one = before of the next).
    pub fn is_chained(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].after == w[1].before)
    }
}

/// Whether two surfaces over the same chain have equal classes in `H2(S, c; Q)`.
pub fn same_class(a: &AdmissibleSurface, b: &AdmissibleSurface) -> Result<bool, NormError> {
    let pa = a.pushforward_class(Ring::Q)?;
    let pb = b.pushforward_class(Ring::Q)?;
    Ok(pa.cone_cycle == pb.cone_cycle || pa.coordinates == pb.coordinates)
}

/// Generator of piece names not yet used by a surface.
pub(crate) struct Names {
    used: std::collections::BTreeSet<String>,
    next: usize,
}

impl Names {
    pub(crate) fn of(s: &AdmissibleSurface) -> Self {
        let used = s
            .vpieces()
            .iter()
            .map(|p| p.name.clone())
            .chain(s.hpieces().iter().map(|p| p.name.clone()))
            .chain(s.fpieces().iter().map(|p| p.name.clone()))
            .collect();
        Names { used, next: 0 }
    }

    pub(crate) fn fresh(&mut self, prefix: &str) -> String {
        loop {
            let name = format!("{prefix}{}", self.next);
            self.next += 1;
            if self.used.insert(name.clone()) {
                return name;
            }
        }
    }
}

/// Validates `pieces` after carrying the boundary assignments of `s` across a move.
/// Each assignment moves to the image of the first surviving arc of its circuit;
/// `extra` adds homotopy certificates per old circuit.
pub(crate) fn rebuild(
    s: &AdmissibleSurface,
    target: Arc<Target>,
    mut pieces: Pieces,
    arc_map: &BTreeMap<FreeArc, FreeArc>,
    extra: &BTreeMap<usize, BTreeMap<usize, i64>>,
) -> Result<AdmissibleSurface, NormError> {
    pieces.assignments.clear();
    for a in s.assignments() {
        let c = s.circuit_of(a.arc).expect("assigned arc lies on a circuit");
        let arc = s.circuits()[c]
            .arcs
            .iter()
            .find_map(|x| arc_map.get(x).copied())
            .ok_or_else(|| NormError::Degenerate(format!("boundary circuit {c} has no surviving arc")))?;
        let mut homotopy = a.homotopy.clone();
        if let Some(add) = extra.get(&c) {
            for (&f, &k) in add {
                *homotopy.entry(f).or_insert(0) += k;
            }
            homotopy.retain(|_, k| *k != 0);
        }
        pieces.assignments.push(Assignment { arc, circle: a.circle, degree: a.degree, homotopy });
    }
    Ok(AdmissibleSurface::new(target, s.loops().clone(), pieces)?)
}

#[cfg(test)]
mod tests;
