use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::admsurf::{AdmissibleSurface, Side};
use crate::cellcx::{CellSet, Subcomplex, TwoComplex};
use crate::homlin::{homology, is_orientable, relative_homology, smith_normal_form, IntMatrix, Ring};

use super::{HarnessError, Mode};

/// Outcome of running the containment argument on one admissible surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Contained,
    /// The homological hypothesis does not hold; nothing is claimed.
    HypothesisFails,
    /// A step of the argument failed although its hypotheses held.
    StepFails,
    /// The argument and the direct inspection disagree.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellNames {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub faces: Vec<String>,
}

impl CellNames {
    fn of(x: &TwoComplex, c: &CellSet) -> Self {
        CellNames {
            vertices: c.vertices.iter().map(|&v| x.vertex_name(v).to_string()).collect(),
            edges: c.edges.iter().map(|&e| x.edge(e).name.clone()).collect(),
            faces: c.faces.iter().map(|&f| x.face(f).name.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceVerdict {
    pub piece: String,
    pub face: String,
    pub in_t: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub holds: bool,
    /// Rank of `H2(S, T)` (mode standard) or of `H2(S0, T0)`.
    pub rank_h2_rel: usize,
    /// Coefficients of the pushed-forward 2-chain on faces outside `T` (mode perfect).
    pub class_outside: Vec<(String, String)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub mode: Mode,
    pub ring: String,
    pub image: CellNames,
    pub image_in_t: CellNames,
    pub boundary_in_t: bool,
    pub image_small_links: bool,
    pub image_orientable: bool,
    pub hypothesis: Hypothesis,
    /// The same hypothesis restricted to the image pair `(S0, T0)`.
    pub image_hypothesis: Hypothesis,
    /// Every boundary edge of the image is covered by a handle with a free long side.
    pub boundary_claim: bool,
    /// Every vertex and edge of the image meets a 2-cell of the image.
    pub no_isolated_cells: bool,
    pub faces: Vec<FaceVerdict>,
    pub proof_contained: bool,
    pub direct_contained: bool,
    pub verdict: Verdict,
}

impl ContainmentReport {
    /// Proof path and direct inspection agree whenever the argument concludes.
    pub fn agrees(&self) -> bool {
        !self.proof_contained || self.direct_contained
    }
}

/// Image subcomplex: every vertex, edge and face hit by a piece.
pub fn image_subcomplex(s: &AdmissibleSurface) -> Subcomplex {
    let x = s.complex();
    let mut cells = CellSet::default();
    cells.vertices.extend(s.vpieces().iter().map(|v| v.vertex));
    cells.edges.extend(s.hpieces().iter().map(|h| h.edge));
    cells.faces.extend(s.fpieces().iter().map(|f| f.face));
    Subcomplex::induced(x, &cells).expect("pieces name cells of the target")
}

fn pushforward(s: &AdmissibleSurface) -> Vec<BigInt> {
    let mut chain = vec![BigInt::zero(); s.complex().num_faces()];
    for f in s.fpieces() {
        chain[f.face] += f.sign;
    }
    for a in s.assignments() {
        for (&f, &k) in &a.homotopy {
            chain[f] -= k;
        }
    }
    chain
}

fn hypothesis(
    x: &TwoComplex,
    within: &Subcomplex,
    t: &Subcomplex,
    chain: &[BigInt],
    mode: Mode,
    ring: Ring,
) -> Result<Hypothesis, HarnessError> {
    let (sub, inc) = within.extract(x);
    let local_t = CellSet {
        vertices: (0..inc.vertices.len()).filter(|&i| t.cells.vertices.contains(&inc.vertices[i])).collect(),
        edges: (0..inc.edges.len()).filter(|&i| t.cells.edges.contains(&inc.edges[i])).collect(),
        faces: (0..inc.faces.len()).filter(|&i| t.cells.faces.contains(&inc.faces[i])).collect(),
    };
    let local_t = Subcomplex::new(&sub, local_t).map_err(|e| HarnessError::Input(e.to_string()))?;
    let rank = relative_homology(&sub, &local_t, ring)?.betti(2);
    let class_outside: Vec<(String, String)> = (0..x.num_faces())
        .filter(|&f| !t.contains_face(f) && !chain[f].is_zero())
        .map(|f| (x.face(f).name.clone(), chain[f].to_string()))
        .collect();
    Ok(match mode {
        Mode::Standard => Hypothesis {
            holds: rank == 0,
            rank_h2_rel: rank,
            class_outside,
            detail: format!("H2 rank {rank} over {ring}"),
        },
        // With no 3-cells a relative 2-class vanishes exactly when its chain does.
        Mode::Perfect => Hypothesis {
            holds: class_outside.is_empty(),
            detail: if class_outside.is_empty() {
                "pushed-forward class vanishes".into()
            } else {
                format!("pushed-forward class is nonzero on {} face(s) outside T", class_outside.len())
            },
            rank_h2_rel: rank,
            class_outside,
        },
    })
}

/// Runs the containment argument for `Σ → S` relative to `T ⊆ S` and rechecks the
/// conclusion cell by cell.
pub fn verify_theorem_main(
    s: &AdmissibleSurface,
    t: &Subcomplex,
    ring: Ring,
    mode: Mode,
) -> Result<ContainmentReport, HarnessError> {
    let x = s.complex();
    if !t.cells.is_closed_in(x) {
        return Err(HarnessError::Precondition("T is not a subcomplex of the target".into()));
    }
    for l in s.loops().iter() {
        if let Some(bad) = l.edge_loop.word.iter().find(|l| !t.cells.edges.contains(&l.edge)) {
            return Err(HarnessError::Precondition(format!("boundary loop {} leaves T along {}", l.name, x.edge(bad.edge).name)));
        }
    }
    let report = s.standard_form_report();
    let mut missing = Vec::new();
    if !report.non_folded {
        missing.push("non_folded");
    }
    if !report.connected_links {
        missing.push("connected_links");
    }
    if !report.disc_sphere_free {
        missing.push("disc_sphere_free");
    }
    if mode == Mode::Perfect && !report.orientation_perfect {
        missing.push("orientation_perfect");
    }
    if !missing.is_empty() {
        return Err(HarnessError::Precondition(format!("surface is not in {mode} form: fails {}", missing.join(", "))));
    }

    let s0 = image_subcomplex(s);
    let t0 = s0.intersection(t);
    let chain = pushforward(s);
    let (s0x, inc) = s0.extract(x);
    let image_small_links = s0x.has_small_links().holds;
    let image_orientable = is_orientable(&s0x, ring).is_some();
    let hyp = hypothesis(x, &Subcomplex::full(x), t, &chain, mode, ring)?;
    let image_hyp = hypothesis(x, &s0, &t0, &chain, mode, ring)?;

    let bdry = s0x.boundary_subcomplex();
    let boundary_claim = bdry.cells.edges.iter().all(|&e| {
        let e = inc.edges[e];
        t.cells.edges.contains(&e)
            && s.hpieces().iter().enumerate().any(|(h, hp)| {
                hp.edge == e && (s.handle_side(h, Side::Left).is_none() || s.handle_side(h, Side::Right).is_none())
            })
    });
    let mut touched = CellSet::default();
    for f in 0..s0x.num_faces() {
        for l in &s0x.face(f).word {
            touched.edges.insert(l.edge);
            touched.vertices.insert(s0x.edge(l.edge).src);
            touched.vertices.insert(s0x.edge(l.edge).dst);
        }
    }
    let no_isolated_cells = touched.edges.len() == s0x.num_edges() && touched.vertices.len() == s0x.num_vertices();

    let faces: Vec<FaceVerdict> = s
        .fpieces()
        .iter()
        .map(|f| FaceVerdict { piece: f.name.clone(), face: x.face(f.face).name.clone(), in_t: t.contains_face(f.face) })
        .collect();
    let direct_contained = s0.cells.is_subset(&t.cells) && faces.iter().all(|f| f.in_t);

    let steps = image_small_links && image_orientable && boundary_claim && no_isolated_cells && image_hyp.holds;
    let proof_contained = hyp.holds && steps;
    let verdict = if !hyp.holds {
        Verdict::HypothesisFails
    } else if !steps {
        Verdict::StepFails
    } else if direct_contained {
        Verdict::Contained
    } else {
        Verdict::Inconsistent
    };
    Ok(ContainmentReport {
        mode,
        ring: ring.to_string(),
        image: CellNames::of(x, &s0.cells),
        image_in_t: CellNames::of(x, &t0.cells),
        boundary_in_t: true,
        image_small_links,
        image_orientable,
        hypothesis: hyp,
        image_hypothesis: image_hyp,
        boundary_claim,
        no_isolated_cells,
        faces,
        proof_contained,
        direct_contained,
        verdict,
    })
}

/// `H1(T; Q) → H1(S; Q)` together with `H2(S, T; Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Report {
    pub rank_h1_t: usize,
    pub rank_h1_s: usize,
    pub rank_image: usize,
    pub injective: bool,
    pub rank_h2_rel: usize,
    pub rank_h2_s: usize,
    pub boundary_nonempty: bool,
    /// Injectivity forces `H2(S, T) = 0` once `∂S ≠ ∅`.
    pub implication_holds: bool,
}

/// Rank of `H1(T) → H1(S)` over Q: cycles of `T` modulo boundaries of `S`.
pub fn check_h1_injectivity(x: &TwoComplex, t: &Subcomplex) -> Result<H1Report, HarnessError> {
    let (tx, inc) = t.extract(x);
    let cycles: Vec<Vec<BigInt>> = {
        let d1 = crate::homlin::boundary_matrices(&tx, Ring::Q).1;
        smith_normal_form(&d1).kernel_basis()
    };
    let lifted: Vec<Vec<BigInt>> = cycles
        .iter()
        .map(|z| {
            let mut v = vec![BigInt::zero(); x.num_edges()];
            for (i, c) in z.iter().enumerate() {
                v[inc.edges[i]] += c;
            }
            v
        })
        .collect();
    let (d2, _) = crate::homlin::boundary_matrices(x, Ring::Q);
    let (d2t, _) = crate::homlin::boundary_matrices(&tx, Ring::Q);
    let rank_b_s = d2.rank();
    let rank_image = if lifted.is_empty() {
        0
    } else {
        d2.hcat(&IntMatrix::from_columns(x.num_edges(), &lifted)).rank() - rank_b_s
    };
    let rank_h1_t = cycles.len() - d2t.rank();
    let hs = homology(x, Ring::Q);
    let rank_h2_rel = relative_homology(x, t, Ring::Q)?.betti(2);
    let boundary_nonempty = !x.boundary_subcomplex().cells.edges.is_empty();
    let injective = rank_image == rank_h1_t;
    Ok(H1Report {
        rank_h1_t,
        rank_h1_s: hs.betti(1),
        rank_image,
        injective,
        rank_h2_rel,
        rank_h2_s: hs.betti(2),
        boundary_nonempty,
        implication_holds: !(boundary_nonempty && injective) || rank_h2_rel == 0,
    })
}
