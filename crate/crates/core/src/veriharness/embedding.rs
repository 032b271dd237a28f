use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::admsurf::{AdmissibleSurface, NamedLoop, Target};
use crate::cellcx::{Inclusion, Letter, Subcomplex, TwoComplex};
use crate::homlin::{cone_homology, smith_normal_form, EdgeLoop, IntMatrix, Ring};
use crate::par::{self, ExecPolicy};
use crate::sclopt::{scl_lp, OneChain, SclValue};

use super::containment::{check_h1_injectivity, verify_theorem_main, H1Report, Verdict};
use super::{HarnessError, Mode, Spine};

/// Carries a surface over `T` to the same surface over `S` through a subcomplex inclusion.
pub fn retarget(s: &AdmissibleSurface, inc: &Inclusion, ambient: Arc<Target>) -> Result<AdmissibleSurface, HarnessError> {
    let mut pieces = s.pieces().clone();
    for v in &mut pieces.vpieces {
        v.vertex = inc.vertices[v.vertex];
    }
    for h in &mut pieces.hpieces {
        h.edge = inc.edges[h.edge];
    }
    for f in &mut pieces.fpieces {
        f.face = inc.faces[f.face];
    }
    for a in &mut pieces.assignments {
        a.homotopy = a.homotopy.iter().map(|(&f, &k)| (inc.faces[f], k)).collect();
    }
    let loops: Vec<NamedLoop> = s.loops().iter().map(|l| map_loop(l, inc)).collect();
    Ok(AdmissibleSurface::new(ambient, Arc::new(loops), pieces)?)
}

fn map_loop(l: &NamedLoop, inc: &Inclusion) -> NamedLoop {
    let word = l.edge_loop.word.iter().map(|m| Letter { edge: inc.edges[m.edge], inverse: m.inverse }).collect();
    NamedLoop { name: l.name.clone(), edge_loop: EdgeLoop::new(word, l.edge_loop.mult) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainComparison {
    pub chain: String,
    pub image: String,
    pub sub: SclValue,
    pub ambient: SclValue,
    pub boundary: bool,
    /// Boundaries: equal values. Other chains: infinite on both sides.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    pub sub_basis: String,
    pub ambient_basis: String,
    /// Generator images as words over the ambient basis.
    pub images: Vec<String>,
    pub h1: H1Report,
    pub rows: Vec<ChainComparison>,
    pub holds: bool,
}

/// scl of each chain over `π₁T` against scl of its image in `π₁S`.
pub fn theorem_a_harness(
    x: &TwoComplex,
    t: &Subcomplex,
    chains: &[OneChain],
    policy: ExecPolicy,
) -> Result<TheoremAReport, HarnessError> {
    let h1 = check_h1_injectivity(x, t)?;
    if !h1.boundary_nonempty {
        return Err(HarnessError::Precondition("the ambient surface has empty boundary".into()));
    }
    let (tx, inc) = t.extract(x);
    let small = Spine::new(&tx)?;
    let big = Spine::new(x)?;
    let images = Spine::inclusion_images(&small, &tx, &big, &inc);
    let render = |w: &[i32]| -> String {
        if w.is_empty() {
            "1".into()
        } else {
            OneChain { basis: big.names.clone(), terms: vec![] }.format_word(w)
        }
    };
    if let Some(c) = chains.iter().find(|c| c.basis.len() != small.rank()) {
        return Err(HarnessError::Input(format!("chain `{c}` is not over a basis of rank {}", small.rank())));
    }
    let rows = par::map(policy, chains, |c| -> Result<ChainComparison, HarnessError> {
        let image = c.substitute(&images, &big.names)?;
        let sub = scl_lp(c, policy)?.value;
        let ambient = scl_lp(&image, policy)?.value;
        let boundary = c.is_boundary();
        let holds = if boundary { sub == ambient } else { sub == SclValue::Infinite && ambient == SclValue::Infinite };
        Ok(ChainComparison { chain: c.to_string(), image: image.to_string(), sub, ambient, boundary, holds })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let holds = h1.injective && rows.iter().all(|r| r.holds);
    Ok(TheoremAReport {
        sub_basis: small.names.iter().collect(),
        ambient_basis: big.names.iter().collect(),
        images: images.iter().map(|w| render(w)).collect(),
        h1,
        rows,
        holds,
    })
}

/// Homologically trivial chains over a free basis of rank `rank` (at least two), with
/// every word of length at most 8. Ranks of four and more add chains using `c` and `d`.
pub fn chain_corpus(rank: usize) -> Vec<OneChain> {
    let basis = OneChain::standard_basis(rank);
    let mut texts: Vec<&str> = vec![
        "[a,b]",
        "[a,b]^2",
        "[aa,b]",
        "[a,bb]",
        "[ab,aB]",
        "[a,b][a,B]",
        "abAB + baBA",
        "a + b + BA",
        "aab + ABB + Ab",
        "abAAB + a",
        "aabb + AB + AB",
        "[a,b] + [a,B]",
        "2*ab + BA + BA",
    ];
    if rank >= 4 {
        texts.extend(["[a,b][c,d]", "[a,c][b,d]", "[ab,cd]", "[a,b] + [c,d]", "acAC + cbCB + baBA"]);
    }
    texts.iter().map(|t| OneChain::parse(t, &basis).expect("corpus chain parses")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTransport {
    pub name: String,
    /// `−2χ⁻/n` over `T` and over `S`.
    pub bound_in_t: String,
    pub bound_in_s: String,
    pub equal: bool,
    pub containment: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremBReport {
    pub rank_h2_t_c: usize,
    pub rank_h2_s_c: usize,
    pub rank_image: usize,
    pub injective: bool,
    pub witnesses: Vec<WitnessTransport>,
    pub holds: bool,
    pub scope: String,
}

fn norm_bound(s: &AdmissibleSurface) -> Result<BigRational, HarnessError> {
    let n = s.degree().n.ok_or_else(|| HarnessError::Precondition("witness does not have uniform positive degree".into()))?;
    Ok(BigRational::new(BigInt::from(-2 * s.reduced_euler()), BigInt::from(n)))
}

/// The computable part of the seminorm statement: `H2(T, c) → H2(S, c)` is injective and
/// every witness over `T` gives the same bound over `S`. Equality of the seminorms for every
/// class is not computed.
pub fn theorem_b_harness(
    x: &TwoComplex,
    t: &Subcomplex,
    witnesses: &[(String, AdmissibleSurface)],
    ring: Ring,
) -> Result<TheoremBReport, HarnessError> {
    let (tx, inc) = t.extract(x);
    let first = witnesses.first().ok_or_else(|| HarnessError::Input("no witness surfaces".into()))?;
    let t_loops: Vec<EdgeLoop> = first.1.edge_loops();
    let s_loops: Vec<EdgeLoop> = first.1.loops().iter().map(|l| map_loop(l, &inc).edge_loop).collect();
    let ht = cone_homology(&tx, &t_loops, ring)?;
    let hs = cone_homology(x, &s_loops, ring)?;
    let lifted: Vec<Vec<BigInt>> = ht
        .h2_basis
        .iter()
        .map(|z| {
            let mut v = vec![BigInt::zero(); hs.cone.chain.dims[2]];
            for (f, c) in z.iter().take(tx.num_faces()).enumerate() {
                v[inc.faces[f]] += c;
            }
            for (k, c) in z.iter().skip(tx.num_faces()).enumerate() {
                v[x.num_faces() + k] += c;
            }
            v
        })
        .collect();
    for z in &lifted {
        if hs.coordinates(z).is_none() {
            return Err(HarnessError::Internal("a relative cycle of T is not a cycle of S".into()));
        }
    }
    let rank_image = if lifted.is_empty() { 0 } else { IntMatrix::from_columns(lifted[0].len(), &lifted).rank() };
    let ambient = Arc::new(Target::new(x.clone())?);
    let mut out = Vec::new();
    for (name, w) in witnesses {
        if w.edge_loops() != t_loops {
            return Err(HarnessError::Input(format!("witness {name} bounds a different chain")));
        }
        let lifted = retarget(w, &inc, ambient.clone())?;
        let (bt, bs) = (norm_bound(w)?, norm_bound(&lifted)?);
        let containment = match verify_theorem_main(&lifted, t, ring, Mode::Perfect) {
            Ok(r) => Some(r.verdict),
            Err(HarnessError::Precondition(_)) => None,
            Err(e) => return Err(e),
        };
        out.push(WitnessTransport {
            name: name.clone(),
            equal: bt == bs,
            bound_in_t: bt.to_string(),
            bound_in_s: bs.to_string(),
            containment,
        });
    }
    let injective = rank_image == ht.h2_basis.len();
    let holds = injective && out.iter().all(|w| w.equal && w.containment.as_ref().is_none_or(|v| *v == Verdict::Contained));
    Ok(TheoremBReport {
        rank_h2_t_c: ht.summary.betti(2),
        rank_h2_s_c: hs.summary.betti(2),
        rank_image,
        injective,
        witnesses: out,
        holds,
        scope: "bound transport and H2 injectivity only; the seminorms are not computed".into(),
    })
}

/// Difference of the pushed-forward classes of two surfaces bounding the same chain, as a
/// multiple of the generator of `H2(S)` (when that group has rank one).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassDifference {
    pub coordinates_a: Vec<String>,
    pub coordinates_b: Vec<String>,
    /// Face chain of `a − b`.
    pub difference: Vec<String>,
    pub is_absolute_cycle: bool,
    pub rank_h2_s: usize,
    /// `a − b = k · [S]`.
    pub multiple_of_fundamental: Option<String>,
}

pub fn class_difference(a: &AdmissibleSurface, b: &AdmissibleSurface, ring: Ring) -> Result<ClassDifference, HarnessError> {
    let pa = a.pushforward_class(ring)?;
    let pb = b.pushforward_class(ring)?;
    if pa.circle_degrees != pb.circle_degrees {
        return Err(HarnessError::Input("surfaces have different boundary degrees".into()));
    }
    let x = a.complex();
    let diff: Vec<BigInt> = pa.chain.iter().zip(&pb.chain).map(|(p, q)| p - q).collect();
    let (d2, _) = crate::homlin::boundary_matrices(x, ring);
    let is_absolute_cycle = d2.mul_vec(&diff).iter().all(Zero::is_zero);
    let gens = smith_normal_form(&d2).kernel_basis();
    let multiple = match (is_absolute_cycle, gens.as_slice()) {
        (true, [g]) => {
            let i = g.iter().position(|c| !c.is_zero()).expect("nonzero generator");
            let k = BigRational::new(diff[i].clone(), g[i].clone());
            let consistent = g.iter().zip(&diff).all(|(gc, dc)| BigRational::from_integer(gc.clone()) * &k == BigRational::from_integer(dc.clone()));
            consistent.then(|| k.to_string())
        }
        _ => None,
    };
    let show = |v: &[BigRational]| v.iter().map(|q| q.to_string()).collect();
    Ok(ClassDifference {
        coordinates_a: show(&pa.coordinates),
        coordinates_b: show(&pb.coordinates),
        difference: diff.iter().map(|d| d.to_string()).collect(),
        is_absolute_cycle,
        rank_h2_s: gens.len(),
        multiple_of_fundamental: multiple,
    })
}
