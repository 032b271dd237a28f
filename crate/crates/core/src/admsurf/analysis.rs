use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{AdmError, AdmissibleSurface, End, FreeArc, Slot};
use crate::cellcx::{ComplexBuilder, Letter, TwoComplex, UnionFind};
use crate::homlin::{cone_homology, ConeHomology, EdgeLoop, Ring};

/// Pieces of one connected component of the surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    pub vpieces: Vec<usize>,
    pub hpieces: Vec<usize>,
    pub fpieces: Vec<usize>,
    /// Indices into the boundary circuits.
    pub circuits: Vec<usize>,
}

impl SurfaceComponent {
    pub fn euler_characteristic(&self) -> i64 {
        self.vpieces.len() as i64 - self.hpieces.len() as i64 + self.fpieces.len() as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    /// Total degree of the boundary on each circle.
    pub per_circle: Vec<i64>,
    /// The common positive degree, if every circle receives it.
    pub n: Option<i64>,
}

impl DegreeReport {
    pub fn scl_admissible(&self) -> bool {
        self.n.is_some()
    }
}

/// Image of the fundamental class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushforward {
    /// Coefficient per target face of `Σ sign·face − Σ homotopy certificates`.
    pub chain: Vec<BigInt>,
    pub circle_degrees: Vec<i64>,
    /// The corresponding 2-cycle of the mapping cone.
    pub cone_cycle: Vec<BigInt>,
    pub coordinates: Vec<BigRational>,
    pub homology: ConeHomology,
}

/// `Σ` with vertex discs collapsed to vertices and handles to edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarComplex {
    pub complex: TwoComplex,
    /// Target cell under each vertex, edge and face.
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub face_map: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StandardFormReport {
    pub transverse: bool,
    pub incompressible: bool,
    pub disc_sphere_free: bool,
    pub monotone: bool,
    pub connected_links: bool,
    pub non_folded: bool,
    pub orientation_perfect: bool,
    /// Components with positive Euler characteristic.
    pub positive_components: Vec<usize>,
    /// Circles receiving boundary degrees of both signs.
    pub mixed_circles: Vec<usize>,
    /// Vertex discs whose link in the collapsed complex is disconnected.
    pub disconnected_links: Vec<usize>,
    /// Components carrying cellular discs of both orientation types.
    pub folded_components: Vec<usize>,
    /// Target faces covered with both orientations.
    pub mixed_faces: Vec<usize>,
}

impl StandardFormReport {
    /// Every predicate of the standard form, with incompressibility as certified input.
    pub fn is_standard(&self) -> bool {
        self.transverse && self.incompressible && self.disc_sphere_free && self.monotone && self.connected_links && self.non_folded
    }

    pub fn is_perfect(&self) -> bool {
        self.is_standard() && self.orientation_perfect
    }
}

impl AdmissibleSurface {
    pub fn components(&self) -> Vec<SurfaceComponent> {
        let (nv, nh, nf) = (self.vpieces().len(), self.hpieces().len(), self.fpieces().len());
        let mut uf = UnionFind::new(nv + nh + nf);
        for (d, vp) in self.vpieces().iter().enumerate() {
            for s in &vp.slots {
                if let Slot::End(h, _) = s {
                    uf.union(d, nv + h);
                }
            }
        }
        for (f, fp) in self.fpieces().iter().enumerate() {
            for &h in &fp.sides {
                uf.union(nv + nh + f, nv + h);
            }
        }
        let labels = uf.labels();
        let mut order: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comps: Vec<SurfaceComponent> = Vec::new();
        let mut slot = |l: usize, comps: &mut Vec<SurfaceComponent>| -> usize {
            let next = order.len();
            let i = *order.entry(l).or_insert(next);
            if i == comps.len() {
                comps.push(SurfaceComponent { vpieces: vec![], hpieces: vec![], fpieces: vec![], circuits: vec![] });
            }
            i
        };
        for d in 0..nv {
            let i = slot(labels[d], &mut comps);
            comps[i].vpieces.push(d);
        }
        for h in 0..nh {
            let i = slot(labels[nv + h], &mut comps);
            comps[i].hpieces.push(h);
        }
        for f in 0..nf {
            let i = slot(labels[nv + nh + f], &mut comps);
            comps[i].fpieces.push(f);
        }
        for (c, circ) in self.circuits().iter().enumerate() {
            let piece = match circ.arcs[0] {
                FreeArc::Side(h, _) => nv + h,
                FreeArc::Slot(d, _) | FreeArc::Corner(d, _) | FreeArc::Loop(d) => d,
            };
            let i = order[&labels[piece]];
            comps[i].circuits.push(c);
        }
        comps
    }

    /// `χ⁻`: sum of `min(0, χ)` over components.
    pub fn reduced_euler(&self) -> i64 {
        self.components().iter().map(|c| c.euler_characteristic().min(0)).sum()
    }

    pub fn degree(&self) -> DegreeReport {
        let mut per_circle = vec![0i64; self.loops().len()];
        for a in self.assignments() {
            per_circle[a.circle] += a.degree;
        }
        let n = match per_circle.first() {
            Some(&d) if d > 0 && per_circle.iter().all(|&e| e == d) => Some(d),
            _ => None,
        };
        DegreeReport { per_circle, n }
    }

    pub fn edge_loops(&self) -> Vec<EdgeLoop> {
        self.loops().iter().map(|l| l.edge_loop.clone()).collect()
    }

    /// The pushed-forward 2-chain and its class in `H2(S, c)`.
    pub fn pushforward_class(&self, ring: Ring) -> Result<Pushforward, AdmError> {
        let x = self.complex();
        let mut chain = vec![BigInt::from(0); x.num_faces()];
        for f in self.fpieces() {
            chain[f.face] += f.sign;
        }
        for a in self.assignments() {
            for (&f, &k) in &a.homotopy {
                chain[f] -= k;
            }
        }
        let circle_degrees = self.degree().per_circle;
        let homology = cone_homology(x, &self.edge_loops(), ring)?;
        let mut cone_cycle = chain.clone();
        for (i, &len) in homology.cone.circle_lengths.iter().enumerate() {
            cone_cycle.extend(std::iter::repeat_n(BigInt::from(circle_degrees[i]), len));
        }
        let coordinates = homology.coordinates(&cone_cycle).ok_or_else(|| {
            AdmError::BoundaryMismatch("pushed-forward chain does not close up to a cone cycle".into())
        })?;
        Ok(Pushforward { chain, circle_degrees, cone_cycle, coordinates, homology })
    }

    pub fn collapse(&self) -> BarComplex {
        let x = self.complex();
        let mut b = ComplexBuilder::new();
        for vp in self.vpieces() {
            b.vertex(vp.name.clone());
        }
        for (h, hp) in self.hpieces().iter().enumerate() {
            let (s, _) = self.handle_end(h, End::Src);
            let (t, _) = self.handle_end(h, End::Dst);
            b.edge(hp.name.clone(), s, t);
        }
        for fp in self.fpieces() {
            let word = x.face(fp.face).word.iter().zip(&fp.sides).map(|(l, &h)| Letter { edge: h, inverse: l.inverse }).collect();
            b.face(fp.name.clone(), word);
        }
        BarComplex {
            complex: b.build().expect("collapsed pieces form a 2-complex"),
            vertex_map: self.vpieces().iter().map(|v| v.vertex).collect(),
            edge_map: self.hpieces().iter().map(|h| h.edge).collect(),
            face_map: self.fpieces().iter().map(|f| f.face).collect(),
        }
    }

    pub fn standard_form_report(&self) -> StandardFormReport {
        let comps = self.components();
        let positive_components: Vec<usize> =
            comps.iter().enumerate().filter(|(_, c)| c.euler_characteristic() > 0).map(|(i, _)| i).collect();

        let mut signs: Vec<(bool, bool)> = vec![(false, false); self.loops().len()];
        for a in self.assignments() {
            let s = &mut signs[a.circle];
            if a.degree > 0 {
                s.0 = true;
            } else {
                s.1 = true;
            }
        }
        let mixed_circles: Vec<usize> = signs.iter().enumerate().filter(|(_, s)| s.0 && s.1).map(|(i, _)| i).collect();

        let bar = self.collapse();
        let disconnected_links: Vec<usize> = (0..bar.complex.num_vertices())
            .filter(|&v| bar.complex.link_graph(v).map(|g| g.num_components() > 1).unwrap_or(true))
            .collect();

        let folded_components: Vec<usize> = comps
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                let t: Vec<i64> = c.fpieces.iter().map(|&f| self.orientation_type(f)).collect();
                t.iter().any(|&s| s != t[0])
            })
            .map(|(i, _)| i)
            .collect();

        let mut by_face: BTreeMap<usize, (bool, bool)> = BTreeMap::new();
        for fp in self.fpieces() {
            let e = by_face.entry(fp.face).or_default();
            if fp.sign > 0 {
                e.0 = true;
            } else {
                e.1 = true;
            }
        }
        let mixed_faces: Vec<usize> = by_face.iter().filter(|(_, s)| s.0 && s.1).map(|(&f, _)| f).collect();

        StandardFormReport {
            transverse: true,
            incompressible: self.incompressible(),
            disc_sphere_free: positive_components.is_empty(),
            monotone: mixed_circles.is_empty(),
            connected_links: disconnected_links.is_empty(),
            non_folded: folded_components.is_empty(),
            orientation_perfect: mixed_faces.is_empty(),
            positive_components,
            mixed_circles,
            disconnected_links,
            folded_components,
            mixed_faces,
        }
    }
}
