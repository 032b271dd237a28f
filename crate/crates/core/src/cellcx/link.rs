use std::collections::BTreeMap;

use super::{CellSet, ComplexError, Letter, Subcomplex, TwoComplex};

/// An oriented half-edge at a vertex. `outgoing` means the edge leaves the vertex at this end
/// (the source end of the edge).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: usize,
    pub outgoing: bool,
}

impl HalfEdge {
    /// The half-edge at the start of a letter.
    pub fn leaving(l: Letter) -> Self {
        HalfEdge { edge: l.edge, outgoing: !l.inverse }
    }

    /// The half-edge at the end of a letter.
    pub fn arriving(l: Letter) -> Self {
        Self::leaving(l.inv())
    }
}

/// One corner of a face at the base vertex: corner `corner` of `face` sits between letters
/// `corner` and `corner + 1` of its word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkEdge {
    pub a: usize,
    pub b: usize,
    pub face: usize,
    pub corner: usize,
}

/// The link of a vertex, a multigraph on half-edges with corner provenance on its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkGraph {
    pub base: usize,
    pub vertices: Vec<HalfEdge>,
    pub edges: Vec<LinkEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkShape {
    Empty,
    Circle,
    Arc,
    DegenerateArc,
    /// Disconnected, or a vertex of degree > 2.
    Other,
}

impl LinkGraph {
    pub fn index_of(&self, h: HalfEdge) -> Option<usize> {
        self.vertices.iter().position(|&x| x == h)
    }

    /// Valence of each link vertex; loops count twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.a] += 1;
            d[e.b] += 1;
        }
        d
    }

    /// Component label per link vertex, labels in order of first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.a, e.b);
        }
        uf.labels()
    }

    pub fn num_components(&self) -> usize {
        self.component_labels().iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn shape(&self) -> LinkShape {
        let n = self.vertices.len();
        if n == 0 {
            return LinkShape::Empty;
        }
        if self.num_components() != 1 {
            return LinkShape::Other;
        }
        let d = self.degrees();
        if d.iter().any(|&x| x > 2) {
            return LinkShape::Other;
        }
        if n == 1 && self.edges.is_empty() {
            return LinkShape::DegenerateArc;
        }
        if d.iter().all(|&x| x == 2) {
            LinkShape::Circle
        } else {
            LinkShape::Arc
        }
    }

    /// True when every component is a circle or a (possibly degenerate) arc.
    pub fn is_union_of_arcs_and_circles(&self) -> bool {
        self.degrees().iter().all(|&d| d <= 2)
    }
}

impl TwoComplex {
    pub fn link_graph(&self, v: usize) -> Result<LinkGraph, ComplexError> {
        if v >= self.num_vertices() {
            return Err(ComplexError::UnknownCell(v));
        }
        let mut vertices = Vec::new();
        for (i, e) in self.edges().iter().enumerate() {
            if e.src == v {
                vertices.push(HalfEdge { edge: i, outgoing: true });
            }
            if e.dst == v {
                vertices.push(HalfEdge { edge: i, outgoing: false });
            }
        }
        let index: BTreeMap<HalfEdge, usize> = vertices.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let mut edges = Vec::new();
        for (fi, f) in self.faces().iter().enumerate() {
            let k = f.word.len();
            for c in 0..k {
                let l = f.word[c];
                let next = f.word[(c + 1) % k];
                if self.letter_dst(l) != v {
                    continue;
                }
                let a = index[&HalfEdge::arriving(l)];
                let b = index[&HalfEdge::leaving(next)];
                edges.push(LinkEdge { a, b, face: fi, corner: c });
            }
        }
        Ok(LinkGraph { base: v, vertices, edges })
    }

    pub fn link_graphs(&self) -> Vec<LinkGraph> {
        (0..self.num_vertices()).map(|v| self.link_graph(v).expect("vertex in range")).collect()
    }

    /// Edge-incidence formulation: every edge meets at most two face sides.
    pub fn has_small_links(&self) -> SmallLinks {
        let mut count = vec![0usize; self.num_edges()];
        for f in self.faces() {
            for l in &f.word {
                count[l.edge] += 1;
            }
        }
        match count.iter().position(|&c| c > 2) {
            Some(e) => SmallLinks { holds: false, witness: Some(e) },
            None => SmallLinks { holds: true, witness: None },
        }
    }

    /// Link formulation: every vertex link is a circle or a union of arcs.
    pub fn has_small_links_by_links(&self) -> bool {
        self.link_graphs().iter().all(|g| g.is_union_of_arcs_and_circles())
    }

    pub fn surface_check(&self) -> SurfaceReport {
        let mut boundary_vertices = Vec::new();
        let mut witnesses = Vec::new();
        for g in self.link_graphs() {
            match g.shape() {
                LinkShape::Circle => {}
                LinkShape::Arc => boundary_vertices.push(g.base),
                _ => witnesses.push(g.base),
            }
        }
        SurfaceReport { is_surface: witnesses.is_empty(), boundary_vertices, non_surface_vertices: witnesses }
    }

    /// Edges with exactly one face side, plus their endpoints.
    pub fn boundary_subcomplex(&self) -> Subcomplex {
        let mut cells = CellSet::default();
        for (e, edge) in self.edges().iter().enumerate() {
            if self.side_incidence(e) == 1 {
                cells.edges.insert(e);
                cells.vertices.insert(edge.src);
                cells.vertices.insert(edge.dst);
            }
        }
        Subcomplex::from_closed(cells)
    }

    /// Connected components, each closed under boundary, ordered by lowest vertex id.
    pub fn connected_components(&self) -> Vec<CellSet> {
        let mut uf = UnionFind::new(self.num_vertices());
        for e in self.edges() {
            uf.union(e.src, e.dst);
        }
        let labels = uf.labels();
        let n = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut comps = vec![CellSet::default(); n];
        for (v, &l) in labels.iter().enumerate() {
            comps[l].vertices.insert(v);
        }
        for (i, e) in self.edges().iter().enumerate() {
            comps[labels[e.src]].edges.insert(i);
        }
        for (i, f) in self.faces().iter().enumerate() {
            let v = self.letter_src(f.word[0]);
            comps[labels[v]].faces.insert(i);
        }
        comps
    }

    /// Sum over components of min(0, chi). Only defined for cellulated surfaces.
    pub fn reduced_euler(&self) -> Result<i64, ComplexError> {
        let report = self.surface_check();
        if !report.is_surface {
            return Err(ComplexError::Parse {
                line: 0,
                msg: format!("reduced Euler characteristic needs a surface; bad vertices {:?}", report.non_surface_vertices),
            });
        }
        Ok(self.connected_components().iter().map(|c| c.euler_characteristic().min(0)).sum())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallLinks {
    pub holds: bool,
    /// An edge with more than two incident face sides.
    pub witness: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub is_surface: bool,
    pub boundary_vertices: Vec<usize>,
    pub non_surface_vertices: Vec<usize>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Dense labels 0.. in order of first appearance.
    pub(crate) fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut map = BTreeMap::new();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let r = self.find(i);
            let next = map.len();
            out.push(*map.entry(r).or_insert(next));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::ComplexBuilder;
    use super::*;

    fn torus() -> TwoComplex {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        b.edge("a", v, v);
        b.edge("b", v, v);
        b.face_str("f", "a+ b+ a- b-").unwrap();
        b.build().unwrap()
    }

    fn disc() -> TwoComplex {
        let mut b = ComplexBuilder::new();
        let (p, q, r) = (b.vertex("p"), b.vertex("q"), b.vertex("r"));
        b.edge("x", p, q);
        b.edge("y", q, r);
        b.edge("z", r, p);
        b.face_str("f", "x y z").unwrap();
        b.build().unwrap()
    }

    #[test]
    fn torus_link_is_a_four_cycle() {
        let g = torus().link_graph(0).unwrap();
        assert_eq!(g.vertices.len(), 4);
        assert_eq!(g.edges.len(), 4);
        assert_eq!(g.shape(), LinkShape::Circle);
        let s = torus().surface_check();
        assert!(s.is_surface && s.boundary_vertices.is_empty());
        assert!(torus().boundary_subcomplex().cells.is_empty());
    }

    #[test]
    fn disc_links_are_arcs() {
        let d = disc();
        for g in d.link_graphs() {
            assert_eq!((g.vertices.len(), g.edges.len()), (2, 1));
            assert_eq!(g.shape(), LinkShape::Arc);
        }
        assert_eq!(d.surface_check().boundary_vertices, vec![0, 1, 2]);
        let bd = d.boundary_subcomplex();
        assert_eq!(bd.cells.edges.len(), 3);
        assert_eq!(bd.cells.vertices.len(), 3);
    }

    #[test]
    fn isolated_vertex_has_empty_link() {
        let mut b = ComplexBuilder::new();
        b.vertex("v");
        let x = b.build().unwrap();
        assert_eq!(x.link_graph(0).unwrap().shape(), LinkShape::Empty);
        assert!(!x.surface_check().is_surface);
        assert!(x.link_graph(1).is_err());
    }

    #[test]
    fn three_squares_on_one_edge_fail_small_links() {
        let mut b = ComplexBuilder::new();
        let p = b.vertex("p");
        let q = b.vertex("q");
        let e = b.edge("e", p, q);
        for i in 0..3 {
            let u = b.vertex(format!("u{i}"));
            let w = b.vertex(format!("w{i}"));
            b.edge(format!("s{i}"), q, u);
            b.edge(format!("t{i}"), u, w);
            b.edge(format!("r{i}"), w, p);
            b.face_str(format!("f{i}"), &format!("e s{i} t{i} r{i}")).unwrap();
        }
        let x = b.build().unwrap();
        assert_eq!(x.has_small_links(), SmallLinks { holds: false, witness: Some(e) });
        assert!(!x.has_small_links_by_links());
    }

    #[test]
    fn projective_plane_has_small_links() {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        b.edge("a", v, v);
        b.face_str("f", "a a").unwrap();
        let x = b.build().unwrap();
        assert!(x.has_small_links().holds);
        assert!(x.has_small_links_by_links());
        assert!(x.surface_check().is_surface);
    }

    #[test]
    fn wedge_of_triangles_is_not_a_surface() {
        let mut b = ComplexBuilder::new();
        let c = b.vertex("c");
        for i in 0..2 {
            let p = b.vertex(format!("p{i}"));
            let q = b.vertex(format!("q{i}"));
            b.edge(format!("x{i}"), c, p);
            b.edge(format!("y{i}"), p, q);
            b.edge(format!("z{i}"), q, c);
            b.face_str(format!("f{i}"), &format!("x{i} y{i} z{i}")).unwrap();
        }
        let x = b.build().unwrap();
        let r = x.surface_check();
        assert!(!r.is_surface);
        assert_eq!(r.non_surface_vertices, vec![c]);
    }

    #[test]
    fn euler_and_reduced_euler() {
        let mut b = ComplexBuilder::new();
        let (p, q, r) = (b.vertex("p"), b.vertex("q"), b.vertex("r"));
        b.edge("x", p, q);
        b.edge("y", q, r);
        b.edge("z", r, p);
        b.face_str("f", "x y z").unwrap();
        b.face_str("g", "z- y- x-").unwrap();
        let sphere = b.build().unwrap();
        assert_eq!(sphere.euler_characteristic(), 2);
        assert_eq!(sphere.reduced_euler().unwrap(), 0);
        let u = torus().disjoint_union(&disc());
        assert_eq!(u.connected_components().len(), 2);
        assert_eq!(u.reduced_euler().unwrap(), 0);
    }

    #[test]
    fn components_of_empty_complex() {
        assert!(TwoComplex::default().connected_components().is_empty());
    }
}
