use std::collections::BTreeSet;

use super::{ComplexBuilder, ComplexError, Letter, TwoComplex};

/// A set of cell ids of a fixed complex, split by dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CellSet {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    pub faces: BTreeSet<usize>,
}

impl CellSet {
    pub fn all(x: &TwoComplex) -> Self {
        CellSet {
            vertices: (0..x.num_vertices()).collect(),
            edges: (0..x.num_edges()).collect(),
            faces: (0..x.num_faces()).collect(),
        }
    }

    pub fn faces(ids: impl IntoIterator<Item = usize>) -> Self {
        CellSet { faces: ids.into_iter().collect(), ..Default::default() }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty() && self.faces.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len() + self.edges.len() + self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges) && self.faces.is_subset(&other.faces)
    }

    pub fn intersection(&self, other: &CellSet) -> CellSet {
        CellSet {
            vertices: self.vertices.intersection(&other.vertices).copied().collect(),
            edges: self.edges.intersection(&other.edges).copied().collect(),
            faces: self.faces.intersection(&other.faces).copied().collect(),
        }
    }

    pub fn union(&self, other: &CellSet) -> CellSet {
        CellSet {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
            faces: self.faces.union(&other.faces).copied().collect(),
        }
    }

    /// True when faces' edges and edges' endpoints are all present.
    pub fn is_closed_in(&self, x: &TwoComplex) -> bool {
        self.faces.iter().all(|&f| x.face(f).word.iter().all(|l| self.edges.contains(&l.edge)))
            && self.edges.iter().all(|&e| self.vertices.contains(&x.edge(e).src) && self.vertices.contains(&x.edge(e).dst))
    }
}

/// A closed set of cells of some parent complex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Subcomplex {
    pub cells: CellSet,
}

impl Subcomplex {
    pub(crate) fn from_closed(cells: CellSet) -> Self {
        Subcomplex { cells }
    }

    /// Closes `cells` under the boundary relation.
    pub fn induced(x: &TwoComplex, cells: &CellSet) -> Result<Self, ComplexError> {
        if let Some(&v) = cells.vertices.iter().find(|&&v| v >= x.num_vertices()) {
            return Err(ComplexError::UnknownCell(v));
        }
        if let Some(&e) = cells.edges.iter().find(|&&e| e >= x.num_edges()) {
            return Err(ComplexError::UnknownCell(e));
        }
        if let Some(&f) = cells.faces.iter().find(|&&f| f >= x.num_faces()) {
            return Err(ComplexError::UnknownCell(f));
        }
        let mut c = cells.clone();
        for &f in &cells.faces {
            c.edges.extend(x.face(f).word.iter().map(|l| l.edge));
        }
        for &e in &c.edges.clone() {
            c.vertices.insert(x.edge(e).src);
            c.vertices.insert(x.edge(e).dst);
        }
        Ok(Subcomplex { cells: c })
    }

    /// Validates that `cells` is already closed.
    pub fn new(x: &TwoComplex, cells: CellSet) -> Result<Self, ComplexError> {
        let closed = Self::induced(x, &cells)?;
        if closed.cells != cells {
            return Err(ComplexError::Parse { line: 0, msg: "cell set is not closed under boundary".into() });
        }
        Ok(closed)
    }

    pub fn full(x: &TwoComplex) -> Self {
        Subcomplex { cells: CellSet::all(x) }
    }

    pub fn contains_face(&self, f: usize) -> bool {
        self.cells.faces.contains(&f)
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex { cells: self.cells.intersection(&other.cells) }
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex { cells: self.cells.union(&other.cells) }
    }

    /// The subcomplex as a standalone complex plus the inclusion maps (new id -> parent id)
    /// for vertices, edges and faces.
    pub fn extract(&self, x: &TwoComplex) -> (TwoComplex, Inclusion) {
        let vmap: Vec<usize> = self.cells.vertices.iter().copied().collect();
        let emap: Vec<usize> = self.cells.edges.iter().copied().collect();
        let fmap: Vec<usize> = self.cells.faces.iter().copied().collect();
        let vinv = |v: usize| vmap.binary_search(&v).expect("closed subcomplex");
        let einv = |e: usize| emap.binary_search(&e).expect("closed subcomplex");
        let mut b = ComplexBuilder::new();
        for &v in &vmap {
            b.vertex(x.vertex_name(v));
        }
        for &e in &emap {
            let ed = x.edge(e);
            b.edge(ed.name.clone(), vinv(ed.src), vinv(ed.dst));
        }
        for &f in &fmap {
            let face = x.face(f);
            let word = face.word.iter().map(|l| Letter { edge: einv(l.edge), inverse: l.inverse }).collect();
            b.face(face.name.clone(), word);
        }
        let sub = b.build().expect("closed subcomplex of a valid complex is valid");
        (sub, Inclusion { vertices: vmap, edges: emap, faces: fmap })
    }
}

/// Cell maps of an inclusion, indexed by the small complex's ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub faces: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_faces() -> TwoComplex {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        for n in ["a", "b", "c", "d"] {
            b.edge(n, v, v);
        }
        b.face_str("f1", "a b a- b- c-").unwrap();
        b.face_str("f2", "c d").unwrap();
        b.build().unwrap()
    }

    #[test]
    fn closure_of_one_face() {
        let x = two_faces();
        let s = Subcomplex::induced(&x, &CellSet::faces([0])).unwrap();
        assert_eq!(s.cells.edges, [0, 1, 2].into_iter().collect());
        assert_eq!(s.cells.vertices.len(), 1);
        assert!(s.cells.is_closed_in(&x));
        let (sub, inc) = s.extract(&x);
        assert_eq!(sub.euler_characteristic(), -1);
        assert_eq!(inc.edges, vec![0, 1, 2]);
    }

    #[test]
    fn all_and_empty() {
        let x = two_faces();
        assert_eq!(Subcomplex::induced(&x, &CellSet::all(&x)).unwrap(), Subcomplex::full(&x));
        assert!(Subcomplex::induced(&x, &CellSet::default()).unwrap().cells.is_empty());
        assert!(Subcomplex::induced(&x, &CellSet::faces([7])).is_err());
        assert!(Subcomplex::new(&x, CellSet::faces([0])).is_err());
    }
}
