use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("edge `{edge}` has undeclared endpoint `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("face `{face}` does not close up at position {position}")]
    NonClosingFace { face: String, position: usize },
    #[error("face `{face}` has an empty attaching word")]
    EmptyFace { face: String },
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown cell id {0}")]
    UnknownCell(usize),
    #[error("duplicate cell name `{0}`")]
    DuplicateName(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A signed edge: `inverse == false` traverses the edge from source to target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub edge: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(edge: usize) -> Self {
        Letter { edge, inverse: false }
    }

    pub fn neg(edge: usize) -> Self {
        Letter { edge, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { edge: self.edge, inverse: !self.inverse }
    }

    /// +1 or -1.
    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub name: String,
    pub word: Vec<Letter>,
}

/// A validated finite 2-complex. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwoComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
}

impl TwoComplex {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn degree(&self, f: usize) -> usize {
        self.faces[f].word.len()
    }

    pub fn letter_src(&self, l: Letter) -> usize {
        let e = &self.edges[l.edge];
        if l.inverse {
            e.dst
        } else {
            e.src
        }
    }

    pub fn letter_dst(&self, l: Letter) -> usize {
        self.letter_src(l.inv())
    }

    /// V - E + F.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn vertex_id(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|n| n == name)
    }

    pub fn edge_id(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn face_id(&self, name: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.name == name)
    }

    /// Number of sides, over all faces, glued to edge `e`.
    pub fn side_incidence(&self, e: usize) -> usize {
        self.faces.iter().map(|f| f.word.iter().filter(|l| l.edge == e).count()).sum()
    }

    /// Parses a word such as `a+ b+ a- b-` (a bare name means `+`) against this complex's edges.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>, ComplexError> {
        let index: HashMap<&str, usize> =
            self.edges.iter().enumerate().map(|(i, e)| (e.name.as_str(), i)).collect();
        parse_signed_word(text, |n| index.get(n).copied())
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|l| format!("{}{}", self.edges[l.edge].name, if l.inverse { '-' } else { '+' }))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Checks that `word` is a closed edge path.
    pub fn is_closed_path(&self, word: &[Letter]) -> bool {
        if word.is_empty() {
            return false;
        }
        (0..word.len()).all(|i| self.letter_dst(word[i]) == self.letter_src(word[(i + 1) % word.len()]))
    }

    /// Disjoint union; cells of `other` are appended after the cells of `self`.
    pub fn disjoint_union(&self, other: &TwoComplex) -> TwoComplex {
        let mut b = ComplexBuilder::new();
        let mut names = std::collections::HashSet::new();
        let fresh = |base: &str, names: &mut std::collections::HashSet<String>| {
            let mut n = base.to_string();
            while !names.insert(n.clone()) {
                n.push('\'');
            }
            n
        };
        for x in [self, other] {
            let voff = b.vertices.len();
            let eoff = b.edges.len();
            for v in &x.vertices {
                b.vertices.push(fresh(v, &mut names));
            }
            for e in &x.edges {
                b.edges.push(Edge { name: fresh(&e.name, &mut names), src: e.src + voff, dst: e.dst + voff });
            }
            for f in &x.faces {
                let word = f.word.iter().map(|l| Letter { edge: l.edge + eoff, inverse: l.inverse }).collect();
                b.faces.push(Face { name: fresh(&f.name, &mut names), word });
            }
        }
        b.build().expect("disjoint union of valid complexes is valid")
    }
}

pub(crate) fn parse_signed_word(
    text: &str,
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<Letter>, ComplexError> {
    text.split_whitespace()
        .map(|tok| {
            let (name, inverse) = if let Some(n) = tok.strip_suffix('-') {
                (n, true)
            } else if let Some(n) = tok.strip_suffix('+') {
                (n, false)
            } else {
                (tok, false)
            };
            lookup(name).map(|edge| Letter { edge, inverse }).ok_or_else(|| ComplexError::UnknownEdge(name.to_string()))
        })
        .collect()
}

/// Incremental construction of a [`TwoComplex`]; validation happens in [`ComplexBuilder::build`].
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    pub(crate) vertices: Vec<String>,
    pub(crate) edges: Vec<Edge>,
    pub(crate) faces: Vec<Face>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    pub fn edge(&mut self, name: impl Into<String>, src: usize, dst: usize) -> usize {
        self.edges.push(Edge { name: name.into(), src, dst });
        self.edges.len() - 1
    }

    pub fn face(&mut self, name: impl Into<String>, word: Vec<Letter>) -> usize {
        self.faces.push(Face { name: name.into(), word });
        self.faces.len() - 1
    }

    /// Adds a face from a textual word over the edges declared so far.
    pub fn face_str(&mut self, name: impl Into<String>, word: &str) -> Result<usize, ComplexError> {
        let edges = &self.edges;
        let w = parse_signed_word(word, |n| edges.iter().position(|e| e.name == n))?;
        Ok(self.face(name, w))
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|n| n == name)
    }

    pub fn build(self) -> Result<TwoComplex, ComplexError> {
        let mut seen = std::collections::HashSet::new();
        for n in self.vertices.iter().chain(self.edges.iter().map(|e| &e.name)).chain(self.faces.iter().map(|f| &f.name)) {
            if !seen.insert(n.as_str()) {
                return Err(ComplexError::DuplicateName(n.clone()));
            }
        }
        let nv = self.vertices.len();
        for e in &self.edges {
            for v in [e.src, e.dst] {
                if v >= nv {
                    return Err(ComplexError::DanglingEndpoint { edge: e.name.clone(), vertex: format!("#{v}") });
                }
            }
        }
        let x = TwoComplex { vertices: self.vertices, edges: self.edges, faces: self.faces };
        for f in &x.faces {
            if f.word.is_empty() {
                return Err(ComplexError::EmptyFace { face: f.name.clone() });
            }
            if let Some(l) = f.word.iter().find(|l| l.edge >= x.edges.len()) {
                return Err(ComplexError::UnknownEdge(format!("#{}", l.edge)));
            }
            let k = f.word.len();
            for i in 0..k {
                if x.letter_dst(f.word[i]) != x.letter_src(f.word[(i + 1) % k]) {
                    return Err(ComplexError::NonClosingFace { face: f.name.clone(), position: i });
                }
            }
        }
        Ok(x)
    }
}

impl fmt::Display for TwoComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::print_2cx(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> TwoComplex {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        b.edge("a", v, v);
        b.edge("b", v, v);
        b.face_str("f", "a+ b+ a- b-").unwrap();
        b.build().unwrap()
    }

    #[test]
    fn torus_is_valid_with_zero_euler_characteristic() {
        let t = torus();
        assert_eq!(t.euler_characteristic(), 0);
        assert_eq!(t.degree(0), 4);
    }

    #[test]
    fn projective_plane_face_has_degree_two() {
        let mut b = ComplexBuilder::new();
        let v = b.vertex("v");
        b.edge("a", v, v);
        b.face_str("f", "a a").unwrap();
        let x = b.build().unwrap();
        assert_eq!(x.degree(0), 2);
        assert_eq!(x.euler_characteristic(), 1);
    }

    #[test]
    fn non_closing_word_is_rejected() {
        let mut b = ComplexBuilder::new();
        let u = b.vertex("u");
        let w = b.vertex("w");
        let z = b.vertex("z");
        b.edge("a", u, w);
        b.edge("b", z, u);
        b.face_str("f", "a b").unwrap();
        assert!(matches!(b.build(), Err(ComplexError::NonClosingFace { .. })));
    }

    #[test]
    fn empty_word_and_dangling_endpoint_are_rejected() {
        let mut b = ComplexBuilder::new();
        b.vertex("v");
        b.face("f", vec![]);
        assert!(matches!(b.build(), Err(ComplexError::EmptyFace { .. })));
        let mut b = ComplexBuilder::new();
        b.vertex("v");
        b.edge("a", 0, 3);
        assert!(matches!(b.build(), Err(ComplexError::DanglingEndpoint { .. })));
    }

    #[test]
    fn disjoint_union_renames_clashes() {
        let t = torus();
        let u = t.disjoint_union(&t);
        assert_eq!(u.num_vertices(), 2);
        assert_eq!(u.euler_characteristic(), 0);
        assert_eq!(u.face(1).name, "f'");
    }
}
