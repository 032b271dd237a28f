use std::collections::{BTreeSet, VecDeque};

use super::AdmError;
use crate::cellcx::TwoComplex;

/// An oriented cellulated surface that admissible surfaces map into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub complex: TwoComplex,
    /// `+1`/`-1` per face: the coefficient of the face in the fundamental class.
    pub orientation: Vec<i64>,
    pub boundary_vertices: BTreeSet<usize>,
}

impl Target {
    pub fn new(complex: TwoComplex) -> Result<Self, AdmError> {
        let report = complex.surface_check();
        if !report.is_surface {
            return Err(AdmError::TargetNotSurface(report.non_surface_vertices));
        }
        let orientation = surface_orientation(&complex).ok_or(AdmError::TargetNotOrientable)?;
        Ok(Target { complex, orientation, boundary_vertices: report.boundary_vertices.into_iter().collect() })
    }

    pub fn is_interior(&self, v: usize) -> bool {
        !self.boundary_vertices.contains(&v)
    }
}

/// Face signs making the sum of faces a relative cycle, normalised to `+1` on the lowest face of
/// each edge-connected component; `None` if no such signs exist.
pub fn surface_orientation(x: &TwoComplex) -> Option<Vec<i64>> {
    let mut occurrences: Vec<Vec<(usize, i64)>> = vec![Vec::new(); x.num_edges()];
    for (f, face) in x.faces().iter().enumerate() {
        for l in &face.word {
            occurrences[l.edge].push((f, l.sign()));
        }
    }
    let mut eps = vec![0i64; x.num_faces()];
    for start in 0..x.num_faces() {
        if eps[start] != 0 {
            continue;
        }
        eps[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for l in &x.face(f).word {
                let occ = &occurrences[l.edge];
                if occ.len() != 2 {
                    continue;
                }
                for (i, &(g, s)) in occ.iter().enumerate() {
                    let (h, t) = occ[1 - i];
                    if g != f || s != l.sign() {
                        continue;
                    }
                    let want = -eps[f] * s * t;
                    if eps[h] == 0 {
                        eps[h] = want;
                        queue.push_back(h);
                    } else if eps[h] != want {
                        return None;
                    }
                }
            }
        }
    }
    Some(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellcx::parse_2cx;

    #[test]
    fn torus_and_projective_plane() {
        let t = parse_2cx("vertex v\nedge a v v\nedge b v v\nface f = a b a- b-\n").unwrap();
        assert_eq!(surface_orientation(&t), Some(vec![1]));
        let p = parse_2cx("vertex v\nedge a v v\nface f = a a\n").unwrap();
        assert_eq!(surface_orientation(&p), None);
        assert!(matches!(Target::new(p), Err(AdmError::TargetNotOrientable)));
    }

    #[test]
    fn opposite_faces_get_opposite_signs() {
        let s = parse_2cx("vertex u\nvertex w\nedge a u w\nedge b u w\nface f = a b-\nface g = a b-\n").unwrap();
        assert_eq!(surface_orientation(&s), Some(vec![1, -1]));
    }
}
