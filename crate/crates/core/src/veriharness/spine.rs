use std::collections::VecDeque;

use crate::cellcx::{Inclusion, Letter, TwoComplex};
use crate::sclopt::{cyclically_reduce, Gen, OneChain};

use super::HarnessError;

/// A free basis of `π₁` read off a spine: faces are collapsed through free edges, then a
/// breadth-first maximal tree from the lowest vertex is contracted. Generators are the
/// surviving non-tree edges in id order, named `a, b, c, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spine {
    /// Edge eliminated by each collapse, with the word it is homotopic to.
    pub collapsed: Vec<(usize, Vec<Letter>)>,
    pub tree: Vec<usize>,
    /// Generator edges.
    pub basis: Vec<usize>,
    pub names: Vec<char>,
    root: usize,
    /// Tree edge leading to each vertex, towards the root.
    parent: Vec<Option<Letter>>,
    expansion: Vec<Option<Vec<Letter>>>,
}

impl Spine {
    pub fn new(x: &TwoComplex) -> Result<Self, HarnessError> {
        if x.num_vertices() == 0 {
            return Err(HarnessError::Input("empty complex".into()));
        }
        let mut alive_face = vec![true; x.num_faces()];
        let mut alive_edge = vec![true; x.num_edges()];
        let mut collapsed = Vec::new();
        'collapse: loop {
            let mut uses = vec![0usize; x.num_edges()];
            for (f, face) in x.faces().iter().enumerate() {
                if alive_face[f] {
                    for l in &face.word {
                        uses[l.edge] += 1;
                    }
                }
            }
            for (f, face) in x.faces().iter().enumerate() {
                if !alive_face[f] {
                    continue;
                }
                let Some(k) = face.word.iter().enumerate().filter(|(_, l)| uses[l.edge] == 1).min_by_key(|(_, l)| l.edge).map(|(k, _)| k)
                else {
                    continue;
                };
                // word = l · rest, so l = rest⁻¹.
                let n = face.word.len();
                let l = face.word[k];
                let rest_inv: Vec<Letter> = (1..n).rev().map(|i| face.word[(k + i) % n].inv()).collect();
                let image = if l.inverse { rest_inv.iter().rev().map(|m| m.inv()).collect() } else { rest_inv };
                collapsed.push((l.edge, image));
                alive_face[f] = false;
                alive_edge[l.edge] = false;
                continue 'collapse;
            }
            break;
        }
        if let Some(f) = alive_face.iter().position(|&a| a) {
            return Err(HarnessError::Input(format!(
                "face {} cannot be collapsed through a free edge; the fundamental group is not free on a spine",
                x.face(f).name
            )));
        }
        let mut parent: Vec<Option<Letter>> = vec![None; x.num_vertices()];
        let mut seen = vec![false; x.num_vertices()];
        let mut tree = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for (e, edge) in x.edges().iter().enumerate() {
                if !alive_edge[e] {
                    continue;
                }
                // The letter leads from the new vertex back towards `v`.
                let step = if edge.src == v && !seen[edge.dst] {
                    Some((edge.dst, Letter::neg(e)))
                } else if edge.dst == v && !seen[edge.src] {
                    Some((edge.src, Letter::pos(e)))
                } else {
                    None
                };
                if let Some((w, l)) = step {
                    seen[w] = true;
                    parent[w] = Some(l);
                    tree.push(e);
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(HarnessError::Input("complex is not connected".into()));
        }
        tree.sort_unstable();
        let basis: Vec<usize> = (0..x.num_edges()).filter(|&e| alive_edge[e] && tree.binary_search(&e).is_err()).collect();
        if basis.len() > 26 {
            return Err(HarnessError::Input(format!("rank {} exceeds the 26 generator names", basis.len())));
        }
        let names = OneChain::standard_basis(basis.len());
        let mut expansion = vec![None; x.num_edges()];
        for (e, w) in &collapsed {
            expansion[*e] = Some(w.clone());
        }
        Ok(Spine { collapsed, tree, basis, names, root: 0, parent, expansion })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The free group word of an edge path, with tree edges contracted and collapsed edges
    /// expanded. For closed paths this is the based loop up to conjugacy.
    pub fn rewrite(&self, word: &[Letter]) -> Vec<Gen> {
        let mut out = Vec::new();
        self.push_word(word, &mut out);
        reduce(out)
    }

    fn push_word(&self, word: &[Letter], out: &mut Vec<Gen>) {
        for &l in word {
            if let Some(w) = &self.expansion[l.edge] {
                if l.inverse {
                    let inv: Vec<Letter> = w.iter().rev().map(|m| m.inv()).collect();
                    self.push_word(&inv, out);
                } else {
                    self.push_word(w, out);
                }
            } else if let Ok(i) = self.basis.binary_search(&l.edge) {
                out.push(if l.inverse { -(i as Gen + 1) } else { i as Gen + 1 });
            }
        }
    }

    /// Tree path from `v` to the root.
    fn to_root(&self, x: &TwoComplex, mut v: usize) -> Vec<Letter> {
        let mut path = Vec::new();
        while v != self.root {
            let l = self.parent[v].expect("tree reaches every vertex");
            path.push(l);
            v = x.letter_dst(l);
        }
        path
    }

    /// Generator `i` as a based edge loop: tree path, generator edge, tree path back.
    pub fn generator_loop(&self, x: &TwoComplex, i: usize) -> Vec<Letter> {
        let e = self.basis[i];
        let edge = x.edge(e);
        let mut w: Vec<Letter> = self.to_root(x, edge.src).iter().rev().map(|l| l.inv()).collect();
        w.push(Letter::pos(e));
        w.extend(self.to_root(x, edge.dst));
        w
    }

    /// Images of the generators of `small` under an inclusion into `big`, as words over `big`'s basis.
    pub fn inclusion_images(small: &Spine, small_x: &TwoComplex, big: &Spine, inc: &Inclusion) -> Vec<Vec<Gen>> {
        (0..small.rank())
            .map(|i| {
                let w: Vec<Letter> = small
                    .generator_loop(small_x, i)
                    .into_iter()
                    .map(|l| Letter { edge: inc.edges[l.edge], inverse: l.inverse })
                    .collect();
                big.rewrite(&w)
            })
            .collect()
    }

    /// A closed edge path as a one-term chain over this basis.
    pub fn loop_chain(&self, word: &[Letter], mult: i64) -> Result<OneChain, HarnessError> {
        Ok(OneChain::from_terms(&self.names, vec![(mult, cyclically_reduce(&self.rewrite(word)))])?)
    }
}

fn reduce(word: Vec<Gen>) -> Vec<Gen> {
    let mut out: Vec<Gen> = Vec::with_capacity(word.len());
    for g in word {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}
