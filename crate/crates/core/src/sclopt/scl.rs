use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::chain::{Gen, OneChain};
use super::lp::{LpSolution, RationalLp, Simplex};
use super::SclError;
use crate::admsurf::AdmissibleSurface;
use crate::par::ExecPolicy;

/// A value of scl: finite and rational, or infinite off the boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SclValue {
    Finite(#[serde(serialize_with = "ser_q")] BigRational),
    Infinite,
}

fn ser_q<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl std::fmt::Display for SclValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SclValue::Finite(q) => write!(f, "{q}"),
            SclValue::Infinite => write!(f, "inf"),
        }
    }
}

impl SclValue {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            SclValue::Finite(q) => Some(q),
            SclValue::Infinite => None,
        }
    }
}

/// The polygon LP for a chain, with the data needed to read scl back from its optimum.
#[derive(Clone, Debug)]
pub struct SclProgram {
    pub lp: RationalLp,
    /// Each variable is a polygon: a cyclic sequence of corners (letter positions).
    pub polygons: Vec<Vec<usize>>,
    /// Total weighted word length `Σ nᵢ |wᵢ|`.
    pub length: i64,
}

/// Letter positions of the positive form of the chain.
struct Positions {
    letter: Vec<Gen>,
    next: Vec<usize>,
    prev: Vec<usize>,
    weight: Vec<i64>,
}

fn positions(terms: &[(i64, Vec<Gen>)]) -> Positions {
    let mut p = Positions { letter: Vec::new(), next: Vec::new(), prev: Vec::new(), weight: Vec::new() };
    for (k, w) in terms {
        let base = p.letter.len();
        let l = w.len();
        for (j, &g) in w.iter().enumerate() {
            p.letter.push(g);
            p.next.push(base + (j + 1) % l);
            p.prev.push(base + (j + l - 1) % l);
            p.weight.push(*k);
        }
    }
    p
}

/// Upper limit on the number of polygon columns generated.
pub const MAX_POLYGONS: usize = 200_000;

fn q(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Row layout of the polygon LP: one row per rectangle (an unordered pair of inverse letter
/// positions) followed by one coverage row per letter position.
struct Layout {
    p: Positions,
    rect: BTreeMap<(usize, usize), usize>,
}

impl Layout {
    fn new(p: Positions) -> Self {
        let n = p.letter.len();
        let mut rect = BTreeMap::new();
        for x in 0..n {
            for y in x + 1..n {
                if p.letter[x] == -p.letter[y] {
                    let k = rect.len();
                    rect.insert((x, y), k);
                }
            }
        }
        Layout { p, rect }
    }

    fn len(&self) -> usize {
        self.p.letter.len()
    }

    fn num_rows(&self) -> usize {
        self.rect.len() + self.len()
    }

    fn allowed(&self, a: usize, b: usize) -> bool {
        self.p.letter[self.p.next[a]] == -self.p.letter[b]
    }

    /// Rows touched by the turn `a → b`, which crosses the rectangle `{next(a), b}`.
    fn turn(&self, a: usize, b: usize) -> [(usize, i64); 2] {
        let x = self.p.next[a];
        let rect = if x < b { (self.rect[&(x, b)], 1) } else { (self.rect[&(b, x)], -1) };
        [rect, (self.rect.len() + x, 1)]
    }

    fn column(&self, poly: &[usize]) -> Vec<(usize, BigRational)> {
        let mut m: BTreeMap<usize, i64> = BTreeMap::new();
        for (k, &a) in poly.iter().enumerate() {
            for (r, v) in self.turn(a, poly[(k + 1) % poly.len()]) {
                *m.entry(r).or_insert(0) += v;
            }
        }
        m.into_iter().filter(|(_, v)| *v != 0).map(|(r, v)| (r, q(v))).collect()
    }

    fn rhs(&self) -> Vec<BigRational> {
        let mut rhs = vec![BigRational::zero(); self.rect.len()];
        rhs.extend(self.p.weight.iter().map(|&w| q(w)));
        rhs
    }

    fn weights(&self, dual: &[BigRational]) -> Vec<Vec<Option<BigRational>>> {
        let n = self.len();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.allowed(a, b).then(|| self.turn(a, b).iter().map(|&(r, v)| &dual[r] * q(v)).sum()))
                    .collect()
            })
            .collect()
    }

    /// Simple cycles of the turn graph whose dual weight is below `cost`, i.e. polygons with
    /// positive reduced cost. Empty exactly when every polygon prices out.
    fn price(&self, dual: &[BigRational], cost: &BigRational) -> Vec<Vec<usize>> {
        let w = self.weights(dual);
        if let Some(c) = negative_cycle(&w) {
            return vec![c];
        }
        let n = self.len();
        let mut dist: Vec<Vec<Option<BigRational>>> = w.clone();
        let mut next: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
        for k in 0..n {
            for i in 0..n {
                let Some(dik) = dist[i][k].clone() else { continue };
                for j in 0..n {
                    let Some(dkj) = &dist[k][j] else { continue };
                    let via = &dik + dkj;
                    if dist[i][j].as_ref().is_none_or(|d| via < *d) {
                        dist[i][j] = Some(via);
                        next[i][j] = next[i][k];
                    }
                }
            }
        }
        let mut found: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if dist[s][s].as_ref().is_some_and(|d| d < cost) {
                let mut walk = vec![s];
                let mut v = next[s][s];
                while v != s && walk.len() <= n * n {
                    walk.push(v);
                    v = next[v][s];
                }
                for cyc in split_walk(&walk) {
                    let weight: BigRational =
                        (0..cyc.len()).filter_map(|k| w[cyc[k]][cyc[(k + 1) % cyc.len()]].clone()).sum();
                    let cyc = canonical(cyc);
                    if weight < *cost && !found.contains(&cyc) {
                        found.push(cyc);
                    }
                }
            }
        }
        found
    }
}

/// Splits a closed walk into simple cycles.
fn split_walk(walk: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    for &v in walk.iter().chain(walk.first()) {
        if let Some(i) = stack.iter().position(|&u| u == v) {
            out.push(stack.split_off(i));
        }
        stack.push(v);
    }
    out
}

/// Bellman–Ford from a virtual source; a simple negative cycle if one exists.
fn negative_cycle(w: &[Vec<Option<BigRational>>]) -> Option<Vec<usize>> {
    let n = w.len();
    let mut dist = vec![BigRational::zero(); n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let mut last = None;
    for _ in 0..=n {
        last = None;
        for a in 0..n {
            for b in 0..n {
                if let Some(x) = &w[a][b] {
                    let via = &dist[a] + x;
                    if via < dist[b] {
                        dist[b] = via;
                        pred[b] = Some(a);
                        last = Some(b);
                    }
                }
            }
        }
        last?;
    }
    let mut v = last?;
    for _ in 0..n {
        v = pred[v]?;
    }
    let mut cyc = vec![v];
    let mut u = pred[v]?;
    while u != v {
        cyc.push(u);
        u = pred[u]?;
    }
    cyc.reverse();
    Some(canonical(cyc))
}

fn canonical(mut cyc: Vec<usize>) -> Vec<usize> {
    let k = cyc.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i).unwrap_or(0);
    cyc.rotate_left(k);
    cyc
}

impl SclProgram {
    /// Polygons glued to rectangles over pairs of inverse letters. With weights normalised to
    /// degree one, `χ = Σ polygons − (Σ nᵢ|wᵢ|)/2`, and every component has boundary.
    /// Polygon columns are generated on demand; the LP keeps only those that were needed.
    pub fn build(c: &OneChain) -> Result<Self, SclError> {
        Self::solve(c, ExecPolicy::Sequential).map(|(p, _)| p)
    }

    fn assemble(layout: &Layout, polygons: &[Vec<usize>]) -> RationalLp {
        let mut rows: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); layout.num_rows()];
        for (j, poly) in polygons.iter().enumerate() {
            for (r, v) in layout.column(poly) {
                rows[r].push((j, v));
            }
        }
        RationalLp { objective: vec![BigRational::one(); polygons.len()], rows, rhs: layout.rhs() }
    }

    fn solve(c: &OneChain, policy: ExecPolicy) -> Result<(Self, LpSolution), SclError> {
        let terms = c.positive_form();
        let layout = Layout::new(positions(&terms));
        let length = terms.iter().map(|(k, w)| k * w.len() as i64).sum();
        let mut polygons: Vec<Vec<usize>> = Vec::new();
        let mut simplex = Simplex::new(&layout.rhs());
        loop {
            simplex.optimize(policy)?;
            let cost = if simplex.in_phase_two() { BigRational::one() } else { BigRational::zero() };
            let fresh: Vec<Vec<usize>> =
                layout.price(&simplex.dual(), &cost).into_iter().filter(|c| !polygons.contains(c)).collect();
            if fresh.is_empty() {
                if simplex.in_phase_two() {
                    let lp = Self::assemble(&layout, &polygons);
                    return Ok((SclProgram { lp, polygons, length }, simplex.solution()));
                }
                if simplex.infeasibility().is_positive() {
                    return Err(SclError::Infeasible);
                }
                simplex.start_phase_two();
                continue;
            }
            for poly in fresh {
                simplex.add_column(BigRational::one(), layout.column(&poly));
                polygons.push(poly);
            }
            if polygons.len() > MAX_POLYGONS {
                return Err(SclError::TooLarge(MAX_POLYGONS));
            }
        }
    }

    /// Every polygon of the full program, generated or not, prices out against `dual`.
    pub fn dual_feasible_everywhere(&self, c: &OneChain, dual: &[BigRational]) -> bool {
        let layout = Layout::new(positions(&c.positive_form()));
        dual.len() == layout.num_rows() && layout.price(dual, &BigRational::one()).is_empty()
    }

    /// `scl = (L/2 − max Σ polygons) / 2`.
    pub fn value_of(&self, optimum: &BigRational) -> BigRational {
        (BigRational::new(BigInt::from(self.length), BigInt::from(2)) - optimum) / q(2)
    }
}

/// scl of a chain together with the LP certificate it was read from.
#[derive(Clone, Debug)]
pub struct SclResult {
    pub chain: OneChain,
    pub value: SclValue,
    pub program: Option<SclProgram>,
    pub solution: Option<LpSolution>,
}

impl SclResult {
    /// Replays the certificate and recomputes the value from it.
    pub fn verify(&self) -> bool {
        match (&self.value, &self.program, &self.solution) {
            (SclValue::Infinite, None, None) => true,
            (SclValue::Finite(v), Some(p), Some(s)) => {
                p.lp.verify(s) && p.dual_feasible_everywhere(&self.chain, &s.dual) && p.value_of(&s.optimum) == *v
            }
            _ => false,
        }
    }
}

/// Exact scl in the free group on the chain's basis.
pub fn scl_lp(c: &OneChain, policy: ExecPolicy) -> Result<SclResult, SclError> {
    if !c.is_boundary() {
        return Ok(SclResult { chain: c.clone(), value: SclValue::Infinite, program: None, solution: None });
    }
    let (program, solution) = SclProgram::solve(c, policy).map_err(|e| match e {
        SclError::Infeasible => SclError::Internal(format!("polygon LP for `{c}` is infeasible")),
        other => other,
    })?;
    let value = SclValue::Finite(program.value_of(&solution.optimum));
    Ok(SclResult { chain: c.clone(), value, program: Some(program), solution: Some(solution) })
}

/// `−χ⁻ / 2n` of a monotone admissible surface of uniform degree.
pub fn scl_upper_from_surface(s: &AdmissibleSurface) -> Result<BigRational, SclError> {
    let report = s.standard_form_report();
    let n = s.degree().n.ok_or(SclError::NonUniformDegree)?;
    if !report.monotone {
        return Err(SclError::NonUniformDegree);
    }
    Ok(BigRational::new(BigInt::from(-s.reduced_euler()), BigInt::from(2 * n)))
}

/// scl of a chain in the free group on its own basis and after a basis inclusion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub chain: String,
    pub sub: SclValue,
    pub ambient: SclValue,
    /// `sub ≥ ambient` (monotonicity).
    pub monotone: bool,
    pub equal: bool,
}

pub fn scl_compare_under_inclusion(c: &OneChain, ambient: &[char], policy: ExecPolicy) -> Result<InclusionReport, SclError> {
    let big = c.include_into(ambient)?;
    let sub = scl_lp(c, policy)?.value;
    let amb = scl_lp(&big, policy)?.value;
    let monotone = match (&sub, &amb) {
        (SclValue::Infinite, _) => true,
        (SclValue::Finite(_), SclValue::Infinite) => false,
        (SclValue::Finite(a), SclValue::Finite(b)) => a >= b,
    };
    Ok(InclusionReport { chain: c.to_string(), equal: sub == amb, sub, ambient: amb, monotone })
}
