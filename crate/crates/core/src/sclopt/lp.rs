use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SclError;
use crate::par::{self, ExecPolicy};

/// `maximize c·x subject to A x = b, x ≥ 0` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLp {
    pub objective: Vec<BigRational>,
    /// Sparse rows: `(column, coefficient)`.
    pub rows: Vec<Vec<(usize, BigRational)>>,
    pub rhs: Vec<BigRational>,
}

/// An optimal primal point with a dual certificate of optimality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    #[serde(serialize_with = "ser_q")]
    pub optimum: BigRational,
    #[serde(serialize_with = "ser_qs")]
    pub primal: Vec<BigRational>,
    #[serde(serialize_with = "ser_qs")]
    pub dual: Vec<BigRational>,
    pub pivots: usize,
}

fn ser_q<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_qs<S: serde::Serializer>(q: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(q.iter().map(|x| x.to_string()))
}

/// A dense simplex tableau that accepts new columns between solves. Artificial columns come
/// first, so the tableau's leading `m × m` block is always `B⁻¹` of the (sign-normalised) rows.
#[derive(Clone, Debug)]
pub struct Simplex {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    flip: Vec<bool>,
    basis: Vec<usize>,
    columns: Vec<Vec<(usize, BigRational)>>,
    cost: Vec<BigRational>,
    phase_two: bool,
    pivots: usize,
}

impl Simplex {
    pub fn new(rhs: &[BigRational]) -> Self {
        let m = rhs.len();
        let flip: Vec<bool> = rhs.iter().map(|b| b.is_negative()).collect();
        let rows = (0..m)
            .map(|i| (0..m).map(|k| if i == k { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        Simplex {
            rows,
            rhs: rhs.iter().map(|b| b.abs()).collect(),
            flip,
            basis: (0..m).collect(),
            columns: Vec::new(),
            cost: Vec::new(),
            phase_two: false,
            pivots: 0,
        }
    }

    fn m(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn add_column(&mut self, cost: BigRational, column: Vec<(usize, BigRational)>) -> usize {
        let m = self.m();
        let signed: Vec<(usize, BigRational)> =
            column.iter().map(|(r, v)| (*r, if self.flip[*r] { -v } else { v.clone() })).collect();
        for row in self.rows.iter_mut() {
            let mut x = BigRational::zero();
            for (k, v) in &signed {
                if !row[*k].is_zero() {
                    x += &row[*k] * v;
                }
            }
            row.push(x);
        }
        debug_assert_eq!(self.rows.first().map_or(m + self.columns.len() + 1, |r| r.len()), m + self.columns.len() + 1);
        self.columns.push(column);
        self.cost.push(cost);
        self.columns.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize, policy: ExecPolicy) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        let mut work: Vec<(&mut Vec<BigRational>, &mut BigRational)> = self.rows.iter_mut().zip(self.rhs.iter_mut()).collect();
        par::for_each_mut(policy, &mut work, |i, (row, b)| {
            if i == r || row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            **b -= &f * &prhs;
        });
        self.basis[r] = c;
        self.pivots += 1;
    }

    fn tableau_cost(&self, col: usize) -> BigRational {
        let m = self.m();
        match (self.phase_two, col < m) {
            (false, true) => -BigRational::one(),
            (false, false) | (true, true) => BigRational::zero(),
            (true, false) => self.cost[col - m].clone(),
        }
    }

    /// Row duals of the current phase, in the caller's sign convention.
    pub fn dual(&self) -> Vec<BigRational> {
        let m = self.m();
        let cb: Vec<BigRational> = self.basis.iter().map(|&b| self.tableau_cost(b)).collect();
        (0..m)
            .map(|k| {
                let mut y = BigRational::zero();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[k].is_zero() && !cb[i].is_zero() {
                        y += &cb[i] * &row[k];
                    }
                }
                if self.flip[k] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }

    fn reduced_costs(&self, policy: ExecPolicy) -> Vec<BigRational> {
        let y = self.dual();
        let cols: Vec<usize> = (0..self.columns.len()).collect();
        let phase_two = self.phase_two;
        par::map(policy, &cols, |&j| {
            let mut r = if phase_two { self.cost[j].clone() } else { BigRational::zero() };
            for (k, v) in &self.columns[j] {
                r -= &y[*k] * v;
            }
            r
        })
    }

    /// Pivots any artificial left in the basis out on a nonzero structural entry (its value is 0).
    fn drive_out_artificials(&mut self, policy: ExecPolicy) {
        let m = self.m();
        for i in 0..m {
            if self.basis[i] < m {
                if let Some(j) = (m..self.rows[i].len()).find(|&j| !self.rows[i][j].is_zero()) {
                    self.pivot(i, j, policy);
                }
            }
        }
    }

    /// Primal simplex over the structural columns (and, in phase one, the artificials):
    /// steepest reduced cost, switching to Bland's rule while pivots are degenerate.
    pub fn optimize(&mut self, policy: ExecPolicy) -> Result<(), SclError> {
        let m = self.m();
        if self.phase_two {
            self.drive_out_artificials(policy);
        }
        let mut bland = false;
        loop {
            let reduced = self.reduced_costs(policy);
            let in_basis: std::collections::BTreeSet<usize> = self.basis.iter().copied().collect();
            let candidates = (0..reduced.len()).filter(|&j| reduced[j].is_positive() && !in_basis.contains(&(m + j)));
            let entering = if bland {
                candidates.min()
            } else {
                candidates.fold(None, |best: Option<usize>, j| match best {
                    Some(b) if reduced[b] >= reduced[j] => Some(b),
                    _ => Some(j),
                })
            };
            let Some(j) = entering else { return Ok(()) };
            let c = m + j;
            let mut best: Option<(BigRational, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let blocked = row[c].is_positive() || (self.phase_two && self.basis[i] < m && !row[c].is_zero());
                if blocked {
                    let ratio = if row[c].is_positive() { &self.rhs[i] / &row[c] } else { BigRational::zero() };
                    let better = match &best {
                        None => true,
                        Some((q, b)) => ratio < *q || (ratio == *q && self.basis[i] < self.basis[*b]),
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            let Some((step, r)) = best else { return Err(SclError::Unbounded) };
            bland = step.is_zero();
            self.pivot(r, c, policy);
        }
    }

    /// Sum of the artificial variables; zero exactly when the current point is feasible.
    pub fn infeasibility(&self) -> BigRational {
        let m = self.m();
        (0..m).filter(|&i| self.basis[i] < m).map(|i| self.rhs[i].clone()).sum()
    }

    pub fn in_phase_two(&self) -> bool {
        self.phase_two
    }

    pub fn start_phase_two(&mut self) {
        self.phase_two = true;
    }

    pub fn solution(&self) -> LpSolution {
        let m = self.m();
        let mut primal = vec![BigRational::zero(); self.columns.len()];
        for (i, &b) in self.basis.iter().enumerate() {
            if b >= m {
                primal[b - m] = self.rhs[i].clone();
            }
        }
        let optimum: BigRational = primal.iter().zip(&self.cost).map(|(x, c)| x * c).sum();
        LpSolution { optimum, primal, dual: self.dual(), pivots: self.pivots }
    }
}

impl RationalLp {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn columns(&self) -> Vec<Vec<(usize, BigRational)>> {
        let mut cols = vec![Vec::new(); self.num_vars()];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                cols[*j].push((i, v.clone()));
            }
        }
        cols
    }

    /// Two-phase simplex; deterministic for any execution policy.
    pub fn solve(&self, policy: ExecPolicy) -> Result<LpSolution, SclError> {
        let mut s = Simplex::new(&self.rhs);
        for (c, col) in self.objective.iter().zip(self.columns()) {
            s.add_column(c.clone(), col);
        }
        s.optimize(policy)?;
        if s.infeasibility().is_positive() {
            return Err(SclError::Infeasible);
        }
        s.start_phase_two();
        s.optimize(policy)?;
        Ok(s.solution())
    }

    /// Replays a solution: primal feasibility, dual feasibility and equal objectives.
    pub fn verify(&self, s: &LpSolution) -> bool {
        if s.primal.len() != self.num_vars() || s.dual.len() != self.rows.len() {
            return false;
        }
        if s.primal.iter().any(|x| x.is_negative()) {
            return false;
        }
        for (r, b) in self.rows.iter().zip(&self.rhs) {
            let lhs: BigRational = r.iter().map(|(j, v)| v * &s.primal[*j]).sum();
            if lhs != *b {
                return false;
            }
        }
        let mut aty = vec![BigRational::zero(); self.num_vars()];
        for (r, y) in self.rows.iter().zip(&s.dual) {
            for (j, v) in r {
                aty[*j] += v * y;
            }
        }
        if aty.iter().zip(&self.objective).any(|(a, c)| a < c) {
            return false;
        }
        let primal_obj: BigRational = s.primal.iter().zip(&self.objective).map(|(x, c)| x * c).sum();
        let dual_obj: BigRational = s.dual.iter().zip(&self.rhs).map(|(y, b)| y * b).sum();
        primal_obj == s.optimum && dual_obj == s.optimum
    }
}
