//! Dense two-phase simplex over exact rationals.
//!
//! Problems are stated as
//!
//! ```text
//! minimize  c^T x   subject to  A x = b,  x >= l
//! ```
//!
//! Pivoting uses the most negative reduced cost and switches to Bland's rule
//! after a long run of degenerate pivots, so the solver terminates on every input.
//! Optimal solutions carry a dual vector `y` with `c - A^T y >= 0` and a zero
//! duality gap; infeasible problems carry a Farkas vector `y` with
//! `A^T y <= 0` and `(b - A l)^T y > 0`. Both are re-checkable with
//! [`LpSolution::verify`].

use num_traits::{One, Signed, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Scalar>,
    /// Row-major, one row per equality constraint.
    pub constraints: Vec<Vec<Scalar>>,
    pub rhs: Vec<Scalar>,
    pub lower: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Empty unless `status` is `Optimal`.
    pub primal: Vec<Scalar>,
    /// Optimal duals, or the Farkas certificate when infeasible. Empty when
    /// unbounded.
    pub dual: Vec<Scalar>,
    pub objective: Scalar,
}

impl LpProblem {
    /// Non-negative variables.
    pub fn new(objective: Vec<Scalar>, constraints: Vec<Vec<Scalar>>, rhs: Vec<Scalar>) -> Self {
        let lower = vec![Scalar::zero(); objective.len()];
        LpProblem {
            objective,
            constraints,
            rhs,
            lower,
        }
    }

    pub fn with_lower_bounds(mut self, lower: Vec<Scalar>) -> Self {
        self.lower = lower;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    fn validate(&self) -> Result<()> {
        let k = self.num_vars();
        if self.constraints.len() != self.rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} constraint rows but {} right-hand sides",
                self.constraints.len(),
                self.rhs.len()
            )));
        }
        if self.lower.len() != k {
            return Err(Error::DimensionMismatch(format!(
                "{k} variables but {} lower bounds",
                self.lower.len()
            )));
        }
        if let Some((i, row)) = self.constraints.iter().enumerate().find(|(_, r)| r.len() != k) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} entries, expected {k}",
                row.len()
            )));
        }
        Ok(())
    }

    fn shifted_rhs(&self) -> Vec<Scalar> {
        self.constraints
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| {
                row.iter()
                    .zip(&self.lower)
                    .fold(b.clone(), |acc, (a, l)| acc - a * l)
            })
            .collect()
    }

    fn column_dot(&self, j: usize, y: &[Scalar]) -> Scalar {
        self.constraints
            .iter()
            .zip(y)
            .fold(Scalar::zero(), |acc, (row, yi)| acc + &row[j] * yi)
    }
}

impl LpSolution {
    /// Independent exact check of the attached certificate.
    ///
    /// * optimal: primal feasibility, dual feasibility and equal objectives;
    /// * infeasible: the Farkas conditions;
    /// * unbounded: not certified, always `true`.
    pub fn verify(&self, problem: &LpProblem) -> bool {
        let k = problem.num_vars();
        match self.status {
            LpStatus::Optimal => {
                if self.primal.len() != k || self.dual.len() != problem.num_rows() {
                    return false;
                }
                let primal_ok = self.primal.iter().zip(&problem.lower).all(|(x, l)| x >= l)
                    && problem.constraints.iter().zip(&problem.rhs).all(|(row, b)| {
                        &row.iter()
                            .zip(&self.primal)
                            .fold(Scalar::zero(), |acc, (a, x)| acc + a * x)
                            == b
                    });
                let reduced: Vec<Scalar> = (0..k)
                    .map(|j| &problem.objective[j] - problem.column_dot(j, &self.dual))
                    .collect();
                let dual_ok = reduced.iter().all(|r| !r.is_negative());
                let primal_obj = problem
                    .objective
                    .iter()
                    .zip(&self.primal)
                    .fold(Scalar::zero(), |acc, (c, x)| acc + c * x);
                let dual_obj = problem
                    .rhs
                    .iter()
                    .zip(&self.dual)
                    .fold(Scalar::zero(), |acc, (b, y)| acc + b * y)
                    + reduced
                        .iter()
                        .zip(&problem.lower)
                        .fold(Scalar::zero(), |acc, (r, l)| acc + r * l);
                primal_ok && dual_ok && primal_obj == dual_obj && primal_obj == self.objective
            }
            LpStatus::Infeasible => {
                if self.dual.len() != problem.num_rows() {
                    return false;
                }
                let rays_ok = (0..k).all(|j| !problem.column_dot(j, &self.dual).is_positive());
                let gap = problem
                    .shifted_rhs()
                    .iter()
                    .zip(&self.dual)
                    .fold(Scalar::zero(), |acc, (b, y)| acc + b * y);
                rays_ok && gap.is_positive()
            }
            LpStatus::Unbounded => true,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Scalar>>,
    /// Reduced costs; the final entry holds minus the current objective.
    cost: Vec<Scalar>,
    basis: Vec<usize>,
    /// Columns `0..real` are problem variables; the rest are artificials.
    real: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn rhs(&self, i: usize) -> &Scalar {
        &self.rows[i][self.width()]
    }

    fn pivot(&mut self, p: usize, q: usize) {
        let pivot = self.rows[p][q].clone();
        if !pivot.is_one() {
            for entry in self.rows[p].iter_mut() {
                if !entry.is_zero() {
                    *entry = &*entry / &pivot;
                }
            }
        }
        let pivot_row = self.rows[p].clone();
        let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p || row[q].is_zero() {
                continue;
            }
            let factor = row[q].clone();
            for &j in &nonzero {
                row[j] = &row[j] - &factor * &pivot_row[j];
            }
        }
        if !self.cost[q].is_zero() {
            let factor = self.cost[q].clone();
            for &j in &nonzero {
                self.cost[j] = &self.cost[j] - &factor * &pivot_row[j];
            }
        }
        self.basis[p] = q;
    }

    /// Most negative reduced cost, switching to Bland's rule for good after
    /// a run of degenerate pivots so the method cannot cycle. Returns
    /// `false` if the problem is unbounded in the current phase.
    fn run(&mut self, allowed: usize) -> bool {
        const DEGENERATE_STREAK: usize = 50;
        let mut bland = false;
        let mut streak = 0;
        loop {
            let entering = if bland {
                (0..allowed).find(|&j| self.cost[j].is_negative())
            } else {
                (0..allowed)
                    .filter(|&j| self.cost[j].is_negative())
                    .min_by(|&a, &b| self.cost[a].cmp(&self.cost[b]).then(a.cmp(&b)))
            };
            let Some(q) = entering else {
                return true;
            };
            let mut best: Option<(usize, Scalar)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((p, step)) => {
                    if step.is_zero() {
                        streak += 1;
                        if streak >= DEGENERATE_STREAK {
                            bland = true;
                        }
                    } else {
                        streak = 0;
                    }
                    self.pivot(p, q)
                }
                None => return false,
            }
        }
    }
}

/// Solves `problem` exactly.
pub fn lp_solve(problem: &LpProblem) -> Result<LpSolution> {
    problem.validate()?;
    let m = problem.num_rows();
    let k = problem.num_vars();
    let width = k + m;

    let shifted = problem.shifted_rhs();
    let signs: Vec<bool> = shifted.iter().map(|b| b.is_negative()).collect();

    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(width + 1);
        for a in &problem.constraints[i] {
            row.push(if signs[i] { -a } else { a.clone() });
        }
        for r in 0..m {
            row.push(if r == i { Scalar::one() } else { Scalar::zero() });
        }
        row.push(shifted[i].abs());
        rows.push(row);
    }

    // Phase 1: minimize the sum of artificials.
    let mut cost = vec![Scalar::zero(); width + 1];
    for row in &rows {
        for j in 0..k {
            cost[j] = &cost[j] - &row[j];
        }
        cost[width] = &cost[width] - &row[width];
    }
    let mut tableau = Tableau {
        rows,
        cost,
        basis: (k..width).collect(),
        real: k,
    };
    let finished = tableau.run(k);
    debug_assert!(finished, "phase one is bounded below by zero");

    let infeasibility = -tableau.cost[width].clone();
    if infeasibility.is_positive() {
        // y_i = c_art - reduced_cost(art_i) with unit artificial costs.
        let dual = (0..m)
            .map(|i| {
                let y = Scalar::one() - &tableau.cost[k + i];
                if signs[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            primal: Vec::new(),
            dual,
            objective: Scalar::zero(),
        });
    }

    // Move zero-valued artificials out of the basis where possible. Rows
    // where that fails are redundant and keep their artificial at zero.
    for i in 0..m {
        if tableau.basis[i] >= tableau.real {
            if let Some(q) = (0..k).find(|&j| !tableau.rows[i][j].is_zero()) {
                tableau.pivot(i, q);
            }
        }
    }

    // Phase 2.
    let mut cost = vec![Scalar::zero(); width + 1];
    cost[..k].clone_from_slice(&problem.objective);
    for (i, &b) in tableau.basis.iter().enumerate() {
        let cb = if b < k {
            problem.objective[b].clone()
        } else {
            Scalar::zero()
        };
        if cb.is_zero() {
            continue;
        }
        for (j, entry) in tableau.rows[i].iter().enumerate() {
            if !entry.is_zero() {
                cost[j] = &cost[j] - &cb * entry;
            }
        }
    }
    tableau.cost = cost;
    if !tableau.run(k) {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            primal: Vec::new(),
            dual: Vec::new(),
            objective: Scalar::zero(),
        });
    }

    let mut primal = problem.lower.clone();
    for (i, &b) in tableau.basis.iter().enumerate() {
        if b < k {
            primal[b] = &primal[b] + tableau.rhs(i);
        }
    }
    let dual = (0..m)
        .map(|i| {
            let y = -tableau.cost[k + i].clone();
            if signs[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    let objective = problem
        .objective
        .iter()
        .zip(&primal)
        .fold(Scalar::zero(), |acc, (c, x)| acc + c * x);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        primal,
        dual,
        objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn cross_gauge_problem(target: Vec<Scalar>) -> LpProblem {
        LpProblem::new(
            ints(&[1, 1, 1, 1]),
            vec![ints(&[1, -1, 0, 0]), ints(&[0, 0, 1, -1])],
            target,
        )
    }

    #[test]
    fn gauge_of_cross_polytope_vertex() {
        let p = cross_gauge_problem(ints(&[1, 0]));
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, int(1));
        assert_eq!(s.primal, ints(&[1, 0, 0, 0]));
        assert!(s.verify(&p));
    }

    #[test]
    fn gauge_of_edge_midpoint() {
        let p = cross_gauge_problem(vec![ratio(1, 2), ratio(1, 2)]);
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, int(1));
        assert_eq!(s.primal, vec![ratio(1, 2), int(0), ratio(1, 2), int(0)]);
        assert!(s.verify(&p));
    }

    #[test]
    fn infeasible_system_has_farkas_certificate() {
        let p = LpProblem::new(ints(&[1]), vec![ints(&[0])], ints(&[1]));
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        assert!(s.verify(&p));
    }

    #[test]
    fn negative_rhs_and_lower_bounds() {
        // minimize x0 + x1, x0 - x1 = -3, x0 >= 1, x1 >= 0  ->  x = (1, 4)
        let p = LpProblem::new(ints(&[1, 1]), vec![ints(&[1, -1])], ints(&[-3]))
            .with_lower_bounds(ints(&[1, 0]));
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.primal, ints(&[1, 4]));
        assert_eq!(s.objective, int(5));
        assert!(s.verify(&p));
    }

    #[test]
    fn unbounded_detected() {
        // minimize -x0, x0 - x1 = 0
        let p = LpProblem::new(ints(&[-1, 0]), vec![ints(&[1, -1])], ints(&[0]));
        assert_eq!(lp_solve(&p).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let p = LpProblem::new(
            ints(&[1, 2]),
            vec![ints(&[1, 1]), ints(&[2, 2])],
            ints(&[1, 2]),
        );
        let s = lp_solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective, int(1));
        assert!(s.verify(&p));
    }

    #[test]
    fn malformed_input_rejected() {
        let p = LpProblem::new(ints(&[1, 1]), vec![ints(&[1])], ints(&[1]));
        assert!(matches!(lp_solve(&p), Err(Error::DimensionMismatch(_))));
        let q = LpProblem::new(ints(&[1]), vec![ints(&[1])], ints(&[1, 2]));
        assert!(matches!(lp_solve(&q), Err(Error::DimensionMismatch(_))));
    }
}
