//! Column generation on top of [`lp_solve`].
//!
//! The master problem has a fixed block of columns plus columns produced on
//! demand by a [`ColumnOracle`]. Each round re-solves the restricted master;
//! when it is infeasible the Farkas vector is priced, otherwise the optimal
//! duals are. The loop stops once the oracle certifies that no column has
//! positive profit, which makes the restricted optimum (or infeasibility
//! proof) valid for the full column set.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use super::lp::{lp_solve, LpProblem, LpSolution, LpStatus};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A generated column with its objective coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Column {
    pub entries: Vec<Scalar>,
    pub cost: Scalar,
}

pub trait ColumnOracle {
    /// Returns a column maximizing `entries . dual - cost` (or
    /// `entries . dual` when `farkas` is set) over the implicit column set.
    /// `None` means the set is empty.
    fn best_column(&mut self, dual: &[Scalar], farkas: bool) -> Option<Column>;
}

#[derive(Clone, Debug)]
pub struct ColGenSolution {
    pub status: LpStatus,
    /// Values of the fixed columns (empty unless optimal).
    pub fixed: Vec<Scalar>,
    /// Generated columns with their values (empty unless optimal).
    pub generated: Vec<(Column, Scalar)>,
    pub dual: Vec<Scalar>,
    pub objective: Scalar,
    pub rounds: usize,
}

pub const DEFAULT_MAX_ROUNDS: usize = 10_000;

/// `base` holds the fixed columns; generated columns get lower bound zero.
pub fn solve_with_oracle<O: ColumnOracle>(
    base: &LpProblem,
    initial: Vec<Column>,
    oracle: &mut O,
    max_rounds: usize,
) -> Result<ColGenSolution> {
    let fixed = base.num_vars();
    let mut columns: Vec<Column> = Vec::new();
    let mut seen: HashSet<Column> = HashSet::new();
    for c in initial {
        if seen.insert(c.clone()) {
            columns.push(c);
        }
    }

    for round in 1..=max_rounds {
        let problem = restricted(base, &columns)?;
        let solution = lp_solve(&problem)?;
        let farkas = match solution.status {
            LpStatus::Unbounded => {
                return Ok(finish(LpStatus::Unbounded, solution, fixed, &columns, round));
            }
            LpStatus::Infeasible => true,
            LpStatus::Optimal => false,
        };
        let candidate = oracle.best_column(&solution.dual, farkas);
        let improving = candidate.filter(|c| {
            let value = c
                .entries
                .iter()
                .zip(&solution.dual)
                .fold(Scalar::zero(), |acc, (a, y)| acc + a * y);
            if farkas {
                value.is_positive()
            } else {
                (value - &c.cost).is_positive()
            }
        });
        match improving {
            None => return Ok(finish(solution.status, solution, fixed, &columns, round)),
            Some(c) => {
                if !seen.insert(c.clone()) {
                    return Err(Error::Lp(
                        "column oracle returned a column that is already in the master".into(),
                    ));
                }
                columns.push(c);
            }
        }
    }
    Err(Error::Lp(format!(
        "column generation did not converge in {max_rounds} rounds"
    )))
}

fn restricted(base: &LpProblem, columns: &[Column]) -> Result<LpProblem> {
    let m = base.num_rows();
    if let Some(c) = columns.iter().find(|c| c.entries.len() != m) {
        return Err(Error::DimensionMismatch(format!(
            "generated column has {} entries, master has {m} rows",
            c.entries.len()
        )));
    }
    let mut problem = base.clone();
    for c in columns {
        problem.objective.push(c.cost.clone());
        problem.lower.push(Scalar::zero());
        for (row, entry) in problem.constraints.iter_mut().zip(&c.entries) {
            row.push(entry.clone());
        }
    }
    Ok(problem)
}

fn finish(
    status: LpStatus,
    solution: LpSolution,
    fixed: usize,
    columns: &[Column],
    rounds: usize,
) -> ColGenSolution {
    let (fixed_values, generated) = if status == LpStatus::Optimal {
        let values = solution.primal;
        let generated = columns
            .iter()
            .cloned()
            .zip(values[fixed..].iter().cloned())
            .filter(|(_, v)| !v.is_zero())
            .collect();
        (values[..fixed].to_vec(), generated)
    } else {
        (Vec::new(), Vec::new())
    };
    ColGenSolution {
        status,
        fixed: fixed_values,
        generated,
        dual: solution.dual,
        objective: solution.objective,
        rounds,
    }
}
