//! Exact rational arithmetic, vectors and linear programming.

mod colgen;
mod lp;
mod scalar;
mod vector;

pub use colgen::{solve_with_oracle, ColGenSolution, Column, ColumnOracle, DEFAULT_MAX_ROUNDS};
pub use lp::{lp_solve, LpProblem, LpSolution, LpStatus};
pub use scalar::{checked_div, format_scalar, int, parse_scalar, ratio, sign, to_f64, Scalar};
pub use vector::Vector;
