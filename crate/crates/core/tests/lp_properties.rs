//! Simplex results against vertex enumeration, and exact scalar identities.
#![allow(clippy::needless_range_loop)]

use illumination::exact::{format_scalar, int, lp_solve, parse_scalar, ratio, LpProblem, LpStatus, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Solves the square system `m x = b`; `None` when singular.
fn solve_square(mut m: Vec<Vec<Scalar>>, mut b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let k = b.len();
    for col in 0..k {
        let pivot = (col..k).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..k {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..k {
                    let v = &f * &m[col][c];
                    m[r][c] -= v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some((0..k).map(|i| &b[i] / &m[i][i]).collect())
}

fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let v = &f * &m[r][j];
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Minimum over all basic feasible solutions of `A x = b, x >= 0`, for a
/// full-row-rank `A`. `None` when there are none.
fn brute_force(p: &LpProblem) -> Option<Scalar> {
    let m = p.num_rows();
    let k = p.num_vars();
    let mut best: Option<Scalar> = None;
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != m {
            continue;
        }
        let cols: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).collect();
        let square = p
            .constraints
            .iter()
            .map(|row| cols.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let Some(xs) = solve_square(square, p.rhs.clone()) else { continue };
        if xs.iter().any(|x| x < &Scalar::zero()) {
            continue;
        }
        let value = cols
            .iter()
            .zip(&xs)
            .fold(Scalar::zero(), |acc, (&j, x)| acc + &p.objective[j] * x);
        if best.as_ref().is_none_or(|b| &value < b) {
            best = Some(value);
        }
    }
    best
}

/// Bounded problems: random rows plus `sum x + s = 10` with a slack `s`.
fn bounded_problem() -> impl Strategy<Value = LpProblem> {
    (2usize..=5, 1usize..=3).prop_flat_map(|(vars, rows)| {
        (
            prop::collection::vec(-4i64..=4, vars),
            prop::collection::vec(prop::collection::vec(-3i64..=3, vars), rows),
            prop::collection::vec(0i64..=6, rows),
        )
            .prop_map(move |(c, a, b)| {
                let mut objective: Vec<Scalar> = c.into_iter().map(int).collect();
                objective.push(Scalar::zero());
                let mut constraints: Vec<Vec<Scalar>> = a
                    .into_iter()
                    .map(|row| {
                        let mut row: Vec<Scalar> = row.into_iter().map(int).collect();
                        row.push(Scalar::zero());
                        row
                    })
                    .collect();
                constraints.push(vec![Scalar::one(); vars + 1]);
                let mut rhs: Vec<Scalar> = b.into_iter().map(int).collect();
                rhs.push(int(10));
                LpProblem::new(objective, constraints, rhs)
            })
    })
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-1000i64..=1000, 1i64..=997).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn simplex_matches_vertex_enumeration(p in bounded_problem()) {
        prop_assume!(rank(&p.constraints) == p.num_rows());
        let sol = lp_solve(&p).unwrap();
        prop_assert!(sol.verify(&p));
        match brute_force(&p) {
            Some(best) => {
                prop_assert_eq!(sol.status, LpStatus::Optimal);
                prop_assert_eq!(sol.objective, best);
            }
            None => prop_assert_eq!(sol.status, LpStatus::Infeasible),
        }
    }

    #[test]
    fn certificates_check_with_redundant_rows(p in bounded_problem()) {
        let mut q = p.clone();
        let doubled: Vec<Scalar> = p.constraints[0].iter().map(|a| a * int(2)).collect();
        q.constraints.push(doubled);
        q.rhs.push(&p.rhs[0] * int(2));
        let a = lp_solve(&p).unwrap();
        let b = lp_solve(&q).unwrap();
        prop_assert!(b.verify(&q));
        prop_assert_eq!(a.status, b.status);
        if a.status == LpStatus::Optimal {
            prop_assert_eq!(a.objective, b.objective);
        }
    }

    #[test]
    fn addition_round_trips(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(parse_scalar(&format_scalar(&a)).unwrap(), a);
    }

    #[test]
    fn products_and_quotients_invert(a in rational(), b in rational()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a * &b) / &b, a);
    }
}
