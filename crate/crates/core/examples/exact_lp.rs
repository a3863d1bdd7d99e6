//! Solve a small LP over the rationals and re-check its duality certificate.

use illumination::exact::{format_scalar, int, lp_solve, ratio, LpProblem};

fn main() -> illumination::Result<()> {
    // minimize -x - 2y  subject to  x + y + s1 = 4,  x + 3y + s2 = 6,  all >= 0
    let problem = LpProblem::new(
        vec![int(-1), int(-2), int(0), int(0)],
        vec![
            vec![int(1), int(1), int(1), int(0)],
            vec![int(1), int(3), int(0), int(1)],
        ],
        vec![int(4), int(6)],
    );
    let sol = lp_solve(&problem)?;
    println!("status {:?}, objective {}", sol.status, format_scalar(&sol.objective));
    println!("primal {:?}", sol.primal.iter().map(format_scalar).collect::<Vec<_>>());
    println!("dual   {:?}", sol.dual.iter().map(format_scalar).collect::<Vec<_>>());
    println!("certificate checks: {}", sol.verify(&problem));

    let infeasible = LpProblem::new(vec![int(0)], vec![vec![int(1)]], vec![ratio(-1, 2)]);
    let sol = lp_solve(&infeasible)?;
    println!("x = -1/2 with x >= 0: {:?}, Farkas check {}", sol.status, sol.verify(&infeasible));
    Ok(())
}
