//! An almost symmetric polytope, its symmetry defect and the gauge of its
//! symmetrization.

use illumination::body::SymmetricBody;
use illumination::exact::{format_scalar, ratio, Vector};

fn main() -> illumination::Result<()> {
    // A square with one corner pulled out.
    let k = SymmetricBody::polytope(vec![
        Vector::new(vec![ratio(5, 4), ratio(1, 1)]),
        Vector::from_ints(&[-1, 1]),
        Vector::from_ints(&[-1, -1]),
        Vector::from_ints(&[1, -1]),
    ])?;
    let alpha = k.symmetry_defect()?;
    println!("alpha = {}", format_scalar(&alpha));
    for x in [[1, 1], [-1, -1], [1, 0], [2, -1]] {
        let x = Vector::from_ints(&x);
        println!(
            "{:?}: gauge {} <= symmetrized {} <= alpha * gauge {}",
            x.to_strings(),
            format_scalar(&k.gauge(&x)?),
            format_scalar(&k.symmetrized_gauge(&x)?),
            format_scalar(&(&alpha * k.gauge(&x)?))
        );
    }
    Ok(())
}
