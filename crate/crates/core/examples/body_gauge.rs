//! Gauges, support values, vertices and invariants of a 1-symmetric body.

use illumination::body::SymmetricBody;
use illumination::exact::{format_scalar, ratio, Vector};

fn main() -> illumination::Result<()> {
    let half = ratio(1, 2);
    let b = SymmetricBody::one_symmetric(vec![
        Vector::from_ints(&[1, 0, 0]),
        Vector::new(vec![half.clone(), half.clone(), half]),
    ])?;
    println!("{} vertices", b.vertices()?.len());

    for p in [[1, 1, 1], [1, 1, 0], [2, -1, 0]] {
        let p = Vector::from_ints(&p);
        let (g, normal) = b.gauge_with_normal(&p)?;
        println!(
            "gauge{:?} = {}  (full LP {}, normal {:?})",
            p.to_strings(),
            format_scalar(&g),
            format_scalar(&b.gauge_full_lp(&p)?),
            normal.to_strings()
        );
    }
    let u = Vector::from_ints(&[3, -1, 1]);
    println!("h(u) = {}", format_scalar(&b.support_value(&u)));

    let inv = b.invariants()?;
    println!(
        "m_B = {}, dist to cube = {}, eta = {}",
        inv.m_b,
        format_scalar(&inv.dist_to_cube),
        format_scalar(&inv.eta)
    );
    Ok(())
}
