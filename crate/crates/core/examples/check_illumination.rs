//! Decide illumination of single boundary points, with certificates.

use illumination::exact::Vector;
use illumination::illum::illuminates;
use illumination::scenarios::NamedBody;

fn show(body: &str, x: &[i64], d: &[i64]) -> illumination::Result<()> {
    let b = NamedBody::parse(body)?.body;
    let (x, d) = (Vector::from_ints(x), Vector::from_ints(d));
    let (ok, cert) = illuminates(&b, &x, &d)?;
    println!("{body}: x = {:?}, d = {:?} -> {ok}", x.to_strings(), d.to_strings());
    println!("  {}", serde_json::to_string(&cert.to_record(&x, &d)).unwrap());
    println!("  re-checks: {}", cert.validate(&b, &x, &d)?);
    Ok(())
}

fn main() -> illumination::Result<()> {
    show("B1:3", &[1, 0, 0], &[-1, 0, 0])?;
    show("cube:3", &[1, 1, 1], &[1, 0, 0])?;
    show("cube:3", &[1, 1, 1], &[-1, -1, -1])?;
    show("cross:3", &[0, 1, 0], &[1, -1, 1])?;
    Ok(())
}
