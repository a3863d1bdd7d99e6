//! The explicit bodies on which small direction sets fail.

use illumination::scenarios::{verify_b1_lower_bound, verify_b2_claims, verify_b3_claims, verify_b4_claims};

fn main() -> illumination::Result<()> {
    let results = [
        verify_b1_lower_bound(3)?,
        verify_b2_claims()?,
        verify_b3_claims()?,
        verify_b4_claims(4)?,
    ];
    for r in results {
        println!("{}: {:?}", r.claim, r.verdict);
        println!("  {}", r.details);
        println!("  {} certificates", r.certificates.len());
    }
    Ok(())
}
