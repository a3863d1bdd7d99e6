//! Seeded random bodies from each profile and where their invariants land.

use illumination::exact::{format_scalar, to_f64};
use illumination::scenarios::{random_symmetric, Profile};

fn main() -> illumination::Result<()> {
    for profile in Profile::ALL {
        let mut dists = Vec::new();
        for seed in 0..20 {
            let b = random_symmetric(5, seed, profile)?.body;
            dists.push(to_f64(&b.invariants()?.dist_to_cube));
        }
        dists.sort_by(f64::total_cmp);
        println!(
            "{:<11} dist min {:.3} median {:.3} max {:.3}",
            profile.name(),
            dists[0],
            dists[dists.len() / 2],
            dists[dists.len() - 1]
        );
    }
    let b = random_symmetric(4, 7, Profile::Mid)?;
    println!("{}:", b.id);
    for g in b.body.representatives() {
        println!("  {:?}", g.to_strings());
    }
    println!("  eta = {}", format_scalar(&b.body.invariants()?.eta));
    Ok(())
}
