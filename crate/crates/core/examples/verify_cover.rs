//! Check that a direction set illuminates a random body and re-validate
//! every certificate in the report.

use illumination::exact::format_scalar;
use illumination::illum::verify_set;
use illumination::scenarios::{random_symmetric, Profile};
use illumination::sets::{default_delta, method2_set, t1, t2};

fn main() -> illumination::Result<()> {
    for seed in 0..6 {
        let named = random_symmetric(4, seed, Profile::for_seed(seed))?;
        let b = &named.body;
        let dist = &b.invariants()?.dist_to_cube;
        print!("{:<28} dist {:>6}", named.id.to_string(), format_scalar(dist));
        for set in [method2_set(4, &default_delta(4))?, t1(4)?, t2(4)?] {
            let report = verify_set(b, &set)?;
            assert!(report.validate(b)?);
            print!("  {} {:?}", set.id, report.verdict);
        }
        println!();
    }
    Ok(())
}
