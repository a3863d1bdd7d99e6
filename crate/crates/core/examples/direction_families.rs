//! Sizes of every named direction family.

use illumination::exact::ratio;
use illumination::sets::{family, FamilyParams, FamilyTag};

fn main() -> illumination::Result<()> {
    println!("{:<8} {}", "family", (3..=8).map(|n| format!("{n:>6}")).collect::<String>());
    for tag in FamilyTag::ALL {
        let mut row = format!("{:<8} ", tag.name());
        for n in 3..=8usize {
            let params = FamilyParams {
                n,
                eta: Some(ratio(1, 2 * (n as i64 + 1))),
                seed: (tag == FamilyTag::T3).then_some(1),
                ..Default::default()
            };
            match family(tag, &params) {
                Ok(set) => row += &format!("{:>6}", set.len()),
                Err(_) => row += &format!("{:>6}", "-"),
            }
        }
        println!("{row}");
    }
    Ok(())
}
