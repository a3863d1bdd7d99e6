//! Exact minimum number of sign directions illuminating B1 in three dimensions.

use illumination::illum::min_cover;
use illumination::scenarios::{sign_pool, NamedBody};

fn main() -> illumination::Result<()> {
    for spec in ["cube:3", "cross:3", "B1:3"] {
        let b = NamedBody::parse(spec)?.body;
        let best = min_cover(&b, &sign_pool(3))?;
        println!(
            "{spec}: {} directions (greedy {}, root bound {}, {} nodes)",
            best.size, best.greedy_size, best.root_lower_bound, best.nodes_explored
        );
        for d in best.subset.iter() {
            println!("  {:?}", d.vector.to_strings());
        }
    }
    Ok(())
}
