//! Every non-zero sign pattern is deep-illuminated by the Method 2 set.

use illumination::exact::Vector;
use illumination::illum::deep_illuminates;
use illumination::sets::{default_delta, method2_set, minus2_removed, minus2_set};

fn main() -> illumination::Result<()> {
    let n = 4;
    let delta = default_delta(n);
    let full = method2_set(n, &delta)?;
    let reduced = minus2_set(n, &delta)?;
    let removed = minus2_removed(n, &delta);

    let mut patterns = Vec::new();
    for code in 1..3u32.pow(n as u32) {
        let mut c = code;
        let coords: Vec<i64> = (0..n)
            .map(|_| {
                let s = (c % 3) as i64 - 1;
                c /= 3;
                s
            })
            .collect();
        if coords.iter().any(|&s| s != 0) {
            patterns.push(Vector::from_ints(&coords));
        }
    }
    let missed = |set: &illumination::illum::DirectionSet| -> Vec<Vector> {
        patterns
            .iter()
            .filter(|x| !set.iter().any(|d| deep_illuminates(&d.vector, x)))
            .cloned()
            .collect()
    };
    println!("{} patterns; Method 2 misses {}", patterns.len(), missed(&full).len());
    let gaps = missed(&reduced);
    println!("without ±{:?} it misses:", removed.to_strings());
    for x in gaps {
        println!("  {:?}", x.to_strings());
    }
    Ok(())
}
