//! Sparse sign patterns with the extension property: every `y` in
//! `{-1,0,1}^n` with `1 <= k <= ⌈n/2⌉` non-zero entries agrees, on its
//! support, with some member having exactly `2k - 1` non-zero entries.

use std::collections::HashSet;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::signed_square;
use crate::error::{Error, Result};
use crate::exact::{Scalar, Vector};
use crate::illum::DirectionSet;

/// Largest dimension for the exhaustive pattern checks.
pub const MAX_PATTERN_DIM: usize = 16;

/// `(support, negative)` bitmasks.
type Pattern = (u32, u32);

fn check_dim(n: usize) -> Result<()> {
    if !(2..=MAX_PATTERN_DIM).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "sign-pattern sets need 2 <= n <= {MAX_PATTERN_DIM}, got {n}"
        )));
    }
    Ok(())
}

fn to_vector(n: usize, (support, negative): Pattern) -> Vector {
    Vector::new(
        (0..n)
            .map(|i| {
                if support >> i & 1 == 0 {
                    Scalar::zero()
                } else if negative >> i & 1 == 1 {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            })
            .collect(),
    )
}

fn to_pattern(v: &Vector) -> Option<Pattern> {
    let mut support = 0;
    let mut negative = 0;
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        support |= 1 << i;
        if *c == -Scalar::one() {
            negative |= 1 << i;
        } else if !c.is_one() {
            return None;
        }
    }
    Some((support, negative))
}

/// Sub-masks of `mask` with exactly `k` bits.
fn subsets_of_size(mask: u32, k: u32) -> Vec<u32> {
    let bits: Vec<u32> = (0..32).filter(|i| mask >> i & 1 == 1).collect();
    let mut out = Vec::new();
    let m = bits.len() as u32;
    if k > m {
        return out;
    }
    for sel in 0u32..(1 << m) {
        if sel.count_ones() == k {
            out.push(
                (0..m)
                    .filter(|j| sel >> j & 1 == 1)
                    .fold(0, |acc, j| acc | 1 << bits[j as usize]),
            );
        }
    }
    out
}

fn max_k(n: usize) -> u32 {
    n.div_ceil(2) as u32
}

/// The `y` patterns that `z` serves.
fn served(z: Pattern) -> Vec<Pattern> {
    let m = z.0.count_ones();
    if m.is_multiple_of(2) {
        return Vec::new();
    }
    let k = m.div_ceil(2);
    subsets_of_size(z.0, k)
        .into_iter()
        .map(|s| (s, z.1 & s))
        .collect()
}

fn all_targets(n: usize) -> Vec<Pattern> {
    let mut out = Vec::new();
    for support in 1u32..(1 << n) {
        if support.count_ones() > max_k(n) {
            continue;
        }
        for neg in subsets_of(support) {
            out.push((support, neg));
        }
    }
    out
}

fn subsets_of(mask: u32) -> Vec<u32> {
    let mut out = vec![0];
    let mut s = mask;
    while s != 0 {
        out.push(s);
        s = (s - 1) & mask;
    }
    out
}

/// Every `z ∈ {-1,0,1}^n` with `2k - 1` non-zero entries, `k <= ⌈n/2⌉`.
pub fn r0_full(n: usize) -> Result<DirectionSet> {
    check_dim(n)?;
    let mut patterns = Vec::new();
    for support in 1u32..(1 << n) {
        let m = support.count_ones();
        if m % 2 == 1 && m < 2 * max_k(n) {
            for neg in subsets_of(support) {
                patterns.push((support, neg));
            }
        }
    }
    let mut vectors: Vec<Vector> = patterns.into_iter().map(|p| to_vector(n, p)).collect();
    vectors.sort();
    DirectionSet::from_vectors(format!("R0_full(n={n})"), "R0_full", vectors)
}

/// Exhaustive check of the extension property.
pub fn p1_check(r0: &DirectionSet, n: usize) -> Result<bool> {
    check_dim(n)?;
    let mut servable: HashSet<Pattern> = HashSet::new();
    for d in r0.iter() {
        if d.vector.dim() != n {
            return Err(Error::DimensionMismatch(format!(
                "R0 member has dimension {}, expected {n}",
                d.vector.dim()
            )));
        }
        if let Some(z) = to_pattern(&d.vector) {
            servable.extend(served(z));
        }
    }
    Ok(all_targets(n).par_iter().all(|y| servable.contains(y)))
}

/// Randomized greedy search for a small set with the extension property.
/// Runs `budget` independent passes from one seeded stream and keeps the
/// smallest result.
pub fn r0_greedy(n: usize, seed: u64, budget: usize) -> Result<DirectionSet> {
    check_dim(n)?;
    const CANDIDATES: usize = 24;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets = all_targets(n);
    let mut best: Option<Vec<Pattern>> = None;
    for _ in 0..budget.max(1) {
        let mut order = targets.clone();
        order.shuffle(&mut rng);
        let mut open: HashSet<Pattern> = targets.iter().copied().collect();
        let mut chosen: Vec<Pattern> = Vec::new();
        for y in order {
            if !open.contains(&y) {
                continue;
            }
            let k = y.0.count_ones();
            let free: Vec<u32> = (0..n as u32).filter(|i| y.0 >> i & 1 == 0).collect();
            let mut pick: Option<(usize, Pattern)> = None;
            for _ in 0..CANDIDATES {
                let extra: Vec<u32> = free.choose_multiple(&mut rng, (k - 1) as usize).copied().collect();
                let mut z = y;
                for i in extra {
                    z.0 |= 1 << i;
                    if rng.gen::<bool>() {
                        z.1 |= 1 << i;
                    }
                }
                let gain = served(z).iter().filter(|p| open.contains(p)).count();
                if pick.is_none_or(|(g, _)| gain > g) {
                    pick = Some((gain, z));
                }
            }
            let (_, z) = pick.expect("at least one candidate");
            for p in served(z) {
                open.remove(&p);
            }
            chosen.push(z);
        }
        if best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
            best = Some(chosen);
        }
    }
    let mut vectors: Vec<Vector> = best
        .expect("budget >= 1")
        .into_iter()
        .map(|p| to_vector(n, p))
        .collect();
    vectors.sort();
    vectors.dedup();
    let label = format!("R0_greedy(n={n},seed={seed},budget={budget})");
    let set = DirectionSet::from_vectors(label.clone(), &label, vectors)?;
    if !p1_check(&set, n)? {
        return Err(Error::InvalidParameter("greedy R0 failed the extension check".into()));
    }
    Ok(set)
}

/// `({-1,1}^{n-1} × {0}) ∪ R_0`, after validating `R_0`.
pub fn t3(n: usize, r0: &DirectionSet) -> Result<DirectionSet> {
    if !p1_check(r0, n)? {
        return Err(Error::InvalidParameter(format!(
            "{} lacks the extension property",
            r0.id
        )));
    }
    let square = DirectionSet::from_vectors(format!("T3(n={n})"), "T3:square", signed_square(n))?;
    let mut set = square.union(r0);
    set.id = format!("T3(n={n},{})", r0.id);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn served_patterns() {
        // z = (1,-1,1): k = 2, serves the three 2-subsets
        let z = (0b111, 0b010);
        let mut got = served(z);
        got.sort();
        assert_eq!(got, vec![(0b011, 0b010), (0b101, 0), (0b110, 0b010)]);
        assert!(served((0b11, 0)).is_empty());
    }

    #[test]
    fn full_r0_has_the_property_and_singletons_are_forced() {
        let full = r0_full(4).unwrap();
        assert!(p1_check(&full, 4).unwrap());
        let e1 = Vector::unit(4, 0);
        assert!(!p1_check(&full.without(&[e1]), 4).unwrap());
    }

    #[test]
    fn t3_rejects_bad_r0() {
        let r0 = DirectionSet::from_vectors("bad", "test", [Vector::unit(3, 0)]).unwrap();
        assert!(t3(3, &r0).is_err());
        assert_eq!(t3(3, &r0_full(3).unwrap()).unwrap().len(), 4 + r0_full(3).unwrap().len());
    }
}
