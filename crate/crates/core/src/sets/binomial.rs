use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `2 Σ_{s ≤ ⌊(n-1)/4⌋} C(n, s)`.
pub fn lhs_sum(n: u64) -> BigUint {
    let top = (n - 1) / 4;
    (0..=top).map(|s| binomial(n, s)).sum::<BigUint>() * 2u32
}

/// `4 Σ_{s ≤ ⌊(n-2)/4⌋} C(n-1, s)`.
pub fn tn_cardinality(n: u64) -> BigUint {
    let top = (n - 2) / 4;
    (0..=top).map(|s| binomial(n - 1, s)).sum::<BigUint>() * 4u32
}

fn log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 60 {
        return x.to_f64().expect("small").log2();
    }
    let shift = bits - 60;
    (x >> shift).to_f64().expect("60 bits fit").log2() + shift as f64
}

/// `(1/4) log2(256/27)`.
pub fn asymptotic_exponent() -> f64 {
    0.25 * (256.0f64 / 27.0).log2()
}

/// Exact outcomes of the binomial partial-sum estimates at one `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinomialBounds {
    pub n: u64,
    pub lhs: String,
    /// `lhs <= 2^(n-1) - 2`.
    pub main_bound: bool,
    /// `lhs == 2^(n-1) - 2`.
    pub tight: bool,
    /// `2^(n-1) - lhs`, the slack.
    pub gap: String,
    /// `lhs <= 2^(n-1) - C(n, ⌊n/2⌋)`.
    pub central_bound: bool,
    /// `log2(lhs) / n`.
    pub log_ratio: f64,
}

pub fn binomial_bounds(n: u64) -> BinomialBounds {
    assert!(n >= 3, "the estimates start at n = 3");
    let lhs = lhs_sum(n);
    let half = BigUint::one() << (n - 1);
    let lhs_i = BigInt::from(lhs.clone());
    let half_i = BigInt::from(half.clone());
    let gap = &half_i - &lhs_i;
    let central = &half_i - BigInt::from(binomial(n, n / 2));
    BinomialBounds {
        n,
        lhs: lhs.to_string(),
        main_bound: gap >= BigInt::from(2),
        tight: gap == BigInt::from(2),
        gap: gap.to_string(),
        central_bound: lhs_i <= central,
        log_ratio: log2(&lhs) / n as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_identity() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }
        assert_eq!(binomial(5, 7), BigUint::zero());
    }

    #[test]
    fn small_cases() {
        let b3 = binomial_bounds(3);
        assert!(b3.tight && b3.main_bound);
        assert_eq!(binomial_bounds(5).gap, "4");
        assert_eq!(binomial_bounds(6).gap, "18");
        assert_eq!(tn_cardinality(6), BigUint::from(24u32));
    }
}
