//! Direction families: perturbed basis vectors, Gray-code and recursive
//! deep-illuminating sets, their reduced variants, and the sign-vector
//! families used for bodies close to the cube.

mod binomial;
mod r0;

use num_traits::{One, Signed, Zero};

pub use binomial::{asymptotic_exponent, binomial, binomial_bounds, lhs_sum, tn_cardinality, BinomialBounds};
pub use r0::{p1_check, r0_full, r0_greedy, t3};

use crate::error::{Error, Result};
use crate::exact::{format_scalar, int, ratio, Scalar, Vector};
use crate::illum::{Direction, DirectionSet};

fn check_delta(delta: &Scalar) -> Result<()> {
    if !delta.is_positive() || delta >= &Scalar::one() {
        return Err(Error::InvalidParameter(format!(
            "delta must lie in (0, 1), got {}",
            format_scalar(delta)
        )));
    }
    Ok(())
}

fn check_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParameter(format!("n must be at least {min}, got {n}")));
    }
    Ok(())
}

/// `δ = 1/(n+1)`.
pub fn default_delta(n: usize) -> Scalar {
    ratio(1, n as i64 + 1)
}

fn sign_vectors(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0u64..1 << n).map(move |mask| {
        (0..n)
            .map(|i| if mask >> (n - 1 - i) & 1 == 1 { -1 } else { 1 })
            .collect()
    })
}

/// All `n 2^n` vectors `±e_i + Σ_{j≠i} ±δ e_j`.
pub fn big_set(n: usize, delta: &Scalar) -> Result<DirectionSet> {
    check_n(n, 1)?;
    check_delta(delta)?;
    let label = format!("G(n={n},delta={})", format_scalar(delta));
    let mut vectors = Vec::with_capacity(n << n);
    for i in 0..n {
        for signs in sign_vectors(n) {
            vectors.push(Vector::new(
                signs
                    .iter()
                    .enumerate()
                    .map(|(j, &s)| if j == i { int(s) } else { delta * int(s) })
                    .collect(),
            ));
        }
    }
    DirectionSet::from_vectors(label.clone(), &label, vectors)
}

/// A cyclic ordering of `{-1, 1}^n` in which neighbours differ in one coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayCodeSequence {
    pub n: usize,
    pub sequence: Vec<Vec<i8>>,
}

impl GrayCodeSequence {
    /// All invariants: every sign vector once, cyclic single flips,
    /// `w_1 = (1,...,1)` and `w_last = (1,...,1,-1)`.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        let len = self.sequence.len();
        if len != 1 << n || self.sequence.iter().any(|w| w.len() != n || w.iter().any(|&c| c != 1 && c != -1)) {
            return false;
        }
        let distinct: std::collections::BTreeSet<&Vec<i8>> = self.sequence.iter().collect();
        if distinct.len() != len {
            return false;
        }
        let flips_once = (0..len).all(|r| {
            let a = &self.sequence[r];
            let b = &self.sequence[(r + 1) % len];
            a.iter().zip(b).filter(|(x, y)| x != y).count() == 1
        });
        let mut last = vec![1i8; n];
        last[n - 1] = -1;
        flips_once && self.sequence[0] == vec![1i8; n] && self.sequence[len - 1] == last
    }
}

/// Binary-reflected code grown from `(1,1), (-1,1), (-1,-1), (1,-1)`: the
/// sequence is followed by its reverse, with `1` appended to the first copy
/// and `-1` to the second.
pub fn gray_code(n: usize) -> Result<GrayCodeSequence> {
    check_n(n, 2)?;
    let mut seq: Vec<Vec<i8>> = vec![vec![1, 1], vec![-1, 1], vec![-1, -1], vec![1, -1]];
    for _ in 2..n {
        let mut next = Vec::with_capacity(seq.len() * 2);
        for w in &seq {
            let mut v = w.clone();
            v.push(1);
            next.push(v);
        }
        for w in seq.iter().rev() {
            let mut v = w.clone();
            v.push(-1);
            next.push(v);
        }
        seq = next;
    }
    Ok(GrayCodeSequence { n, sequence: seq })
}

/// `d_r = -w_{r,i} e_i - δ Σ_{j≠i} w_{r,j} e_j`, where `i` is the coordinate
/// flipped between `w_r` and `w_{r+1}` (cyclically).
pub fn method1_set(n: usize, delta: &Scalar) -> Result<DirectionSet> {
    check_delta(delta)?;
    let code = gray_code(n)?;
    let label = format!("method1(n={n},delta={})", format_scalar(delta));
    let len = code.sequence.len();
    let vectors = (0..len).map(|r| {
        let w = &code.sequence[r];
        let next = &code.sequence[(r + 1) % len];
        let flipped = (0..n).find(|&i| w[i] != next[i]).expect("gray code step");
        Vector::new(
            (0..n)
                .map(|j| {
                    let s = int(-(w[j] as i64));
                    if j == flipped {
                        s
                    } else {
                        delta * s
                    }
                })
                .collect(),
        )
    });
    DirectionSet::from_vectors(label.clone(), &label, vectors.collect::<Vec<_>>())
}

fn method2_vectors(n: usize, delta: &Scalar) -> Vec<Vec<Scalar>> {
    let d = delta.clone();
    let mut current: Vec<Vec<Scalar>> = vec![
        vec![int(1), d.clone()],
        vec![int(-1), -d.clone()],
        vec![d.clone(), int(-1)],
        vec![-d.clone(), int(1)],
    ];
    for _ in 2..n {
        let mut next = Vec::with_capacity(current.len() * 2);
        for v in &current {
            let last = v.last().expect("non-empty").signum();
            let mut w = v.clone();
            w.push(last * &d);
            next.push(w);
        }
        for v in &current {
            let last = v.last().expect("non-empty").signum();
            let mut w: Vec<Scalar> = v.iter().map(|c| c.signum() * &d).collect();
            w.push(-last);
            next.push(w);
        }
        current = next;
    }
    current
}

/// The recursive negation-closed set of `2^n` directions.
pub fn method2_set(n: usize, delta: &Scalar) -> Result<DirectionSet> {
    check_n(n, 2)?;
    check_delta(delta)?;
    let label = format!("method2(n={n},delta={})", format_scalar(delta));
    DirectionSet::from_vectors(
        label.clone(),
        &label,
        method2_vectors(n, delta).into_iter().map(Vector::new).collect::<Vec<_>>(),
    )
}

/// `(δ, ..., δ, -δ, 1)`.
pub fn minus2_removed(n: usize, delta: &Scalar) -> Vector {
    let mut v = vec![delta.clone(); n];
    v[n - 2] = -delta.clone();
    v[n - 1] = int(1);
    Vector::new(v)
}

/// The recursive set without the pair `±(δ, ..., δ, -δ, 1)`.
pub fn minus2_set(n: usize, delta: &Scalar) -> Result<DirectionSet> {
    check_n(n, 3)?;
    let base = method2_set(n, delta)?;
    let r = minus2_removed(n, delta);
    let mut set = base.without(&[-&r, r]);
    set.id = format!("minus2(n={n},delta={})", format_scalar(delta));
    for d in set.directions.iter_mut() {
        d.provenance = set.id.clone();
    }
    Ok(set)
}

/// `minus2_set(n, 1/(n+1))` with `±(1, δ, ..., δ)` replaced by
/// `±(1, δ, ..., δ, η, δ)`, `η` in coordinate `n - 1`.
pub fn theorem_e_set(n: usize, eta: &Scalar) -> Result<DirectionSet> {
    check_n(n, 3)?;
    let delta = default_delta(n);
    if !eta.is_positive() || eta >= &delta {
        return Err(Error::InvalidParameter(format!(
            "eta must lie in (0, 1/{}), got {}",
            n + 1,
            format_scalar(eta)
        )));
    }
    let mut base = minus2_set(n, &delta)?;
    let mut old = vec![delta.clone(); n];
    old[0] = int(1);
    let old = Vector::new(old);
    let before = base.len();
    base = base.without(&[-&old, old.clone()]);
    if base.len() + 2 != before {
        return Err(Error::InvalidParameter("reduced set lacks the pair to be modified".into()));
    }
    let mut new = old.into_coords();
    new[n - 2] = eta.clone();
    let new = Vector::new(new);
    let id = format!("thmE(n={n},eta={})", format_scalar(eta));
    let mut set = DirectionSet {
        id: id.clone(),
        directions: base
            .directions
            .into_iter()
            .map(|d| Direction {
                vector: d.vector,
                provenance: id.clone(),
            })
            .collect(),
    };
    set.push(Direction::new(-&new, format!("{id}:eta-pair"))?);
    set.push(Direction::new(new, format!("{id}:eta-pair"))?);
    Ok(set)
}

fn with_last(signs: &[i64], last: i64) -> Vector {
    let mut v: Vec<i64> = signs.to_vec();
    v.push(last);
    Vector::from_ints(&v)
}

/// Sign vectors with a `-1` among the first `n - 1` coordinates, and
/// `e_1 + ... + e_{n-1}`.
pub fn t1(n: usize) -> Result<DirectionSet> {
    check_n(n, 2)?;
    let mut vectors: Vec<Vector> = sign_vectors(n)
        .filter(|s| s[..n - 1].contains(&-1))
        .map(|s| Vector::from_ints(&s))
        .collect();
    vectors.push(Vector::prefix_ones(n, n - 1));
    DirectionSet::from_vectors(format!("T1(n={n})"), "T1", vectors)
}

fn square_part(n: usize) -> Vec<Vector> {
    sign_vectors(n - 1).map(|s| with_last(&s, 0)).collect()
}

/// `({-1,1}^{n-1} × {0}) ∪ {±e_n}`.
pub fn t2(n: usize) -> Result<DirectionSet> {
    check_n(n, 2)?;
    let mut vectors = square_part(n);
    vectors.push(Vector::unit(n, n - 1));
    vectors.push(-&Vector::unit(n, n - 1));
    DirectionSet::from_vectors(format!("T2(n={n})"), "T2", vectors)
}

/// `({-1,1}^{n-1} × {0}) ∪ {±e_i}`.
pub fn t2prime(n: usize) -> Result<DirectionSet> {
    check_n(n, 2)?;
    let mut vectors = square_part(n);
    for i in 0..n {
        vectors.push(Vector::unit(n, i));
        vectors.push(-&Vector::unit(n, i));
    }
    DirectionSet::from_vectors(format!("T2'(n={n})"), "T2prime", vectors)
}

/// `{-1,1}^{n-1} × {0}`, shared by the sets built on `R_0`.
pub(crate) fn signed_square(n: usize) -> Vec<Vector> {
    square_part(n)
}

/// `(1/(n+1)) ε × {±1}` over sign vectors `ε ∈ {-1,1}^{n-1}` with at most
/// `(n-2)/4` entries equal to `-1`, or at most that many equal to `+1`.
pub fn tn_set(n: usize) -> Result<DirectionSet> {
    check_n(n, 4)?;
    let delta = default_delta(n);
    let cap = (n - 2) / 4;
    let mut vectors = Vec::new();
    for target in [-1i64, 1] {
        for signs in sign_vectors(n - 1) {
            if signs.iter().filter(|&&s| s == target).count() > cap {
                continue;
            }
            for last in [1i64, -1] {
                let mut v: Vec<Scalar> = signs.iter().map(|&s| &delta * int(s)).collect();
                v.push(int(last));
                vectors.push(Vector::new(v));
            }
        }
    }
    DirectionSet::from_vectors(format!("Tn(n={n})"), "Tn", vectors)
}

fn embed(set: &DirectionSet) -> Vec<Vector> {
    set.iter()
        .map(|d| {
            let mut v = d.vector.coords().to_vec();
            v.push(Scalar::zero());
            Vector::new(v)
        })
        .collect()
}

/// `[method2_set(n-1, 1/n) × {0}] ∪ {±e_n}`.
pub fn thm41_set(n: usize) -> Result<DirectionSet> {
    check_n(n, 3)?;
    let inner = method2_set(n - 1, &ratio(1, n as i64))?;
    let mut vectors = embed(&inner);
    vectors.push(Vector::unit(n, n - 1));
    vectors.push(-&Vector::unit(n, n - 1));
    DirectionSet::from_vectors(format!("thm41(n={n})"), &format!("thm41(n={n})"), vectors)
}

/// `[method2_set(n-1, 1/n) × {0}] ∪ tn_set(n)`.
pub fn thm44_set(n: usize) -> Result<DirectionSet> {
    check_n(n, 4)?;
    let inner = method2_set(n - 1, &ratio(1, n as i64))?;
    let base = DirectionSet::from_vectors(format!("thm44(n={n})"), &inner.id, embed(&inner))?;
    let mut set = base.union(&tn_set(n)?);
    set.id = format!("thm44(n={n})");
    Ok(set)
}

/// Every family that can be emitted by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    G,
    Method1,
    Method2,
    Minus2,
    ThmE,
    T1,
    T2,
    T2prime,
    T3,
    Tn,
    Thm41,
    Thm44,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 12] = [
        FamilyTag::G,
        FamilyTag::Method1,
        FamilyTag::Method2,
        FamilyTag::Minus2,
        FamilyTag::ThmE,
        FamilyTag::T1,
        FamilyTag::T2,
        FamilyTag::T2prime,
        FamilyTag::T3,
        FamilyTag::Tn,
        FamilyTag::Thm41,
        FamilyTag::Thm44,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::G => "G",
            FamilyTag::Method1 => "Method1",
            FamilyTag::Method2 => "Method2",
            FamilyTag::Minus2 => "Minus2",
            FamilyTag::ThmE => "ThmE",
            FamilyTag::T1 => "T1",
            FamilyTag::T2 => "T2",
            FamilyTag::T2prime => "T2prime",
            FamilyTag::T3 => "T3",
            FamilyTag::Tn => "Tn",
            FamilyTag::Thm41 => "Thm41",
            FamilyTag::Thm44 => "Thm44",
        }
    }

    pub fn parse(text: &str) -> Result<FamilyTag> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(text))
            .ok_or_else(|| {
                let names: Vec<&str> = FamilyTag::ALL.iter().map(|t| t.name()).collect();
                Error::InvalidParameter(format!("unknown family `{text}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, Default)]
pub struct FamilyParams {
    pub n: usize,
    /// Defaults to `1/(n+1)`.
    pub delta: Option<Scalar>,
    pub eta: Option<Scalar>,
    /// Seed for `T3`; without one the full `R_0` is used.
    pub seed: Option<u64>,
    pub budget: Option<usize>,
}

pub fn family(tag: FamilyTag, params: &FamilyParams) -> Result<DirectionSet> {
    let n = params.n;
    let delta = params.delta.clone().unwrap_or_else(|| default_delta(n));
    match tag {
        FamilyTag::G => big_set(n, &delta),
        FamilyTag::Method1 => method1_set(n, &delta),
        FamilyTag::Method2 => method2_set(n, &delta),
        FamilyTag::Minus2 => minus2_set(n, &delta),
        FamilyTag::ThmE => {
            let eta = params
                .eta
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("ThmE needs --eta".into()))?;
            theorem_e_set(n, eta)
        }
        FamilyTag::T1 => t1(n),
        FamilyTag::T2 => t2(n),
        FamilyTag::T2prime => t2prime(n),
        FamilyTag::T3 => {
            let r0 = match params.seed {
                Some(seed) => r0_greedy(n, seed, params.budget.unwrap_or(8))?,
                None => r0_full(n)?,
            };
            t3(n, &r0)
        }
        FamilyTag::Tn => tn_set(n),
        FamilyTag::Thm41 => thm41_set(n),
        FamilyTag::Thm44 => thm44_set(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(items: &[Scalar]) -> Vector {
        Vector::new(items.to_vec())
    }

    #[test]
    fn method1_in_the_plane() {
        let d = ratio(1, 3);
        let set = method1_set(2, &d).unwrap();
        let expected = vec![
            v(&[int(-1), -d.clone()]),
            v(&[d.clone(), int(-1)]),
            v(&[int(1), d.clone()]),
            v(&[-d.clone(), int(1)]),
        ];
        assert_eq!(set.vectors(), expected);
    }

    #[test]
    fn method2_in_dimension_three() {
        let d = ratio(1, 4);
        let got = method2_set(3, &d).unwrap().vectors();
        let expected = vec![
            v(&[int(1), d.clone(), d.clone()]),
            v(&[int(-1), -d.clone(), -d.clone()]),
            v(&[d.clone(), int(-1), -d.clone()]),
            v(&[-d.clone(), int(1), d.clone()]),
            v(&[d.clone(), d.clone(), int(-1)]),
            v(&[-d.clone(), -d.clone(), int(1)]),
            v(&[d.clone(), -d.clone(), int(1)]),
            v(&[-d.clone(), d.clone(), int(-1)]),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn gray_codes_are_valid() {
        for n in 2..=10 {
            assert!(gray_code(n).unwrap().is_valid(), "n = {n}");
        }
        assert!(gray_code(1).is_err());
    }

    #[test]
    fn eta_set_in_dimension_three() {
        let eta = ratio(1, 20);
        let set = theorem_e_set(3, &eta).unwrap();
        let p = v(&[int(1), eta.clone(), ratio(1, 4)]);
        assert!(set.contains(&p) && set.contains(&-&p));
        assert_eq!(set.len(), 6);
        assert!(theorem_e_set(3, &ratio(1, 4)).is_err());
        assert!(theorem_e_set(3, &int(0)).is_err());
    }

    #[test]
    fn minus2_removes_the_expected_pair() {
        let d = ratio(1, 4);
        let set = minus2_set(3, &d).unwrap();
        assert_eq!(set.len(), 6);
        let r = v(&[d.clone(), -d.clone(), int(1)]);
        assert!(!set.contains(&r) && !set.contains(&-&r));
    }

    #[test]
    fn t_families() {
        let t = t1(3).unwrap();
        assert!(!t.contains(&Vector::from_ints(&[1, 1, 1])));
        assert!(!t.contains(&Vector::from_ints(&[1, 1, -1])));
        assert!(t.contains(&Vector::from_ints(&[1, 1, 0])));
        assert_eq!(t.len(), 7);
        assert_eq!(t2(3).unwrap().len(), 6);
        assert_eq!(t2prime(3).unwrap().len(), 10);
        assert_eq!(tn_set(4).unwrap().len(), 4);
        assert_eq!(tn_set(6).unwrap().len(), 24);
    }

    #[test]
    fn family_names_parse() {
        for tag in FamilyTag::ALL {
            assert_eq!(FamilyTag::parse(tag.name()).unwrap(), tag);
        }
        assert!(FamilyTag::parse("nope").is_err());
    }
}
