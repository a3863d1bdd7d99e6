//! Named bodies, random bodies, and executable checks of the illumination
//! results: counterexample bounds, set constructions and covering theorems.

pub mod acceptance;
mod counterexamples;
mod registry;
mod theorems;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

pub use counterexamples::{
    b2_normal_families, verify_b1_lower_bound, verify_b2_claims, verify_b3_claims, verify_b4_claims,
};
pub use registry::{claim_ids, run_claim, ClaimParams, ClaimRun};
pub use theorems::{
    binomial_claim, claim_f_check, deep_completeness, lemma32_check, lemma52_check, oracle_equivalence,
    theorem_d_check, theorem_e_check, thm41_check, thm44_check, xray_census,
};

use crate::body::{SymmetricBody, SymmetryClass};
use crate::error::{Error, Result};
use crate::exact::{int, ratio, Scalar, Vector};
use crate::illum::{CertificateRecord, DirectionSet};

/// Largest dimension for random bodies.
pub const MAX_RANDOM_DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// A generator close to `1`: distance to the cube near 1.
    NearCube,
    /// Generators on a coarse grid.
    Mid,
    /// `e_1` plus generators with small tails.
    CrossLike,
}

impl Profile {
    pub const ALL: [Profile; 3] = [Profile::NearCube, Profile::Mid, Profile::CrossLike];

    pub fn name(self) -> &'static str {
        match self {
            Profile::NearCube => "near-cube",
            Profile::Mid => "mid",
            Profile::CrossLike => "cross-like",
        }
    }

    pub fn parse(text: &str) -> Result<Profile> {
        Profile::ALL
            .into_iter()
            .find(|p| p.name() == text)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown profile `{text}`")))
    }

    /// Profiles rotate with the seed so every regime is sampled.
    pub fn for_seed(seed: u64) -> Profile {
        Profile::ALL[(seed % 3) as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BodyId {
    B1(usize),
    B2,
    B3,
    B4(usize),
    CrossPolytope(usize),
    Cube(usize),
    Random { n: usize, seed: u64, profile: Profile },
}

impl fmt::Display for BodyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyId::B1(n) => write!(f, "B1({n})"),
            BodyId::B2 => write!(f, "B2"),
            BodyId::B3 => write!(f, "B3"),
            BodyId::B4(n) => write!(f, "B4({n})"),
            BodyId::CrossPolytope(n) => write!(f, "cross({n})"),
            BodyId::Cube(n) => write!(f, "cube({n})"),
            BodyId::Random { n, seed, profile } => write!(f, "random(n={n},seed={seed},{})", profile.name()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedBody {
    pub id: BodyId,
    pub body: SymmetricBody,
}

fn half_prefix(n: usize, k: usize, value: Scalar) -> Vector {
    let mut v = vec![Scalar::from_integer(0.into()); n];
    for c in v.iter_mut().take(k) {
        *c = value.clone();
    }
    Vector::new(v)
}

impl NamedBody {
    pub fn build(id: BodyId) -> Result<NamedBody> {
        let body = match &id {
            BodyId::B1(n) => {
                if *n < 2 {
                    return Err(Error::InvalidParameter("B1 needs n >= 2".into()));
                }
                SymmetricBody::one_symmetric(vec![Vector::unit(*n, 0), half_prefix(*n, *n, ratio(1, 2))])?
            }
            BodyId::B2 => SymmetricBody::one_symmetric(vec![Vector::unit(9, 0), half_prefix(9, 4, ratio(1, 2))])?,
            BodyId::B3 => SymmetricBody::with_options(
                25,
                vec![
                    Vector::unit(25, 0),
                    half_prefix(25, 3, ratio(2, 3)),
                    half_prefix(25, 12, ratio(1, 3)),
                ],
                SymmetryClass::OneSymmetric,
                true,
                crate::body::DEFAULT_ORBIT_CAP,
            )?,
            BodyId::B4(n) => {
                if *n < 4 {
                    return Err(Error::InvalidParameter("B4 needs n >= 4".into()));
                }
                let mut a = Vector::unit(*n, 0).into_coords();
                a[n - 1] = ratio(3, 4);
                let mut b = half_prefix(*n, n - 1, ratio(1, 2)).into_coords();
                b[n - 1] = ratio(3, 4);
                SymmetricBody::one_symmetric(vec![Vector::new(a), Vector::new(b)])?
            }
            BodyId::CrossPolytope(n) => SymmetricBody::one_symmetric(vec![Vector::unit(*n, 0)])?,
            BodyId::Cube(n) => SymmetricBody::one_symmetric(vec![Vector::ones(*n)])?,
            BodyId::Random { n, seed, profile } => random_body(*n, *seed, *profile)?,
        };
        Ok(NamedBody { id, body })
    }

    pub fn parse(text: &str) -> Result<NamedBody> {
        let bad = || Error::InvalidParameter(format!("unknown body `{text}` (try B1:3, B2, B3, B4:4, cross:3, cube:3, random:4:7)"));
        let parts: Vec<&str> = text.split(':').collect();
        let num = |i: usize| -> Result<usize> { parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad) };
        let id = match parts[0].to_ascii_lowercase().as_str() {
            "b1" => BodyId::B1(num(1)?),
            "b2" => BodyId::B2,
            "b3" => BodyId::B3,
            "b4" => BodyId::B4(num(1)?),
            "cross" => BodyId::CrossPolytope(num(1)?),
            "cube" => BodyId::Cube(num(1)?),
            "random" => {
                let seed = num(2)? as u64;
                let profile = match parts.get(3) {
                    Some(p) => Profile::parse(p)?,
                    None => Profile::for_seed(seed),
                };
                BodyId::Random {
                    n: num(1)?,
                    seed,
                    profile,
                }
            }
            _ => return Err(bad()),
        };
        NamedBody::build(id)
    }
}

/// `{-1,0,1}^n \\ {0}` in lexicographic order.
pub fn sign_pool(n: usize) -> DirectionSet {
    let mut vectors = Vec::new();
    for code in 0..3u64.pow(n as u32) {
        let mut c = code;
        let mut v = vec![0i64; n];
        for i in (0..n).rev() {
            v[i] = (c % 3) as i64 - 1;
            c /= 3;
        }
        if v.iter().any(|&x| x != 0) {
            vectors.push(Vector::from_ints(&v));
        }
    }
    DirectionSet::from_vectors(format!("signs(n={n})"), "signs", vectors).expect("non-zero directions")
}

/// A random normalized 1-symmetric body, deterministic in `(n, seed, profile)`.
pub fn random_symmetric(n: usize, seed: u64, profile: Profile) -> Result<NamedBody> {
    NamedBody::build(BodyId::Random { n, seed, profile })
}

fn random_body(n: usize, seed: u64, profile: Profile) -> Result<SymmetricBody> {
    if !(2..=MAX_RANDOM_DIM).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "random bodies need 2 <= n <= {MAX_RANDOM_DIM}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 48 ^ (profile as u64) << 56);
    let mut generators = Vec::new();
    let grid = |rng: &mut ChaCha8Rng, lo: i64, hi: i64, q: i64| -> Scalar { ratio(rng.gen_range(lo..=hi), q) };
    match profile {
        Profile::NearCube => {
            let k: i64 = rng.gen_range(5..=24);
            let mut g = vec![int(1)];
            for _ in 1..n {
                g.push(grid(&mut rng, 2 * k - 2, 2 * k, 2 * k));
            }
            generators.push(g);
            for _ in 0..rng.gen_range(0..=1) {
                generators.push(mid_generator(&mut rng, n));
            }
        }
        Profile::Mid => {
            for _ in 0..rng.gen_range(1..=3) {
                generators.push(mid_generator(&mut rng, n));
            }
        }
        Profile::CrossLike => {
            generators.push(Vector::unit(n, 0).into_coords());
            for _ in 0..rng.gen_range(0..=2) {
                let q: i64 = rng.gen_range(2..=(n as i64 + 2));
                let mut g = vec![int(1)];
                for _ in 1..n {
                    g.push(grid(&mut rng, 0, 1, q));
                }
                generators.push(g);
            }
        }
    }
    let generators = generators
        .into_iter()
        .map(|mut g| {
            g.sort_by(|a, b| b.cmp(a));
            Vector::new(g)
        })
        .collect();
    SymmetricBody::one_symmetric(generators)?.normalize_to_sn()
}

fn mid_generator(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    let q: i64 = rng.gen_range(2..=6);
    let mut g = vec![int(1)];
    for _ in 1..n {
        g.push(ratio(rng.gen_range(0..=q), q));
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClaimVerdict {
    Confirmed,
    Refuted,
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimResult {
    pub claim: String,
    #[serde(flatten)]
    pub verdict: ClaimVerdict,
    /// Claim-specific findings (sizes, bounds, counts).
    pub details: Value,
    pub certificates: Vec<CertificateRecord>,
}

impl ClaimResult {
    pub fn new(claim: impl Into<String>, confirmed: bool, details: Value, certificates: Vec<CertificateRecord>) -> Self {
        ClaimResult {
            claim: claim.into(),
            verdict: if confirmed {
                ClaimVerdict::Confirmed
            } else {
                ClaimVerdict::Refuted
            },
            details,
            certificates,
        }
    }

    pub fn skipped(claim: impl Into<String>, reason: impl Into<String>) -> Self {
        ClaimResult {
            claim: claim.into(),
            verdict: ClaimVerdict::Skipped { reason: reason.into() },
            details: Value::Null,
            certificates: Vec::new(),
        }
    }

    pub fn confirmed(&self) -> bool {
        self.verdict == ClaimVerdict::Confirmed
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.verdict, ClaimVerdict::Skipped { .. })
    }

    /// Re-validates every attached certificate against `body`.
    pub fn validate(&self, body: &SymmetricBody) -> Result<bool> {
        let mut v = crate::illum::Validator::new(body);
        for c in &self.certificates {
            if !v.check(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_bodies_are_normalized_and_deterministic() {
        for profile in Profile::ALL {
            for seed in 0..5 {
                let a = random_symmetric(4, seed, profile).unwrap();
                let b = random_symmetric(4, seed, profile).unwrap();
                assert_eq!(a.body.generators(), b.body.generators());
                assert_eq!(a.body.gauge(&Vector::unit(4, 0)).unwrap(), int(1));
                assert!(a.body.is_member(&Vector::unit(4, 0)).unwrap());
            }
        }
    }

    #[test]
    fn named_bodies_parse() {
        assert_eq!(NamedBody::parse("B1:3").unwrap().body.vertices().unwrap().len(), 14);
        assert!(NamedBody::parse("B3").unwrap().body.symbolic_only());
        assert!(NamedBody::parse("nope").is_err());
        assert!(NamedBody::parse("B4:3").is_err());
    }
}
