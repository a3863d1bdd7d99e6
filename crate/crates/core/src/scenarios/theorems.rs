//! Covering theorems on a given body, and the exhaustive combinatorial
//! properties of the direction families.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{random_symmetric, ClaimResult, Profile, MAX_RANDOM_DIM};
use crate::body::{SymmetricBody, SymmetryClass};
use crate::error::{Error, Result};
use crate::exact::{format_scalar, int, ratio, Scalar, Vector};
use crate::illum::{
    deep_illuminates, illuminates, opposite_pair_census, verify_set, CertificateRecord, CoverReport, DirectionSet,
};
use crate::sets::{
    asymptotic_exponent, binomial_bounds, default_delta, method1_set, method2_set, minus2_removed, minus2_set, t1,
    t2, theorem_e_set, thm41_set, thm44_set,
};

fn report_certificates(report: &CoverReport) -> Vec<CertificateRecord> {
    let mut out: Vec<CertificateRecord> = report.witnesses.iter().map(|w| w.certificate.clone()).collect();
    for u in &report.uncovered {
        out.extend(u.refutations.iter().cloned());
    }
    out
}

/// Reason a body is outside the class of normalized 1-symmetric bodies.
fn outside_sn(body: &SymmetricBody) -> Result<Option<String>> {
    if body.symbolic_only() {
        return Ok(Some("the body is symbolic; covering checks need its vertices".into()));
    }
    if *body.symmetry() != SymmetryClass::OneSymmetric {
        return Ok(Some(format!("the body is {}, not 1-symmetric", body.symmetry().name())));
    }
    if !body.is_normalized()? {
        return Ok(Some("the body is not normalized (gauge(e_1) != 1)".into()));
    }
    Ok(None)
}

fn cover_claim(claim: &str, body: &SymmetricBody, set: &DirectionSet, extra: serde_json::Value) -> Result<ClaimResult> {
    let report = verify_set(body, set)?;
    let details = json!({
        "n": body.dim(),
        "set": set.id,
        "set_size": set.len(),
        "vertices": report.vertices,
        "verdict": report.verdict,
        "uncovered_vertices": report.uncovered.len(),
        "extra": extra,
    });
    Ok(ClaimResult::new(claim, report.covers(), details, report_certificates(&report)))
}

/// The recursive `2^n`-direction set with `δ = 1/(n+1)` covers the body.
pub fn theorem_d_check(body: &SymmetricBody) -> Result<ClaimResult> {
    if let Some(reason) = outside_sn(body)? {
        return Ok(ClaimResult::skipped("thmD", reason));
    }
    let n = body.dim();
    if n < 2 {
        return Ok(ClaimResult::skipped("thmD", "needs n >= 2"));
    }
    cover_claim("thmD", body, &method2_set(n, &default_delta(n))?, json!(null))
}

/// The `2^n - 2` set with `η = η_B` covers a body other than the cube.
pub fn theorem_e_check(body: &SymmetricBody) -> Result<ClaimResult> {
    if let Some(reason) = outside_sn(body)? {
        return Ok(ClaimResult::skipped("thmE", reason));
    }
    let n = body.dim();
    if n < 3 {
        return Ok(ClaimResult::skipped("thmE", "needs n >= 3"));
    }
    let inv = body.invariants()?;
    if inv.dist_to_cube <= Scalar::one() {
        return Ok(ClaimResult::skipped("thmE", "dist to the cube is 1 (the body is the cube)"));
    }
    let set = theorem_e_set(n, &inv.eta)?;
    let expected = (1usize << n) - 2;
    let mut result = cover_claim(
        "thmE",
        body,
        &set,
        json!({ "eta": format_scalar(&inv.eta), "dist": format_scalar(&inv.dist_to_cube), "expected_size": expected }),
    )?;
    if set.len() != expected {
        result.verdict = super::ClaimVerdict::Refuted;
    }
    Ok(result)
}

/// `m_B = 1`: `[method2(n-1, 1/n) × {0}] ∪ {±e_n}` covers.
pub fn thm41_check(body: &SymmetricBody) -> Result<ClaimResult> {
    if let Some(reason) = outside_sn(body)? {
        return Ok(ClaimResult::skipped("thm41", reason));
    }
    let n = body.dim();
    if n < 3 {
        return Ok(ClaimResult::skipped("thm41", "needs n >= 3"));
    }
    let m_b = body.invariants()?.m_b;
    if m_b != 1 {
        return Ok(ClaimResult::skipped("thm41", format!("needs m_B = 1, got {m_b}")));
    }
    cover_claim("thm41", body, &thm41_set(n)?, json!({ "m_b": m_b }))
}

/// `m_B <= n/2`: `[method2(n-1, 1/n) × {0}] ∪ T^n` covers.
pub fn thm44_check(body: &SymmetricBody) -> Result<ClaimResult> {
    if let Some(reason) = outside_sn(body)? {
        return Ok(ClaimResult::skipped("thm44", reason));
    }
    let n = body.dim();
    if n < 4 {
        return Ok(ClaimResult::skipped("thm44", "needs n >= 4"));
    }
    let m_b = body.invariants()?.m_b;
    if 2 * m_b > n {
        return Ok(ClaimResult::skipped("thm44", format!("needs m_B <= n/2, got {m_b}")));
    }
    cover_claim("thm44", body, &thm44_set(n)?, json!({ "m_b": m_b }))
}

/// `1 < dist < 2`: `T1` or `T2` covers.
pub fn claim_f_check(body: &SymmetricBody) -> Result<ClaimResult> {
    if let Some(reason) = outside_sn(body)? {
        return Ok(ClaimResult::skipped("claimF", reason));
    }
    let n = body.dim();
    if n < 3 {
        return Ok(ClaimResult::skipped("claimF", "needs n >= 3"));
    }
    let dist = body.invariants()?.dist_to_cube.clone();
    if dist <= Scalar::one() || dist >= int(2) {
        return Ok(ClaimResult::skipped(
            "claimF",
            format!("needs 1 < dist < 2, got {}", format_scalar(&dist)),
        ));
    }
    let first = verify_set(body, &t1(n)?)?;
    let (report, which) = if first.covers() {
        (first, "T1")
    } else {
        (verify_set(body, &t2(n)?)?, "T2")
    };
    let details = json!({
        "n": n,
        "dist": format_scalar(&dist),
        "covering_set": if report.covers() { which } else { "none" },
        "vertices": report.vertices,
    });
    Ok(ClaimResult::new("claimF", report.covers(), details, report_certificates(&report)))
}

/// Boundary points and the perturbed basis directions built from them:
/// for each vertex class, each `k` in the support and each sign choice on
/// the zero coordinates, `-sign(x_k) e_k - δ Σ sign(x_i) e_i` must illuminate.
pub fn lemma32_check(body: &SymmetricBody, delta: &Scalar) -> Result<ClaimResult> {
    let n = body.dim();
    if body.symbolic_only() || *body.symmetry() != SymmetryClass::OneSymmetric {
        return Ok(ClaimResult::skipped("lemma3.2", "needs an explicit 1-symmetric body"));
    }
    if n > 12 {
        return Ok(ClaimResult::skipped("lemma3.2", "sign choices on zero coordinates are enumerated; n <= 12"));
    }
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for x in body.extreme_representatives()? {
        let support: Vec<usize> = (0..n).filter(|&i| !x[i].is_zero()).collect();
        let zeros: Vec<usize> = (0..n).filter(|&i| x[i].is_zero()).collect();
        for &k in &support {
            for choice in 0u32..(1 << zeros.len()) {
                let mut sign: Vec<i64> = x.iter().map(|c| if c.is_negative() { -1 } else { 1 }).collect();
                for (b, &z) in zeros.iter().enumerate() {
                    if choice >> b & 1 == 1 {
                        sign[z] = -1;
                    }
                }
                let d = Vector::new(
                    (0..n)
                        .map(|i| if i == k { int(-sign[i]) } else { -delta * int(sign[i]) })
                        .collect(),
                );
                let (ok, cert) = illuminates(body, x, &d)?;
                checked += 1;
                if !ok {
                    failures.push(json!({ "vertex": x.to_strings(), "direction": d.to_strings() }));
                }
                certificates.push(cert.to_record(x, &d));
            }
        }
    }
    let details = json!({
        "n": n,
        "delta": format_scalar(delta),
        "pairs_checked": checked,
        "failures": failures,
    });
    Ok(ClaimResult::new("lemma3.2", failures.is_empty(), details, certificates))
}

/// A direction reduced to signs and the positions of unit entries.
#[derive(Clone, Copy)]
struct SignForm {
    pos: u32,
    neg: u32,
    unit: u32,
}

impl SignForm {
    fn of(d: &Vector) -> Option<SignForm> {
        if d.linf_norm() != Scalar::one() {
            return None;
        }
        let mut f = SignForm { pos: 0, neg: 0, unit: 0 };
        for (i, c) in d.iter().enumerate() {
            if c.is_positive() {
                f.pos |= 1 << i;
            } else if c.is_negative() {
                f.neg |= 1 << i;
            }
            if c.abs().is_one() {
                f.unit |= 1 << i;
            }
        }
        Some(f)
    }

    /// Deep illumination of the sign pattern `(xpos, xneg)`.
    fn deep(&self, xpos: u32, xneg: u32) -> bool {
        let support = xpos | xneg;
        xpos & self.neg == xpos && xneg & self.pos == xneg && self.unit & support != 0
    }
}

/// Sign patterns of `{-1,0,1}^n \ {0}` as `(positive, negative)` masks.
fn patterns(n: usize) -> impl ParallelIterator<Item = (u32, u32)> {
    (1u64..3u64.pow(n as u32)).into_par_iter().map(move |mut code| {
        let (mut pos, mut neg) = (0u32, 0u32);
        for i in 0..n {
            match code % 3 {
                1 => pos |= 1 << i,
                2 => neg |= 1 << i,
                _ => {}
            }
            code /= 3;
        }
        (pos, neg)
    })
}

fn forms(set: &DirectionSet) -> Vec<SignForm> {
    set.iter().filter_map(|d| SignForm::of(&d.vector)).collect()
}

fn pattern_vector(n: usize, (pos, neg): (u32, u32)) -> Vector {
    Vector::from_ints(
        &(0..n)
            .map(|i| {
                if pos >> i & 1 == 1 {
                    1
                } else if neg >> i & 1 == 1 {
                    -1
                } else {
                    0
                }
            })
            .collect::<Vec<_>>(),
    )
}

fn undeep(n: usize, set: &DirectionSet) -> Vec<(u32, u32)> {
    let fs = forms(set);
    let mut out: Vec<(u32, u32)> = patterns(n)
        .filter(|&(p, q)| !fs.iter().any(|f| f.deep(p, q)))
        .collect();
    out.sort();
    out
}

/// Both deep-illuminating constructions reach every non-zero sign pattern.
pub fn deep_completeness(ns: &[usize]) -> Result<ClaimResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    for &n in ns {
        if !(2..=16).contains(&n) {
            return Err(Error::InvalidParameter("pattern checks need 2 <= n <= 16".into()));
        }
        let delta = default_delta(n);
        for set in [method1_set(n, &delta)?, method2_set(n, &delta)?] {
            let misses = undeep(n, &set);
            ok &= misses.is_empty() && set.len() == 1 << n;
            rows.push(json!({
                "n": n,
                "set": set.id,
                "size": set.len(),
                "patterns": 3u64.pow(n as u32) - 1,
                "failures": misses.len(),
            }));
        }
    }
    Ok(ClaimResult::new("prop3.5", ok, json!(rows), Vec::new()))
}

/// The reduced set reaches every pattern with a zero coordinate; the only
/// full-support patterns it misses are `±sign` of the removed direction.
pub fn lemma52_check(ns: &[usize]) -> Result<ClaimResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    for &n in ns {
        if !(3..=16).contains(&n) {
            return Err(Error::InvalidParameter("pattern checks need 3 <= n <= 16".into()));
        }
        let delta = default_delta(n);
        let set = minus2_set(n, &delta)?;
        let full = (1u32 << n) - 1;
        let misses = undeep(n, &set);
        let with_zero = misses.iter().filter(|(p, q)| p | q != full).count();
        let missed_full: BTreeSet<Vector> = misses
            .iter()
            .filter(|(p, q)| p | q == full)
            .map(|&m| pattern_vector(n, m))
            .collect();
        let r = minus2_removed(n, &delta);
        let sign_r = Vector::new(r.iter().map(|c| int(crate::exact::sign(c) as i64)).collect());
        let expected: BTreeSet<Vector> = [-&sign_r, sign_r].into_iter().collect();
        // the removed pair reaches exactly the missed patterns
        let restored = missed_full
            .iter()
            .all(|x| deep_illuminates(&r, x) || deep_illuminates(&-&r, x));
        let row_ok = with_zero == 0 && missed_full == expected && restored && set.len() == (1 << n) - 2;
        ok &= row_ok;
        rows.push(json!({
            "n": n,
            "size": set.len(),
            "missed_with_zero": with_zero,
            "missed_full_support": missed_full.iter().map(|v| v.to_strings()).collect::<Vec<_>>(),
        }));
    }
    Ok(ClaimResult::new("lemma5.2", ok, json!(rows), Vec::new()))
}

/// Exact partial-sum estimates at the stated dimensions.
pub fn binomial_claim() -> Result<ClaimResult> {
    let b3 = binomial_bounds(3);
    let b5 = binomial_bounds(5);
    let b6 = binomial_bounds(6);
    let mut central_ok = true;
    let mut central_fail = Vec::new();
    for n in std::iter::once(4).chain(7..=50) {
        let b = binomial_bounds(n);
        if !b.central_bound {
            central_ok = false;
            central_fail.push(n);
        }
    }
    let b200 = binomial_bounds(200);
    let target = asymptotic_exponent();
    let ratio_ok = (b200.log_ratio - target).abs() < 0.1;
    let confirmed = b3.tight && b5.gap == "4" && b6.gap == "18" && central_ok && ratio_ok;
    let details = json!({
        "n3_tight": b3.tight,
        "n5_gap": b5.gap,
        "n6_gap": b6.gap,
        "central_bound_fails": central_fail,
        "n200_log_ratio": b200.log_ratio,
        "asymptotic_exponent": target,
    });
    Ok(ClaimResult::new("lemma4.3", confirmed, details, Vec::new()))
}

/// Opposite-pair structure of the recursive set and of the `2^n - 2` set.
pub fn xray_census(ns: &[usize]) -> Result<ClaimResult> {
    let mut rows = Vec::new();
    let mut ok = true;
    for &n in ns {
        let half = 1usize << (n - 1);
        let m2 = method2_set(n, &default_delta(n))?;
        let c2 = opposite_pair_census(&m2);
        let eta = ratio(1, 2 * (n as i64 + 1));
        let te = theorem_e_set(n, &eta)?;
        let ce = opposite_pair_census(&te);
        let row_ok = m2.is_negation_closed()
            && c2.pairs == half
            && c2.xray_bound() == half
            && te.is_negation_closed()
            && ce.pairs == half - 1
            && ce.xray_bound() == half - 1;
        ok &= row_ok;
        rows.push(json!({
            "n": n,
            "method2_pairs": c2.pairs,
            "method2_xray_bound": c2.xray_bound(),
            "thmE_pairs": ce.pairs,
            "thmE_xray_bound": ce.xray_bound(),
        }));
    }
    Ok(ClaimResult::new("xray", ok, json!(rows), Vec::new()))
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    loop {
        let v = Vector::new(
            (0..n)
                .map(|_| {
                    let q: i64 = rng.gen_range(1..=7);
                    ratio(rng.gen_range(-2 * q..=2 * q), q)
                })
                .collect(),
        );
        if !v.is_zero() {
            return v;
        }
    }
}

/// Column-generation gauge against the explicit full-orbit LP on random
/// `(body, point)` pairs.
pub fn oracle_equivalence(pairs: usize, seed: u64) -> Result<ClaimResult> {
    let jobs: Vec<(usize, u64)> = (0..pairs).map(|i| (2 + i % 4, seed.wrapping_add(i as u64))).collect();
    let mismatches: Vec<serde_json::Value> = jobs
        .par_iter()
        .map(|&(n, s)| -> Result<Option<serde_json::Value>> {
            let named = random_symmetric(n.min(MAX_RANDOM_DIM), s, Profile::for_seed(s))?;
            let mut rng = ChaCha8Rng::seed_from_u64(s ^ 0x9e37_79b9);
            let p = random_point(&mut rng, n);
            let a = named.body.gauge(&p)?;
            let b = named.body.gauge_full_lp(&p)?;
            Ok((a != b).then(|| {
                json!({ "body": named.id.to_string(), "point": p.to_strings(),
                        "colgen": format_scalar(&a), "full": format_scalar(&b) })
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let details = json!({ "pairs": pairs, "seed": seed, "mismatches": mismatches });
    Ok(ClaimResult::new("oracle", mismatches.is_empty(), details, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{BodyId, NamedBody};

    #[test]
    fn sign_form_matches_deep_illuminates() {
        let n = 4;
        let set = method1_set(n, &ratio(1, 5)).unwrap().union(&method2_set(n, &ratio(1, 3)).unwrap());
        let all: Vec<(u32, u32)> = patterns(n).collect();
        for d in set.iter() {
            let f = SignForm::of(&d.vector).unwrap();
            for &p in &all {
                assert_eq!(f.deep(p.0, p.1), deep_illuminates(&d.vector, &pattern_vector(n, p)));
            }
        }
    }

    #[test]
    fn perturbed_basis_check_catches_large_delta_on_the_cross_polytope() {
        let cross = NamedBody::build(BodyId::CrossPolytope(4)).unwrap().body;
        assert!(lemma32_check(&cross, &ratio(1, 5)).unwrap().confirmed());
        assert!(!lemma32_check(&cross, &ratio(1, 3)).unwrap().confirmed());
    }

    #[test]
    fn cube_is_skipped_when_dist_is_one() {
        let cube = NamedBody::build(BodyId::Cube(3)).unwrap().body;
        assert!(theorem_e_check(&cube).unwrap().is_skipped());
        let b1 = NamedBody::build(BodyId::B1(3)).unwrap().body;
        let r = theorem_e_check(&b1).unwrap();
        assert!(r.confirmed());
        assert_eq!(r.details["set_size"], 6);
    }
}
