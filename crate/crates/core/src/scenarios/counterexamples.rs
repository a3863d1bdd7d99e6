//! The bodies that defeat small or structured direction sets.

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::{sign_pool, BodyId, ClaimResult, NamedBody};
use crate::error::{Error, Result};
use crate::exact::{format_scalar, int, ratio, Scalar, Vector};
use crate::illum::{illuminates, min_cover, verify_set, Certificate, CertificateRecord};
use crate::sets::{binomial, t1, t2};

fn refutation(x: &Vector, d: &Vector, u: Vector) -> CertificateRecord {
    Certificate::Refutation {
        inner_product: d.dot(&u),
        normal: u,
    }
    .to_record(x, d)
}

fn vec_strings(vs: &[Vector]) -> Vec<String> {
    vs.iter().map(|v| format!("({})", v.to_strings().join(","))).collect()
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn sum_units(n: usize, indices: &[usize]) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    for &i in indices {
        v[i] += Scalar::one();
    }
    Vector::new(v)
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Minimum cover of `B1(n)` by `{-1,0,1}^n \ {0}`, and the failure of `T2`.
pub fn verify_b1_lower_bound(n: usize) -> Result<ClaimResult> {
    let expected = match n {
        3 => 10,
        4 => 16,
        _ => return Err(Error::InvalidParameter("the B1 lower bound is stated for n = 3 and n = 4".into())),
    };
    let claim = format!("b1.{n}.lower_bound");
    let named = NamedBody::build(BodyId::B1(n))?;
    let body = &named.body;
    let pool = sign_pool(n);
    let best = min_cover(body, &pool)?;
    let cover = verify_set(body, &best.subset)?;

    let t2_report = verify_set(body, &t2(n)?)?;
    let e1 = Vector::unit(n, 0);
    let at_e1 = t2_report.uncovered.iter().find(|u| u.vertex == e1);
    let e1_normals: Vec<Vector> = at_e1
        .map(|u| {
            u.refutations
                .iter()
                .filter_map(|r| r.refutation.as_ref().map(|f| f.normal.clone()))
                .collect()
        })
        .unwrap_or_default();
    let mut normal_ok = at_e1.is_some();
    if n == 3 {
        normal_ok &= e1_normals.contains(&Vector::from_ints(&[1, 1, 0]));
    }

    let confirmed = best.size == expected && cover.covers() && !t2_report.covers() && normal_ok;
    let mut certificates: Vec<CertificateRecord> = cover.witnesses.iter().map(|w| w.certificate.clone()).collect();
    if let Some(u) = at_e1 {
        certificates.extend(u.refutations.iter().cloned());
    }
    let details = json!({
        "n": n,
        "vertices": best.vertices,
        "pool": best.pool,
        "minimum": best.size,
        "expected": expected,
        "subset": vec_strings(&best.subset.vectors()),
        "root_lower_bound": best.root_lower_bound,
        "greedy_size": best.greedy_size,
        "nodes_explored": best.nodes_explored,
        "t2_verdict": t2_report.verdict,
        "t2_uncovered_vertices": t2_report.uncovered.len(),
        "t2_normals_at_e1": vec_strings(&e1_normals),
    });
    Ok(ClaimResult::new(claim, confirmed, details, certificates))
}

/// The outer normals at `½(e1+e2+e3+e4)` in dimension 9: `e_j+e_k`,
/// `e_j+e_k+e_s` with indices among the first four, and `1_4` plus four
/// signed tail units.
pub fn b2_normal_families() -> Vec<Vector> {
    let n = 9;
    let head: Vec<usize> = (0..4).collect();
    let tail: Vec<usize> = (4..9).collect();
    let mut out = Vec::new();
    for k in [2, 3] {
        for c in combinations(&head, k) {
            out.push(sum_units(n, &c));
        }
    }
    for c in combinations(&tail, 4) {
        for signs in 0u32..16 {
            let mut v = sum_units(n, &head).into_coords();
            for (b, &t) in c.iter().enumerate() {
                v[t] = if signs >> b & 1 == 1 { int(-1) } else { int(1) };
            }
            out.push(Vector::new(v));
        }
    }
    out
}

/// Normal at `½(e1+..+e4)` with `<d, u> >= 0` for `d` with at most two or
/// at least eight non-zero entries.
fn b2_refuting_normal(d: &Vector) -> Option<Vector> {
    let nz = d.support_size();
    if nz <= 2 {
        let zeros: Vec<usize> = (0..4).filter(|&i| d[i].is_zero()).take(2).collect();
        return Some(sum_units(9, &zeros));
    }
    if nz >= 8 {
        let mut u = sum_units(9, &[0, 1, 2, 3]).into_coords();
        for t in (4..9).filter(|&t| !d[t].is_zero()).take(4) {
            u[t] = if d[t].is_positive() { int(1) } else { int(-1) };
        }
        return Some(Vector::new(u));
    }
    None
}

pub fn verify_b2_claims() -> Result<ClaimResult> {
    let named = NamedBody::build(BodyId::B2)?;
    let body = &named.body;
    let n = 9;
    let x = Vector::new((0..n).map(|i| if i < 4 { ratio(1, 2) } else { Scalar::zero() }).collect());

    let normals = b2_normal_families();
    let normals_valid = normals.iter().all(|u| body.is_outer_normal(&x, u));

    let mut certificates = Vec::new();
    let mut sparse_or_dense = 0usize;
    let mut refuted = 0usize;
    for d in sign_pool(n).vectors() {
        let nz = d.support_size();
        if nz > 2 && nz < 8 {
            continue;
        }
        sparse_or_dense += 1;
        if let Some(u) = b2_refuting_normal(&d) {
            if d.dot(&u) >= Scalar::zero() && body.is_outer_normal(&x, &u) {
                refuted += 1;
                certificates.push(refutation(&x, &d, u));
            }
        }
    }

    // A three-coordinate direction pointing back into the body.
    let inward = Vector::from_ints(&[-1, -1, -1, 0, 0, 0, 0, 0, 0]);
    let (inward_ok, cert) = illuminates(body, &x, &inward)?;
    certificates.push(cert.to_record(&x, &inward));

    // Directions at e1, one per orbit of the stabilizer of e1: the first
    // entry and the number of non-zero tail entries.
    let e1 = Vector::unit(n, 0);
    let mut illuminators = Vec::new();
    let mut classes = 0usize;
    for head in [-1i64, 0, 1] {
        for k in 0..n {
            if head == 0 && k == 0 {
                continue;
            }
            classes += 1;
            let mut d = vec![0i64; n];
            d[0] = head;
            for c in d.iter_mut().skip(1).take(k) {
                *c = 1;
            }
            let d = Vector::from_ints(&d);
            let (ok, cert) = illuminates(body, &e1, &d)?;
            if ok {
                illuminators.push(d.clone());
            }
            certificates.push(cert.to_record(&e1, &d));
        }
    }
    let sole = illuminators == vec![-&e1];

    let confirmed = normals_valid && refuted == sparse_or_dense && inward_ok && sole;
    let details = json!({
        "vertex": x.to_strings(),
        "listed_normals": normals.len(),
        "listed_normals_valid": normals_valid,
        "directions_with_at_most_2_or_at_least_8_nonzeros": sparse_or_dense,
        "refuted": refuted,
        "inward_direction_illuminates": inward_ok,
        "classes_at_e1": classes,
        "illuminators_at_e1": vec_strings(&illuminators),
    });
    Ok(ClaimResult::new("b2", confirmed, details, certificates))
}

/// Symbolic refutations on the 25-dimensional body at its two non-basis
/// vertex classes; no orbit is ever expanded.
pub fn verify_b3_claims() -> Result<ClaimResult> {
    let named = NamedBody::build(BodyId::B3)?;
    let body = &named.body;
    let n = 25;
    let a = Vector::new((0..n).map(|i| if i < 3 { ratio(2, 3) } else { Scalar::zero() }).collect());
    let b = Vector::new((0..n).map(|i| if i < 12 { ratio(1, 3) } else { Scalar::zero() }).collect());

    // Normal families.
    let head_a: Vec<usize> = (0..3).collect();
    let tail_a: Vec<usize> = (3..n).collect();
    let mut family_a = 0u64;
    let mut family_a_valid = true;
    for c in combinations(&tail_a, 3) {
        for signs in 0u32..8 {
            let mut u = sum_units(n, &head_a).into_coords();
            for (bit, &t) in c.iter().enumerate() {
                u[t] = if signs >> bit & 1 == 1 { int(-1) } else { int(1) };
            }
            family_a += 1;
            family_a_valid &= body.is_outer_normal(&a, &Vector::new(u));
        }
    }
    let head_b: Vec<usize> = (0..12).collect();
    let mut family_b = 0u64;
    let mut family_b_valid = true;
    for c in combinations(&head_b, 6) {
        family_b += 1;
        family_b_valid &= body.is_outer_normal(&b, &sum_units(n, &c));
    }
    let e1 = Vector::unit(n, 0);
    let e1_normal = body.is_outer_normal(&e1, &e1);

    let mut certificates = Vec::new();
    let mut all_refuted = true;

    // At `a`: head pattern in {-1,0,1}^3 and k non-zero tail entries; a
    // direction with at least 6 non-zero entries has k >= 3.
    let mut refuted_a = BigUint::zero();
    for pattern in 0..27u32 {
        let h: Vec<i64> = (0..3).map(|i| (pattern / 3u32.pow(i) % 3) as i64 - 1).collect();
        let head_nz = h.iter().filter(|&&v| v != 0).count();
        for k in 3..=22usize {
            if head_nz + k < 6 {
                continue;
            }
            let mut d = vec![0i64; n];
            d[..3].copy_from_slice(&h);
            for c in d.iter_mut().skip(3).take(k) {
                *c = 1;
            }
            let d = Vector::from_ints(&d);
            let mut u = sum_units(n, &head_a).into_coords();
            for (t, c) in u.iter_mut().enumerate().skip(3).take(3) {
                *c = if d[t].is_positive() { int(1) } else { int(-1) };
            }
            let u = Vector::new(u);
            all_refuted &= d.dot(&u) >= Scalar::zero() && body.is_outer_normal(&a, &u);
            refuted_a += binomial(22, k as u64) * (big(1) << k);
            certificates.push(refutation(&a, &d, u));
        }
    }

    // At `b`: p positive and m negative entries among the first twelve,
    // k non-zero tail entries, p + m + k <= 6.
    let mut refuted_b = BigUint::zero();
    for p in 0..=6usize {
        for m in 0..=(6 - p) {
            for k in 0..=(6 - p - m) {
                if p + m + k == 0 {
                    continue;
                }
                let mut d = vec![0i64; n];
                d[..p].fill(1);
                d[p..p + m].fill(-1);
                d[12..12 + k].fill(1);
                let d = Vector::from_ints(&d);
                // positives first, then zeros of the head
                let mut chosen: Vec<usize> = (0..p).collect();
                chosen.extend((p + m..12).take(6 - p));
                let u = sum_units(n, &chosen);
                all_refuted &= d.dot(&u) >= Scalar::zero() && body.is_outer_normal(&b, &u);
                refuted_b += binomial(12, p as u64) * binomial(12 - p as u64, m as u64) * binomial(13, k as u64) * (big(1) << k);
                certificates.push(refutation(&b, &d, u));
            }
        }
    }

    // Illuminators of `a` have at most 5 non-zero entries and those of `b`
    // at least 7, so no {-1,0,1}-direction serves both vertex classes.
    let total = big(3).pow(n as u32) - big(1);
    let refuted_total = &refuted_a + &refuted_b;
    let disjoint = refuted_total >= total;

    let confirmed = family_a_valid && family_b_valid && e1_normal && all_refuted && disjoint;
    let details = json!({
        "normals_at_two_thirds": family_a,
        "normals_at_two_thirds_valid": family_a_valid,
        "normals_at_one_third": family_b,
        "normals_at_one_third_valid": family_b_valid,
        "e1_normal_at_e1": e1_normal,
        "refuted_at_two_thirds": refuted_a.to_string(),
        "refuted_at_one_third": refuted_b.to_string(),
        "nonzero_directions": total.to_string(),
        "no_direction_serves_both": disjoint,
    });
    Ok(ClaimResult::new("b3", confirmed, details, certificates))
}

/// `B4(n)`: distance to the cube, `T2` refuted at `e1 + ¾e_n`, `T1` covers.
pub fn verify_b4_claims(n: usize) -> Result<ClaimResult> {
    let named = NamedBody::build(BodyId::B4(n))?;
    let body = &named.body;
    let bound = ratio(4 * n as i64, 2 * n as i64 + 1);
    let ones_gauge = body.gauge(&Vector::ones(n))?;
    let dist = body.invariants()?.dist_to_cube.clone();
    let dist_ok = ones_gauge <= bound && dist <= bound && dist > Scalar::one();

    let mut p = Vector::unit(n, 0).into_coords();
    p[n - 1] = ratio(3, 4);
    let p = Vector::new(p);
    let e1 = Vector::unit(n, 0);
    let en = Vector::unit(n, n - 1);
    let mut certificates = Vec::new();
    let mut t2_refuted = true;
    for d in t2(n)?.vectors() {
        let u = if d[0].is_one() || d == en || d == -&en {
            e1.clone()
        } else {
            let j = (1..n - 1).find(|&j| !d[j].is_zero()).expect("square directions have full head");
            let mut u = e1.add_scaled(&Scalar::one(), &en).into_coords();
            u[j] = if d[j].is_positive() { int(1) } else { int(-1) };
            Vector::new(u)
        };
        let valid = d.dot(&u) >= Scalar::zero() && body.is_outer_normal(&p, &u);
        let (lp_says, _) = illuminates(body, &p, &d)?;
        t2_refuted &= valid && !lp_says;
        certificates.push(refutation(&p, &d, u));
    }

    let t1_report = verify_set(body, &t1(n)?)?;
    certificates.extend(t1_report.witnesses.iter().map(|w| w.certificate.clone()));
    for u in &t1_report.uncovered {
        certificates.extend(u.refutations.iter().cloned());
    }

    let confirmed = dist_ok && t2_refuted && t1_report.covers();
    let details = json!({
        "n": n,
        "gauge_of_ones": format_scalar(&ones_gauge),
        "dist": format_scalar(&dist),
        "bound": format_scalar(&bound),
        "t2_refuted_at": p.to_strings(),
        "t2_refuted": t2_refuted,
        "t1_verdict": t1_report.verdict,
        "vertices": t1_report.vertices,
    });
    Ok(ClaimResult::new(format!("b4.{n}"), confirmed, details, certificates))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_refutation_rule_counts() {
        let all: Vec<Vector> = sign_pool(9).vectors();
        let covered = all.iter().filter(|d| b2_refuting_normal(d).is_some()).count();
        assert_eq!(covered, 162 + 2816);
        for d in all.iter().filter(|d| b2_refuting_normal(d).is_some()) {
            assert!(d.dot(&b2_refuting_normal(d).unwrap()) >= Scalar::zero());
        }
        assert_eq!(b2_normal_families().len(), 90);
    }

    #[test]
    fn b4_small() {
        let r = verify_b4_claims(4).unwrap();
        assert!(r.confirmed(), "{}", r.details);
        let body = NamedBody::build(BodyId::B4(4)).unwrap().body;
        assert!(r.validate(&body).unwrap());
    }
}
