//! Illumination of boundary points, with certificates.
//!
//! A direction `d` illuminates a boundary point `x` when `x + εd` is interior
//! for some `ε > 0`. This is decided by one exact LP,
//!
//! ```text
//! maximize t  s.t.  x + ε d = Σ μ_v v,  Σ μ_v <= 1 - t,  t <= ε <= 1,  μ, t >= 0
//! ```
//!
//! with columns `v` generated from the body's orbits. A positive optimum
//! yields a witness step; otherwise the optimal dual restricted to the first
//! `n` rows is an outer normal `u` at `x` with `<d, u> >= 0`.
//!
//! Only vertices need checking for a polytope: the normal cone at a point of
//! a face contains the normal cone at each vertex of that face, so a
//! direction illuminating every vertex of the face illuminates all of it.

mod certificate;
mod cover;
mod direction;

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};

pub use certificate::{Certificate, CertificateRecord, RefutationRecord, WitnessRecord};
pub use cover::{
    illuminated_vertices, min_cover, min_cover_with_budget, verify_set, CoverReport, MinCover,
    UncoveredVertex, Validator, Verdict, VertexWitness, DEFAULT_NODE_BUDGET,
};
pub use direction::{opposite_pair_census, Direction, DirectionSet, PairCensus};

use crate::body::{canonicalize_with_map, SymmetricBody};
use crate::error::{Error, Result};
use crate::exact::{int, solve_with_oracle, LpProblem, LpStatus, Scalar, Vector, DEFAULT_MAX_ROUNDS};

/// Decides whether `d` illuminates the boundary point `x`.
pub fn illuminates(body: &SymmetricBody, x: &Vector, d: &Vector) -> Result<(bool, Certificate)> {
    x.check_dim(body.dim())?;
    d.check_dim(body.dim())?;
    if d.is_zero() {
        return Err(Error::InvalidParameter("directions must be non-zero".into()));
    }
    let gauge = body.gauge(x)?;
    if !gauge.is_one() {
        return Err(Error::NotOnBoundary { gauge });
    }
    let cert = solve_illumination(body, x, d)?;
    Ok((cert.is_witness(), cert))
}

/// `h_B(u) = <x, u>`; meaningful for `x` in the body.
pub fn is_outer_normal(body: &SymmetricBody, x: &Vector, u: &Vector) -> bool {
    body.is_outer_normal(x, u)
}

/// Combinatorial deep illumination: `d` has the opposite sign of `x` on the
/// support of `x`, and some coordinate in that support has `|d_j| = ||d||_∞ = 1`.
pub fn deep_illuminates(d: &Vector, x: &Vector) -> bool {
    assert_eq!(d.dim(), x.dim(), "direction and point dimensions differ");
    if x.is_zero() {
        return false;
    }
    let one = Scalar::one();
    if d.linf_norm() != one {
        return false;
    }
    let mut has_max = false;
    for (xi, di) in x.iter().zip(d.iter()) {
        if xi.is_zero() {
            continue;
        }
        if xi.signum() != -di.signum() || di.is_zero() {
            return false;
        }
        if di.abs() == one {
            has_max = true;
        }
    }
    has_max
}

/// The LP decision for a point already known to be on the boundary.
pub(crate) fn solve_illumination(body: &SymmetricBody, x: &Vector, d: &Vector) -> Result<Certificate> {
    let n = body.dim();
    let zero = Scalar::zero;
    // fixed columns: eps, t, s1, s2, s3
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n + 3);
    for di in d.iter() {
        rows.push(vec![-di.clone(), zero(), zero(), zero(), zero()]);
    }
    rows.push(vec![zero(), int(1), int(1), zero(), zero()]);
    rows.push(vec![int(-1), int(1), zero(), int(1), zero()]);
    rows.push(vec![int(1), zero(), zero(), zero(), int(1)]);
    let mut rhs = x.coords().to_vec();
    rhs.extend([int(1), zero(), int(1)]);
    let base = LpProblem::new(vec![zero(), int(-1), zero(), zero(), zero()], rows, rhs);

    let tail = vec![int(1), zero(), zero()];
    let mut start = x.coords().to_vec();
    start.extend(tail.iter().cloned());
    let initial = vec![crate::exact::Column {
        entries: start,
        cost: zero(),
    }];
    let mut oracle = body.column_oracle(tail, zero(), None);
    let solution = solve_with_oracle(&base, initial, &mut oracle, DEFAULT_MAX_ROUNDS)?;
    if solution.status != LpStatus::Optimal {
        return Err(Error::Lp(format!(
            "illumination program ended {:?}; the point is not in the body",
            solution.status
        )));
    }
    let t = -solution.objective.clone();
    if t.is_positive() {
        let step = solution.fixed[0].clone();
        let interior_gauge = body.gauge(&x.add_scaled(&step, d))?;
        return Ok(Certificate::Witness {
            direction: d.clone(),
            step,
            interior_gauge,
        });
    }
    let normal = Vector::new(solution.dual[..n].to_vec()).primitive();
    let inner_product = d.dot(&normal);
    if normal.is_zero() || inner_product.is_negative() || !body.is_outer_normal(x, &normal) {
        return Err(Error::Lp("dual of the illumination program is not an outer normal".into()));
    }
    Ok(Certificate::Refutation {
        normal,
        inner_product,
    })
}

/// Memoized illumination decisions for boundary points of one body.
///
/// For the coordinate symmetry classes a query `(x, d)` with `x = σ g`,
/// `g` canonical, is answered by the query `(g, σ⁻¹ d)` and mapped back.
pub struct IlluminationChecker<'a> {
    body: &'a SymmetricBody,
    memo: Mutex<HashMap<(Vector, Vector), Certificate>>,
}

impl<'a> IlluminationChecker<'a> {
    pub fn new(body: &'a SymmetricBody) -> Self {
        IlluminationChecker {
            body,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn body(&self) -> &SymmetricBody {
        self.body
    }

    /// `x` must be a boundary point (every vertex is).
    pub fn check(&self, x: &Vector, d: &Vector) -> Result<Certificate> {
        let (key, map) = match canonicalize_with_map(x, self.body.symmetry()) {
            Some((g, s)) => ((g, s.inverse().apply(d)), Some(s)),
            None => ((x.clone(), d.clone()), None),
        };
        let cached = self.memo.lock().expect("memo lock").get(&key).cloned();
        let cert = match cached {
            Some(c) => c,
            None => {
                let c = solve_illumination(self.body, &key.0, &key.1)?;
                self.memo.lock().expect("memo lock").insert(key, c.clone());
                c
            }
        };
        Ok(match (cert, map) {
            (Certificate::Witness {
                step,
                interior_gauge,
                ..
            }, _) => Certificate::Witness {
                direction: d.clone(),
                step,
                interior_gauge,
            },
            (Certificate::Refutation {
                normal,
                inner_product,
            }, Some(s)) => Certificate::Refutation {
                normal: s.apply(&normal),
                inner_product,
            },
            (refutation, None) => refutation,
        })
    }

    pub fn memo_size(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn b1_3() -> SymmetricBody {
        SymmetricBody::one_symmetric(vec![Vector::unit(3, 0), Vector::new(vec![ratio(1, 2); 3])])
            .unwrap()
    }

    #[test]
    fn cube_corner_illuminated_inwards() {
        let cube = SymmetricBody::one_symmetric(vec![Vector::ones(3)]).unwrap();
        let (ok, cert) = illuminates(&cube, &Vector::ones(3), &Vector::from_ints(&[-1, -1, -1])).unwrap();
        assert!(ok);
        assert!(cert.validate(&cube, &Vector::ones(3), &Vector::from_ints(&[-1, -1, -1])).unwrap());
    }

    #[test]
    fn cube_corner_not_illuminated_along_an_axis() {
        let cube = SymmetricBody::one_symmetric(vec![Vector::ones(3)]).unwrap();
        let d = Vector::unit(3, 0);
        let (ok, cert) = illuminates(&cube, &Vector::ones(3), &d).unwrap();
        assert!(!ok);
        assert!(cert.validate(&cube, &Vector::ones(3), &d).unwrap());
    }

    #[test]
    fn b1_vertex_e1() {
        let b = b1_3();
        let e1 = Vector::unit(3, 0);
        let (ok, _) = illuminates(&b, &e1, &Vector::from_ints(&[-1, 0, 0])).unwrap();
        assert!(ok);
        // The only normals at e1 besides e1 itself lie between e1 and e1 ± e2 ± e3
        // type vectors, so a direction along e2 with a -e1 part is refuted.
        let d = Vector::from_ints(&[-1, 1, 0]);
        let (ok, cert) = illuminates(&b, &e1, &d).unwrap();
        assert!(!ok);
        assert_eq!(
            cert,
            Certificate::Refutation {
                normal: Vector::from_ints(&[1, 1, 0]),
                inner_product: int(0)
            }
        );
        // A small tangential part still leaves the direction illuminating.
        let d = Vector::new(vec![int(-1), ratio(1, 4), int(0)]);
        assert!(illuminates(&b, &e1, &d).unwrap().0);
    }

    #[test]
    fn interior_points_rejected() {
        let b = b1_3();
        let p = Vector::new(vec![ratio(1, 4); 3]);
        assert!(matches!(
            illuminates(&b, &p, &Vector::unit(3, 0)),
            Err(Error::NotOnBoundary { .. })
        ));
    }

    #[test]
    fn deep_illumination_examples() {
        let delta = ratio(1, 4);
        let x = Vector::new(vec![ratio(3, 10), ratio(-7, 10), int(0)]);
        let d = Vector::new(vec![-delta.clone(), int(1), delta.clone()]);
        assert!(deep_illuminates(&d, &x));
        let z = Vector::from_ints(&[0, 0, 1]);
        assert!(deep_illuminates(&Vector::new(vec![delta.clone(), delta.clone(), int(-1)]), &z));
        assert!(!deep_illuminates(&Vector::new(vec![int(-1), delta.clone(), -delta.clone()]), &z));
        let ones = Vector::ones(3);
        assert!(!deep_illuminates(&Vector::new(vec![int(-1), -delta.clone(), delta]), &ones));
    }

    #[test]
    fn checker_maps_certificates_through_symmetry() {
        let b = b1_3();
        let checker = IlluminationChecker::new(&b);
        let x = Vector::new(vec![ratio(-1, 2), ratio(1, 2), ratio(-1, 2)]);
        for d in [Vector::from_ints(&[1, -1, 1]), Vector::from_ints(&[0, 1, 0]), Vector::from_ints(&[1, 0, 0])] {
            let cert = checker.check(&x, &d).unwrap();
            assert!(cert.validate(&b, &x, &d).unwrap());
            assert_eq!(cert.is_witness(), illuminates(&b, &x, &d).unwrap().0);
        }
    }
}
