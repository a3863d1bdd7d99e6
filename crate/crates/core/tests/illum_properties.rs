//! Illumination of vertices of seeded random bodies by the perturbed basis
//! directions, the sign cube, and supersets of covering sets.

use illumination::body::SymmetricBody;
use illumination::exact::{int, ratio, sign, Scalar, Vector};
use illumination::illum::{deep_illuminates, illuminates, verify_set, DirectionSet, IlluminationChecker};
use illumination::scenarios::{random_symmetric, sign_pool, Profile};
use illumination::sets::{big_set, default_delta};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn body(n: usize, seed: u64) -> SymmetricBody {
    random_symmetric(n, seed, Profile::for_seed(seed)).unwrap().body
}

fn pick(b: &SymmetricBody, index: usize) -> Vector {
    let vs = b.vertices().unwrap();
    vs[index % vs.len()].clone()
}

fn lit(b: &SymmetricBody, x: &Vector, d: &Vector) -> bool {
    let (ok, cert) = illuminates(b, x, d).unwrap();
    assert!(cert.validate(b, x, d).unwrap(), "certificate for {x:?}, {d:?} does not re-check");
    ok
}

fn max_coords(x: &Vector) -> Vec<usize> {
    let m = x.linf_norm();
    (0..x.dim()).filter(|&i| x.coords()[i].abs() == m).collect()
}

/// `a / (b n)` with `0 <= a < b`: a value in `[0, 1/n)`.
fn below_one_over(n: usize, (a, b): (i64, i64)) -> Scalar {
    ratio(a % b, b * n as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn deep_illumination_implies_illumination(
        n in 3usize..=5,
        seed in 0u64..5000,
        picks in prop::collection::vec(any::<usize>(), 3),
    ) {
        let b = body(n, seed);
        let g = big_set(n, &default_delta(n)).unwrap();
        let checker = IlluminationChecker::new(&b);
        for p in picks {
            let x = pick(&b, p);
            for d in g.vectors() {
                if deep_illuminates(&d, &x) {
                    let cert = checker.check(&x, &d).unwrap();
                    prop_assert!(cert.is_witness(), "{:?} deep but not classical at {:?}", d, x);
                    prop_assert!(cert.validate(&b, &x, &d).unwrap());
                }
            }
        }
    }

    #[test]
    fn perturbed_basis_direction_illuminates(
        n in 3usize..=5,
        seed in 0u64..5000,
        p in any::<usize>(),
        k in any::<usize>(),
        zero_signs in prop::collection::vec(any::<bool>(), 5),
        delta in (0i64..100, 1i64..100),
    ) {
        let b = body(n, seed);
        let x = pick(&b, p);
        let support: Vec<usize> = (0..n).filter(|&i| !x.coords()[i].is_zero()).collect();
        let k = support[k % support.len()];
        let delta = below_one_over(n, delta);
        prop_assume!(delta.is_positive());
        let d = Vector::new(
            (0..n)
                .map(|i| {
                    let s = sign(&x.coords()[i]);
                    if i == k {
                        int(-i64::from(s))
                    } else if s == 0 {
                        if zero_signs[i] { delta.clone() } else { -delta.clone() }
                    } else {
                        -&delta * int(i64::from(s))
                    }
                })
                .collect(),
        );
        prop_assert!(lit(&b, &x, &d));
    }

    #[test]
    fn per_coordinate_perturbations_illuminate(
        n in 3usize..=5,
        seed in 0u64..5000,
        p in any::<usize>(),
        k in any::<usize>(),
        signs in prop::collection::vec(any::<bool>(), 5),
        deltas in prop::collection::vec((0i64..50, 1i64..50), 5),
    ) {
        let b = body(n, seed);
        let x = pick(&b, p);
        let m = max_coords(&x);
        let k0 = m[k % m.len()];
        let d = Vector::new(
            (0..n)
                .map(|i| {
                    let s = int(i64::from(sign(&x.coords()[i])));
                    let t = below_one_over(n, deltas[i]);
                    if i == k0 {
                        -s
                    } else if m.contains(&i) {
                        // On the maximal coordinates the perturbation must be nonzero.
                        let t = if t.is_zero() { ratio(1, 2 * n as i64) } else { t };
                        -(t * s)
                    } else if signs[i] {
                        t
                    } else {
                        -t
                    }
                })
                .collect(),
        );
        prop_assert!(lit(&b, &x, &d));
    }

    #[test]
    fn unique_largest_coordinate_is_illuminated_by_its_axis(
        n in 2usize..=5,
        seed in 0u64..5000,
        p in any::<usize>(),
    ) {
        let b = body(n, seed);
        let x = pick(&b, p);
        let m = max_coords(&x);
        if m.len() == 1 {
            let i0 = m[0];
            let d = Vector::unit(n, i0).scale(&int(-i64::from(sign(&x.coords()[i0]))));
            prop_assert!(lit(&b, &x, &d));
        }
    }

    #[test]
    fn sign_cube_covers_unconditional_bodies_around_half_ones(
        n in 2usize..=4,
        near in prop::collection::vec(3i64..=4, 4),
        others in prop::collection::vec(prop::collection::vec(0i64..=4, 4), 0..3),
    ) {
        // Unit vectors plus points in [0, 1]^n keep every e_i on the boundary;
        // a generator dominating (1/2)1 strictly keeps (1/2)1 interior.
        let mut gens: Vec<Vector> = (0..n).map(|i| Vector::unit(n, i)).collect();
        gens.push(Vector::new(near[..n].iter().map(|&a| ratio(a, 4)).collect()));
        gens.extend(others.iter().map(|g| Vector::new(g[..n].iter().map(|&a| ratio(a, 4)).collect())));
        let b = SymmetricBody::one_unconditional(gens).unwrap();
        for i in 0..n {
            prop_assert_eq!(b.gauge(&Vector::unit(n, i)).unwrap(), Scalar::one());
        }
        prop_assert!(b.is_interior(&Vector::ones(n).scale(&ratio(1, 2))).unwrap());
        let cube = DirectionSet::from_vectors(
            "signs",
            "signs",
            sign_pool(n).vectors().into_iter().filter(|v| v.support_size() == n),
        )
        .unwrap();
        let report = verify_set(&b, &cube).unwrap();
        prop_assert!(report.covers());
        prop_assert!(report.validate(&b).unwrap());
    }

    #[test]
    fn adding_directions_keeps_a_cover(
        seed in 0u64..5000,
        keep in prop::collection::vec(any::<bool>(), 26),
        extra in prop::collection::vec(any::<bool>(), 26),
    ) {
        let b = body(3, seed);
        let pool = sign_pool(3).vectors();
        let choose = |mask: &[bool]| {
            DirectionSet::from_vectors(
                "subset",
                "subset",
                pool.iter().zip(mask).filter(|(_, k)| **k).map(|(v, _)| v.clone()),
            )
            .unwrap()
        };
        let d = choose(&keep);
        prop_assume!(!d.is_empty());
        if verify_set(&b, &d).unwrap().covers() {
            let bigger = d.union(&choose(&extra));
            prop_assert!(verify_set(&b, &bigger).unwrap().covers());
        }
    }

    /// A direction that illuminates a vertex also illuminates the relative
    /// interior of every boundary segment leaving that vertex.
    #[test]
    fn vertex_witness_extends_along_boundary_segments(
        n in 2usize..=4,
        seed in 0u64..5000,
        p in any::<usize>(),
        q in any::<usize>(),
        t in 1i64..8,
    ) {
        let b = body(n, seed);
        let v = pick(&b, p);
        let w = pick(&b, q);
        prop_assume!(v != w);
        let mid = v.add_scaled(&Scalar::one(), &w).scale(&ratio(1, 2));
        prop_assume!(b.gauge(&mid).unwrap() == Scalar::one());
        let point = v.scale(&ratio(8 - t, 8)).add_scaled(&ratio(t, 8), &w);
        for d in sign_pool(n).vectors() {
            if lit(&b, &v, &d) {
                prop_assert!(lit(&b, &point, &d), "{:?} lights {:?} but not {:?}", d, v, point);
            }
        }
    }
}
