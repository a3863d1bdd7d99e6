//! Sizes and shapes of the direction families, n = 2..12.

use illumination::exact::{ratio, Scalar, Vector};
use illumination::illum::DirectionSet;
use illumination::sets::{
    big_set, default_delta, method1_set, method2_set, minus2_set, t1, t2, t2prime, theorem_e_set, thm41_set,
    thm44_set, tn_set,
};
use num_traits::{One, Signed, Zero};

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn pow2(n: usize) -> usize {
    1 << n
}

/// One coordinate of absolute value 1, every other of absolute value `delta`.
fn in_big_set(v: &Vector, delta: &Scalar) -> bool {
    let ones = v.iter().filter(|c| c.abs() == Scalar::one()).count();
    ones == 1 && v.iter().all(|c| c.abs() == Scalar::one() || &c.abs() == delta)
}

fn all_distinct(set: &DirectionSet) -> bool {
    let mut vs = set.vectors();
    let len = vs.len();
    vs.sort();
    vs.dedup();
    vs.len() == len
}

#[test]
fn cardinalities() {
    for n in 2..=12usize {
        let delta = default_delta(n);
        let sizes = [
            ("G", big_set(n, &delta).unwrap(), n * pow2(n)),
            ("Method1", method1_set(n, &delta).unwrap(), pow2(n)),
            ("Method2", method2_set(n, &delta).unwrap(), pow2(n)),
            ("T1", t1(n).unwrap(), pow2(n) - 1),
            ("T2", t2(n).unwrap(), pow2(n - 1) + 2),
        ];
        for (name, set, expected) in sizes {
            assert_eq!(set.len(), expected, "{name} at n = {n}");
            assert!(all_distinct(&set), "{name} at n = {n}");
        }
        if n >= 3 {
            assert_eq!(t2prime(n).unwrap().len(), pow2(n - 1) + 2 * n, "T2prime at n = {n}");
            let eta = ratio(1, 2 * (n as i64 + 1));
            assert_eq!(minus2_set(n, &delta).unwrap().len(), pow2(n) - 2, "Minus2 at n = {n}");
            assert_eq!(theorem_e_set(n, &eta).unwrap().len(), pow2(n) - 2, "ThmE at n = {n}");
            assert_eq!(thm41_set(n).unwrap().len(), pow2(n - 1) + 2, "Thm41 at n = {n}");
        }
        if n == 2 {
            // {-1,1} x {0} is already {±e_1}.
            assert_eq!(t2prime(n).unwrap().len(), 4);
        }
        if n >= 4 {
            let m = n as u64 - 1;
            let tn = 4 * (0..=(n as u64 - 2) / 4).map(|s| choose(m, s)).sum::<u64>();
            assert_eq!(tn_set(n).unwrap().len() as u64, tn, "Tn at n = {n}");
            assert_eq!(thm44_set(n).unwrap().len() as u64, pow2(n - 1) as u64 + tn, "Thm44 at n = {n}");
        }
    }
}

#[test]
fn perturbed_families_lie_in_the_big_set() {
    for n in 3..=10usize {
        let delta = default_delta(n);
        let g = big_set(n, &delta).unwrap();
        assert!(g.iter().all(|d| in_big_set(&d.vector, &delta)));
        for set in [
            method1_set(n, &delta).unwrap(),
            method2_set(n, &delta).unwrap(),
            minus2_set(n, &delta).unwrap(),
        ] {
            for d in set.iter() {
                assert!(in_big_set(&d.vector, &delta), "{} has {:?}", set.id, d.vector);
                assert!(g.contains(&d.vector));
            }
        }
    }
}

#[test]
fn eta_set_leaves_the_big_set_only_on_its_modified_pair() {
    for n in 3..=10usize {
        let delta = default_delta(n);
        let eta = ratio(1, 2 * (n as i64 + 1));
        let set = theorem_e_set(n, &eta).unwrap();
        let odd: Vec<&Vector> = set.iter().map(|d| &d.vector).filter(|v| !in_big_set(v, &delta)).collect();
        assert_eq!(odd.len(), 2, "n = {n}");
        assert_eq!(odd[0], &-odd[1]);
        let bound = ratio(1, n as i64);
        for v in odd {
            assert_eq!(v.linf_norm(), Scalar::one());
            let small: Vec<Scalar> = v.iter().map(|c| c.abs()).filter(|a| a != &Scalar::one()).collect();
            assert_eq!(small.len(), n - 1);
            assert!(small.iter().all(|a| a.is_positive() && a < &bound));
        }
    }
}

#[test]
fn method2_is_closed_under_negation_and_method1_is_not() {
    for n in 2..=10usize {
        let set = method2_set(n, &default_delta(n)).unwrap();
        assert!(set.iter().all(|d| set.contains(&-&d.vector)), "n = {n}");
        assert!(set.is_negation_closed());
    }
    let m1 = method1_set(3, &default_delta(3)).unwrap();
    assert!(!m1.iter().all(|d| m1.contains(&-&d.vector)));
    assert!(!m1.is_negation_closed());
}

#[test]
fn embedded_families_use_one_over_n_and_a_zero_last_coordinate() {
    for n in 3..=8usize {
        let set = thm41_set(n).unwrap();
        let inner = ratio(1, n as i64);
        for d in set.iter() {
            let v = &d.vector;
            let last = &v.coords()[n - 1];
            if last.is_zero() {
                assert!(in_big_set(&Vector::new(v.coords()[..n - 1].to_vec()), &inner));
            } else {
                assert_eq!(v.support_size(), 1);
            }
        }
    }
}
