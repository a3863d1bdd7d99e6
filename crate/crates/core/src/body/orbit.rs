//! Orbits of a single generator under a symmetry class.
//!
//! For the two coordinate classes nothing here expands an orbit unless
//! asked to: the maximum of a linear functional over the orbit of `g` is
//! read off directly. Under all signed permutations it is the sorted dot
//! product of `|g|` and `|u|` (rearrangement inequality); under sign changes
//! it is `sum |g_i| |u_i|`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::symmetry::{next_permutation, SignedPermutation, SymmetryClass};
use crate::error::{Error, Result};
use crate::exact::{Scalar, Vector};

/// Canonical orbit representative: `|g|` sorted non-increasingly for
/// 1-symmetric orbits, `|g|` for 1-unconditional ones, and the
/// lexicographically largest orbit point for explicit groups.
pub fn canonical(g: &Vector, symmetry: &SymmetryClass) -> Vector {
    match symmetry {
        SymmetryClass::OneSymmetric => {
            let mut abs: Vec<Scalar> = g.abs().into_coords();
            abs.sort_by(|a, b| b.cmp(a));
            Vector::new(abs)
        }
        SymmetryClass::OneUnconditional => g.abs(),
        SymmetryClass::ExplicitGroup(group) => group
            .iter()
            .map(|s| s.apply(g))
            .max()
            .expect("groups are non-empty"),
    }
}

/// Number of distinct orbit points, saturating at `u128::MAX`.
pub fn orbit_size(g: &Vector, symmetry: &SymmetryClass) -> u128 {
    let nonzero = g.support_size() as u32;
    let signs = 1u128.checked_shl(nonzero).unwrap_or(u128::MAX);
    match symmetry {
        SymmetryClass::OneSymmetric => {
            let abs = canonical(g, symmetry);
            // multinomial n! / prod(mult!) built as a product of binomials
            let mut total: u128 = 1;
            let mut placed = 0u128;
            let coords = abs.coords();
            let mut i = 0;
            while i < coords.len() {
                let mut j = i;
                while j < coords.len() && coords[j] == coords[i] {
                    j += 1;
                }
                for step in 1..=(j - i) as u128 {
                    placed += 1;
                    total = match total.checked_mul(placed) {
                        Some(t) => t / step,
                        None => return u128::MAX,
                    };
                }
                i = j;
            }
            total.saturating_mul(signs)
        }
        SymmetryClass::OneUnconditional => signs,
        SymmetryClass::ExplicitGroup(group) => {
            group.iter().map(|s| s.apply(g)).collect::<BTreeSet<_>>().len() as u128
        }
    }
}

/// All orbit points, sorted and de-duplicated.
pub fn orbit_expand(g: &Vector, symmetry: &SymmetryClass, cap: u128) -> Result<Vec<Vector>> {
    let size = orbit_size(g, symmetry);
    if size > cap {
        return Err(Error::OrbitTooLarge { size, cap });
    }
    let mut points: Vec<Vector> = match symmetry {
        SymmetryClass::OneSymmetric => {
            let mut abs: Vec<Scalar> = g.abs().into_coords();
            abs.sort();
            let mut out = Vec::with_capacity(size as usize);
            loop {
                push_sign_patterns(&abs, &mut out);
                if !next_permutation(&mut abs) {
                    break;
                }
            }
            out
        }
        SymmetryClass::OneUnconditional => {
            let mut out = Vec::with_capacity(size as usize);
            push_sign_patterns(g.abs().coords(), &mut out);
            out
        }
        SymmetryClass::ExplicitGroup(group) => group.iter().map(|s| s.apply(g)).collect(),
    };
    points.sort();
    points.dedup();
    Ok(points)
}

fn push_sign_patterns(abs: &[Scalar], out: &mut Vec<Vector>) {
    let support: Vec<usize> = (0..abs.len()).filter(|&i| !abs[i].is_zero()).collect();
    for mask in 0u64..(1u64 << support.len()) {
        let mut coords = abs.to_vec();
        for (bit, &i) in support.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                coords[i] = -coords[i].clone();
            }
        }
        out.push(Vector::new(coords));
    }
}

/// An orbit point maximizing `<v, u>`, with the maximum.
///
/// Ties are broken deterministically (larger `|u_i|` first, then smaller
/// index; zero coordinates of `u` receive the positive sign).
pub fn orbit_argmax(g: &Vector, symmetry: &SymmetryClass, u: &Vector) -> (Vector, Scalar) {
    match symmetry {
        SymmetryClass::OneSymmetric => {
            let canon = canonical(g, symmetry);
            let abs_u = u.abs();
            let n = u.dim();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| abs_u[b].cmp(&abs_u[a]).then(a.cmp(&b)));
            let mut coords = vec![Scalar::zero(); n];
            let mut value = Scalar::zero();
            for (k, &i) in order.iter().enumerate() {
                let c = &canon[k];
                value += c * &abs_u[i];
                coords[i] = if u[i].is_negative() { -c.clone() } else { c.clone() };
            }
            (Vector::new(coords), value)
        }
        SymmetryClass::OneUnconditional => {
            let coords: Vec<Scalar> = g
                .iter()
                .zip(u.iter())
                .map(|(gi, ui)| if ui.is_negative() { -gi.abs() } else { gi.abs() })
                .collect();
            let v = Vector::new(coords);
            let value = v.dot(u);
            (v, value)
        }
        SymmetryClass::ExplicitGroup(group) => group
            .iter()
            .map(|s| {
                let v = s.apply(g);
                let value = v.dot(u);
                (v, value)
            })
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
            .expect("groups are non-empty"),
    }
}

/// Maximum of `<v, u>` over the orbit of `g` with the point `excluded`
/// removed. `None` if the orbit is just `{excluded}`.
///
/// If the unrestricted maximizer is not `excluded` it is returned as is.
/// Otherwise the best remaining point is adjacent to `excluded` on the
/// orbit polytope, and every edge of an orbit polytope of a reflection group
/// joins `v` to `r v` for a reflection `r`, so scanning the reflections of
/// `excluded` suffices.
pub fn orbit_argmax_excluding(
    g: &Vector,
    symmetry: &SymmetryClass,
    u: &Vector,
    excluded: &Vector,
) -> Option<(Vector, Scalar)> {
    if let SymmetryClass::ExplicitGroup(group) = symmetry {
        return group
            .iter()
            .map(|s| s.apply(g))
            .filter(|v| v != excluded)
            .map(|v| {
                let value = v.dot(u);
                (v, value)
            })
            .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
    }
    let best = orbit_argmax(g, symmetry, u);
    if &best.0 != excluded {
        return Some(best);
    }
    reflections(excluded, symmetry)
        .into_iter()
        .filter(|v| v != excluded)
        .map(|v| {
            let value = v.dot(u);
            (v, value)
        })
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
}

/// Images of `x` under every reflection of the class.
fn reflections(x: &Vector, symmetry: &SymmetryClass) -> Vec<Vector> {
    let n = x.dim();
    let coords = x.coords();
    let mut out = Vec::new();
    for i in 0..n {
        let mut c = coords.to_vec();
        c[i] = -c[i].clone();
        out.push(Vector::new(c));
    }
    if *symmetry == SymmetryClass::OneSymmetric {
        for i in 0..n {
            for j in i + 1..n {
                let mut c = coords.to_vec();
                c.swap(i, j);
                out.push(Vector::new(c.clone()));
                c[i] = -c[i].clone();
                c[j] = -c[j].clone();
                out.push(Vector::new(c));
            }
        }
    }
    out
}

/// `(canonical, s)` with `s(canonical) = x`, for the coordinate classes.
pub(crate) fn canonicalize_with_map(
    x: &Vector,
    symmetry: &SymmetryClass,
) -> Option<(Vector, SignedPermutation)> {
    match symmetry {
        SymmetryClass::OneSymmetric => Some((canonical(x, symmetry), SignedPermutation::sorting(x))),
        SymmetryClass::OneUnconditional => Some((x.abs(), SignedPermutation::unsigning(x))),
        SymmetryClass::ExplicitGroup(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};

    fn half_ones(n: usize, k: usize) -> Vector {
        let mut v = vec![Scalar::zero(); n];
        for c in v.iter_mut().take(k) {
            *c = ratio(1, 2);
        }
        Vector::new(v)
    }

    #[test]
    fn expand_small_orbits() {
        let sym = SymmetryClass::OneSymmetric;
        let e1 = Vector::unit(3, 0);
        let orbit = orbit_expand(&e1, &sym, 1_000).unwrap();
        assert_eq!(orbit.len(), 6);
        let half = half_ones(3, 3);
        assert_eq!(orbit_expand(&half, &sym, 1_000).unwrap().len(), 8);
    }

    #[test]
    fn orbit_size_matches_enumeration_in_dimension_nine() {
        let sym = SymmetryClass::OneSymmetric;
        let g = half_ones(9, 4);
        assert_eq!(orbit_size(&g, &sym), 126 * 16);
        assert_eq!(orbit_expand(&g, &sym, 1_000_000).unwrap().len(), 2016);
    }

    #[test]
    fn orbit_cap_enforced() {
        let g = half_ones(9, 4);
        assert!(matches!(
            orbit_expand(&g, &SymmetryClass::OneSymmetric, 100),
            Err(Error::OrbitTooLarge { size: 2016, cap: 100 })
        ));
    }

    #[test]
    fn argmax_agrees_with_enumeration() {
        let syms = [SymmetryClass::OneSymmetric, SymmetryClass::OneUnconditional];
        let g = Vector::new(vec![int(1), ratio(2, 3), ratio(2, 3), int(0)]);
        let u = Vector::new(vec![ratio(-1, 2), int(3), int(0), ratio(1, 5)]);
        for sym in &syms {
            let orbit = orbit_expand(&g, sym, 10_000).unwrap();
            let brute = orbit.iter().map(|v| v.dot(&u)).max().unwrap();
            let (v, value) = orbit_argmax(&g, sym, &u);
            assert_eq!(value, brute);
            assert_eq!(v.dot(&u), value);
            assert!(orbit.contains(&v));
            let (w, second) = orbit_argmax_excluding(&g, sym, &u, &v).unwrap();
            let brute_second = orbit.iter().filter(|p| **p != v).map(|p| p.dot(&u)).max().unwrap();
            assert_eq!(second, brute_second);
            assert_ne!(w, v);
        }
    }
}
