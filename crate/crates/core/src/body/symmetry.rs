use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::Vector;

/// `x -> (s_1 x_{p(1)}, ..., s_n x_{p(n)})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    negate: Vec<bool>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, negate: Vec<bool>) -> Result<Self> {
        let n = perm.len();
        if negate.len() != n || n == 0 {
            return Err(Error::InvalidGroup("permutation and sign lengths differ".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidGroup(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(SignedPermutation { perm, negate })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n).collect(),
            negate: vec![false; n],
        }
    }

    /// From a signed permutation matrix (one `±1` per row and column).
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        let mut perm = Vec::with_capacity(n);
        let mut negate = Vec::with_capacity(n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidGroup("matrix is not square".into()));
            }
            let nonzero: Vec<(usize, i64)> =
                row.iter().copied().enumerate().filter(|&(_, v)| v != 0).collect();
            match nonzero.as_slice() {
                [(j, v)] if v.abs() == 1 => {
                    perm.push(*j);
                    negate.push(*v < 0);
                }
                _ => return Err(Error::InvalidGroup("not a signed permutation matrix".into())),
            }
        }
        SignedPermutation::new(perm, negate)
    }

    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.dim();
        self.perm
            .iter()
            .zip(&self.negate)
            .map(|(&p, &neg)| {
                let mut row = vec![0; n];
                row[p] = if neg { -1 } else { 1 };
                row
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        assert_eq!(x.dim(), self.dim());
        Vector::new(
            self.perm
                .iter()
                .zip(&self.negate)
                .map(|(&p, &neg)| if neg { -x[p].clone() } else { x[p].clone() })
                .collect(),
        )
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let negate = self
            .perm
            .iter()
            .zip(&self.negate)
            .map(|(&p, &neg)| neg ^ other.negate[p])
            .collect();
        SignedPermutation { perm, negate }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut negate = vec![false; n];
        for (i, (&p, &neg)) in self.perm.iter().zip(&self.negate).enumerate() {
            perm[p] = i;
            negate[p] = neg;
        }
        SignedPermutation { perm, negate }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.negate.iter().all(|&n| !n)
    }

    /// All `n! 2^n` elements of the hyperoctahedral group.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut perms = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            perms.push(current.clone());
            if !next_permutation(&mut current) {
                break;
            }
        }
        let mut out = Vec::with_capacity(perms.len() << n);
        for p in perms {
            for mask in 0u64..(1u64 << n) {
                out.push(SignedPermutation {
                    perm: p.clone(),
                    negate: (0..n).map(|i| mask >> i & 1 == 1).collect(),
                });
            }
        }
        out
    }

    /// The signed permutation `s` with `s(canonical) = x`, where `canonical`
    /// is `|x|` sorted non-increasingly (ties by index).
    pub(crate) fn sorting(x: &Vector) -> SignedPermutation {
        let n = x.dim();
        let abs = x.abs();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| abs[b].cmp(&abs[a]).then(a.cmp(&b)));
        let mut perm = vec![0; n];
        for (k, &i) in order.iter().enumerate() {
            perm[i] = k;
        }
        let negate = x.iter().map(|c| c < &Zero::zero()).collect();
        SignedPermutation { perm, negate }
    }

    /// The sign flip `s` with `s(|x|) = x`.
    pub(crate) fn unsigning(x: &Vector) -> SignedPermutation {
        SignedPermutation {
            perm: (0..x.dim()).collect(),
            negate: x.iter().map(|c| c < &Zero::zero()).collect(),
        }
    }
}

/// Lexicographic next permutation; returns `false` after the last one.
pub(crate) fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymmetryClass {
    /// Invariant under all coordinate permutations and sign changes.
    OneSymmetric,
    /// Invariant under coordinate sign changes.
    OneUnconditional,
    /// An explicit finite group of signed permutations.
    ExplicitGroup(Vec<SignedPermutation>),
}

/// Groups up to this size are checked for closure on construction.
pub const GROUP_CLOSURE_CHECK_LIMIT: usize = 4096;

impl SymmetryClass {
    /// Validates an explicit group: it must contain the identity and, when
    /// small enough, be closed under products.
    pub fn explicit(elements: Vec<SignedPermutation>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::InvalidGroup("empty group".into()));
        };
        let n = first.dim();
        if elements.iter().any(|g| g.dim() != n) {
            return Err(Error::InvalidGroup("elements act on different dimensions".into()));
        }
        if !elements.iter().any(SignedPermutation::is_identity) {
            return Err(Error::InvalidGroup("group does not contain the identity".into()));
        }
        let set: HashSet<&SignedPermutation> = elements.iter().collect();
        if elements.len() <= GROUP_CLOSURE_CHECK_LIMIT {
            for a in &elements {
                for b in &elements {
                    if !set.contains(&a.compose(b)) {
                        return Err(Error::InvalidGroup("group is not closed under products".into()));
                    }
                }
            }
        }
        let mut unique: Vec<SignedPermutation> = set.into_iter().cloned().collect();
        unique.sort();
        Ok(SymmetryClass::ExplicitGroup(unique))
    }

    /// The trivial group: the body is just the hull of its generators.
    pub fn trivial(n: usize) -> Self {
        SymmetryClass::ExplicitGroup(vec![SignedPermutation::identity(n)])
    }

    pub fn name(&self) -> &'static str {
        match self {
            SymmetryClass::OneSymmetric => "one_symmetric",
            SymmetryClass::OneUnconditional => "one_unconditional",
            SymmetryClass::ExplicitGroup(_) => "explicit_group",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn compose_and_inverse() {
        let a = SignedPermutation::new(vec![2, 0, 1], vec![true, false, false]).unwrap();
        let b = SignedPermutation::new(vec![1, 0, 2], vec![false, false, true]).unwrap();
        let x = Vector::from_ints(&[1, 2, 3]);
        assert_eq!(a.compose(&b).apply(&x), a.apply(&b.apply(&x)));
        assert_eq!(a.inverse().apply(&a.apply(&x)), x);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn sorting_maps_canonical_to_point() {
        let x = Vector::new(vec![ratio(-1, 3), ratio(0, 1), ratio(7, 10), ratio(-7, 10)]);
        let s = SignedPermutation::sorting(&x);
        let canonical = Vector::new(vec![ratio(7, 10), ratio(7, 10), ratio(1, 3), ratio(0, 1)]);
        assert_eq!(s.apply(&canonical), x);
    }

    #[test]
    fn hyperoctahedral_group_size_and_closure() {
        let all = SignedPermutation::all(3);
        assert_eq!(all.len(), 48);
        assert!(SymmetryClass::explicit(all).is_ok());
    }

    #[test]
    fn explicit_group_validation() {
        let swap = SignedPermutation::new(vec![1, 0], vec![false, false]).unwrap();
        assert!(matches!(
            SymmetryClass::explicit(vec![swap.clone()]),
            Err(Error::InvalidGroup(_))
        ));
        let flip = SignedPermutation::new(vec![0, 1], vec![true, false]).unwrap();
        // {id, swap, flip} is not closed: swap ∘ flip is missing.
        assert!(SymmetryClass::explicit(vec![SignedPermutation::identity(2), swap, flip]).is_err());
        let m = SignedPermutation::from_matrix(&[vec![0, -1], vec![1, 0]]).unwrap();
        assert_eq!(m.apply(&Vector::from_ints(&[3, 5])), Vector::from_ints(&[-5, 3]));
        assert!(SignedPermutation::from_matrix(&[vec![1, 1], vec![0, 1]]).is_err());
    }
}
