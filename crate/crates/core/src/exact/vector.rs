use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{format_scalar, int, parse_scalar, Scalar};
use crate::error::{Error, Result};

/// Fixed-dimension vector of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(coords: Vec<Scalar>) -> Self {
        assert!(!coords.is_empty(), "vectors have positive dimension");
        Vector(coords)
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Vector::new(values.iter().map(|&v| int(v)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector::new(vec![Scalar::zero(); dim])
    }

    pub fn ones(dim: usize) -> Self {
        Vector::new(vec![int(1); dim])
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.0[index] = int(1);
        v
    }

    /// `e_1 + ... + e_k` in dimension `dim`.
    pub fn prefix_ones(dim: usize, k: usize) -> Self {
        let mut v = Vector::zeros(dim);
        for c in v.0.iter_mut().take(k) {
            *c = int(1);
        }
        v
    }

    /// Comma-separated rationals, e.g. `"1,-1/2,0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let coords = text
            .split(',')
            .map(parse_scalar)
            .collect::<Result<Vec<_>>>()?;
        Ok(Vector::new(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "expected dimension {dim}, got {}",
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        assert_eq!(self.dim(), other.dim(), "dot product dimension mismatch");
        self.0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, factor: &Scalar) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: &Scalar, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + factor * b).collect())
    }

    pub fn abs(&self) -> Vector {
        Vector(self.0.iter().map(Signed::abs).collect())
    }

    pub fn l1_norm(&self) -> Scalar {
        self.0.iter().fold(Scalar::zero(), |acc, c| acc + c.abs())
    }

    pub fn linf_norm(&self) -> Scalar {
        self.0
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplies by the positive rational that makes every coordinate an
    /// integer with overall gcd 1. Leaves the zero vector alone.
    pub fn primitive(&self) -> Vector {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<num_bigint::BigInt> =
            self.0.iter().map(|c| (c * Scalar::from_integer(lcm.clone())).to_integer()).collect();
        let gcd = ints
            .iter()
            .fold(num_bigint::BigInt::from(0), |acc, c| acc.gcd(c));
        Vector(
            ints.into_iter()
                .map(|c| Scalar::from_integer(c / &gcd))
                .collect(),
        )
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_scalar).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::DimensionMismatch("empty coordinate list".into()));
        }
        Ok(Vector::new(
            items
                .iter()
                .map(|s| parse_scalar(s.as_ref()))
                .collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;

    fn index(&self, index: usize) -> &Scalar {
        &self.0[index]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim());
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        Vector::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn norms_and_dot() {
        let v = Vector::new(vec![ratio(1, 2), ratio(-1, 3), int(0)]);
        assert_eq!(v.l1_norm(), ratio(5, 6));
        assert_eq!(v.linf_norm(), ratio(1, 2));
        assert_eq!(v.dot(&Vector::from_ints(&[2, 3, 7])), int(0));
        assert_eq!(v.support_size(), 2);
    }

    #[test]
    fn primitive_scaling() {
        let v = Vector::new(vec![ratio(1, 2), ratio(1, 2), int(0)]);
        assert_eq!(v.primitive(), Vector::from_ints(&[1, 1, 0]));
        let w = Vector::new(vec![ratio(-2, 3), ratio(4, 9)]);
        assert_eq!(w.primitive(), Vector::from_ints(&[-3, 2]));
    }

    #[test]
    fn parse_and_serde() {
        let v = Vector::parse("1,-1/2,0").unwrap();
        assert_eq!(v, Vector::new(vec![int(1), ratio(-1, 2), int(0)]));
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["1","-1/2","0"]"#);
        let back: Vector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert!(Vector::parse("1,0.5").is_err());
    }
}
