use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Vector;

/// A non-zero direction tagged with the construction that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction {
    pub vector: Vector,
    pub provenance: String,
}

impl Direction {
    pub fn new(vector: Vector, provenance: impl Into<String>) -> Result<Self> {
        if vector.is_zero() {
            return Err(Error::InvalidParameter("directions must be non-zero".into()));
        }
        Ok(Direction {
            vector,
            provenance: provenance.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionSet {
    pub id: String,
    pub directions: Vec<Direction>,
}

impl DirectionSet {
    /// Builds a set from vectors sharing one provenance label. Duplicates
    /// are dropped, keeping the first occurrence.
    pub fn from_vectors(
        id: impl Into<String>,
        provenance: &str,
        vectors: impl IntoIterator<Item = Vector>,
    ) -> Result<Self> {
        let mut set = DirectionSet {
            id: id.into(),
            directions: Vec::new(),
        };
        let directions = vectors
            .into_iter()
            .map(|v| Direction::new(v, provenance))
            .collect::<Result<Vec<_>>>()?;
        set.extend_unique(directions);
        Ok(set)
    }

    fn extend_unique(&mut self, directions: impl IntoIterator<Item = Direction>) {
        let mut seen: HashSet<Vector> = self.directions.iter().map(|d| d.vector.clone()).collect();
        for d in directions {
            if seen.insert(d.vector.clone()) {
                self.directions.push(d);
            }
        }
    }

    /// Appends unless the vector is already present.
    pub fn push(&mut self, d: Direction) -> bool {
        if self.contains(&d.vector) {
            return false;
        }
        self.directions.push(d);
        true
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.directions.first().map(|d| d.vector.dim())
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.directions.iter().any(|d| &d.vector == v)
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.directions.iter().map(|d| d.vector.clone()).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Direction> {
        self.directions.iter()
    }

    pub fn union(&self, other: &DirectionSet) -> DirectionSet {
        let mut out = DirectionSet {
            id: format!("{}+{}", self.id, other.id),
            directions: self.directions.clone(),
        };
        out.extend_unique(other.directions.iter().cloned());
        out
    }

    /// Copy with directions in lexicographic order.
    pub fn sorted(&self) -> DirectionSet {
        let mut directions = self.directions.clone();
        directions.sort_by(|a, b| a.vector.cmp(&b.vector));
        DirectionSet {
            id: self.id.clone(),
            directions,
        }
    }

    pub fn without(&self, removed: &[Vector]) -> DirectionSet {
        DirectionSet {
            id: self.id.clone(),
            directions: self
                .directions
                .iter()
                .filter(|d| !removed.contains(&d.vector))
                .cloned()
                .collect(),
        }
    }

    pub fn is_negation_closed(&self) -> bool {
        let set: BTreeSet<&Vector> = self.directions.iter().map(|d| &d.vector).collect();
        self.directions.iter().all(|d| set.contains(&-&d.vector))
    }
}

/// Opposite pairs `{d, -d}` and unpaired directions in a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairCensus {
    pub pairs: usize,
    pub unpaired: usize,
}

impl PairCensus {
    /// Number of lines through the directions.
    pub fn xray_bound(&self) -> usize {
        self.pairs + self.unpaired
    }
}

pub fn opposite_pair_census(set: &DirectionSet) -> PairCensus {
    let vectors: BTreeSet<&Vector> = set.directions.iter().map(|d| &d.vector).collect();
    let paired = vectors.iter().filter(|v| vectors.contains(&-**v)).count();
    PairCensus {
        pairs: paired / 2,
        unpaired: vectors.len() - paired,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_of_small_sets() {
        let single = DirectionSet::from_vectors("e1", "test", [Vector::unit(3, 0)]).unwrap();
        assert_eq!(opposite_pair_census(&single), PairCensus { pairs: 0, unpaired: 1 });
        let cross = DirectionSet::from_vectors(
            "cross",
            "test",
            [Vector::from_ints(&[1, 0]), Vector::from_ints(&[-1, 0]), Vector::from_ints(&[0, 1])],
        )
        .unwrap();
        let c = opposite_pair_census(&cross);
        assert_eq!((c.pairs, c.unpaired, c.xray_bound()), (1, 1, 2));
        assert!(!cross.is_negation_closed());
    }

    #[test]
    fn zero_direction_rejected() {
        assert!(Direction::new(Vector::zeros(2), "x").is_err());
    }
}
