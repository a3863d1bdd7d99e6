//! JSON body definition files.
//!
//! ```json
//! { "dim": 3, "symmetry": "one_symmetric",
//!   "generators": [["1","0","0"], ["1/2","1/2","1/2"]], "symbolic_only": false }
//! ```
//!
//! `"symmetry": "explicit_group"` additionally takes `"group"`, a list of
//! signed permutation matrices with integer entries.

use serde::{Deserialize, Serialize};

use super::{SignedPermutation, SymmetricBody, SymmetryClass, DEFAULT_ORBIT_CAP};
use crate::error::{Error, Result};
use crate::exact::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryTag {
    OneSymmetric,
    OneUnconditional,
    ExplicitGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyFile {
    pub dim: usize,
    pub symmetry: SymmetryTag,
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub symbolic_only: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<Vec<Vec<i64>>>>,
}

impl BodyFile {
    pub fn parse(text: &str) -> Result<BodyFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("body files always serialize")
    }

    pub fn from_body(body: &SymmetricBody) -> BodyFile {
        let (symmetry, group) = match body.symmetry() {
            SymmetryClass::OneSymmetric => (SymmetryTag::OneSymmetric, None),
            SymmetryClass::OneUnconditional => (SymmetryTag::OneUnconditional, None),
            SymmetryClass::ExplicitGroup(g) => (
                SymmetryTag::ExplicitGroup,
                Some(g.iter().map(SignedPermutation::to_matrix).collect()),
            ),
        };
        BodyFile {
            dim: body.dim(),
            symmetry,
            generators: body.generators().iter().map(Vector::to_strings).collect(),
            symbolic_only: body.symbolic_only(),
            group,
        }
    }

    pub fn build(&self, orbit_cap: Option<u128>) -> Result<SymmetricBody> {
        let generators = self
            .generators
            .iter()
            .map(|g| Vector::from_strings(g))
            .collect::<Result<Vec<_>>>()?;
        for (i, g) in generators.iter().enumerate() {
            if g.dim() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} has {} coordinates, expected {}",
                    i + 1,
                    g.dim(),
                    self.dim
                )));
            }
        }
        let symmetry = match (self.symmetry, &self.group) {
            (SymmetryTag::OneSymmetric, None) => SymmetryClass::OneSymmetric,
            (SymmetryTag::OneUnconditional, None) => SymmetryClass::OneUnconditional,
            (SymmetryTag::ExplicitGroup, Some(mats)) => SymmetryClass::explicit(
                mats.iter()
                    .map(|m| SignedPermutation::from_matrix(m))
                    .collect::<Result<_>>()?,
            )?,
            (SymmetryTag::ExplicitGroup, None) => {
                return Err(Error::InvalidGroup("explicit_group requires a \"group\" list".into()))
            }
            (_, Some(_)) => {
                return Err(Error::InvalidGroup(
                    "\"group\" is only allowed with explicit_group".into(),
                ))
            }
        };
        SymmetricBody::with_options(
            self.dim,
            generators,
            symmetry,
            self.symbolic_only,
            orbit_cap.unwrap_or(DEFAULT_ORBIT_CAP),
        )
    }
}
