use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::body::SymmetricBody;
use crate::error::{Error, Result};
use crate::exact::{format_scalar, parse_scalar, Scalar, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `gauge(x + step * d) = interior_gauge < 1`.
    Witness {
        direction: Vector,
        step: Scalar,
        interior_gauge: Scalar,
    },
    /// `normal` is an outer normal at `x` and `<d, normal> = inner_product >= 0`.
    Refutation {
        normal: Vector,
        inner_product: Scalar,
    },
}

impl Certificate {
    pub fn is_witness(&self) -> bool {
        matches!(self, Certificate::Witness { .. })
    }

    /// Re-checks the certificate for the pair `(x, d)` from scratch.
    pub fn validate(&self, body: &SymmetricBody, x: &Vector, d: &Vector) -> Result<bool> {
        match self {
            Certificate::Witness {
                direction,
                step,
                interior_gauge,
            } => {
                if direction != d || !step.is_positive() || interior_gauge >= &Scalar::one() {
                    return Ok(false);
                }
                Ok(&body.gauge(&x.add_scaled(step, d))? == interior_gauge)
            }
            Certificate::Refutation {
                normal,
                inner_product,
            } => {
                if normal.is_zero() || inner_product.is_negative() || &d.dot(normal) != inner_product {
                    return Ok(false);
                }
                if !body.is_member(x)? {
                    return Ok(false);
                }
                Ok(body.is_outer_normal(x, normal))
            }
        }
    }

    /// The structured-text form, with rationals as strings.
    pub fn to_record(&self, vertex: &Vector, direction: &Vector) -> CertificateRecord {
        let (witness, refutation) = match self {
            Certificate::Witness {
                step,
                interior_gauge,
                ..
            } => (
                Some(WitnessRecord {
                    step: format_scalar(step),
                    gauge: format_scalar(interior_gauge),
                }),
                None,
            ),
            Certificate::Refutation {
                normal,
                inner_product,
            } => (
                None,
                Some(RefutationRecord {
                    normal: normal.clone(),
                    dot: format_scalar(inner_product),
                }),
            ),
        };
        CertificateRecord {
            vertex: vertex.clone(),
            direction: direction.clone(),
            witness,
            refutation,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub step: String,
    pub gauge: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationRecord {
    pub normal: Vector,
    pub dot: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateRecord {
    pub vertex: Vector,
    pub direction: Vector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refutation: Option<RefutationRecord>,
}

impl CertificateRecord {
    pub fn to_certificate(&self) -> Result<Certificate> {
        match (&self.witness, &self.refutation) {
            (Some(w), None) => Ok(Certificate::Witness {
                direction: self.direction.clone(),
                step: parse_scalar(&w.step)?,
                interior_gauge: parse_scalar(&w.gauge)?,
            }),
            (None, Some(r)) => Ok(Certificate::Refutation {
                normal: r.normal.clone(),
                inner_product: parse_scalar(&r.dot)?,
            }),
            _ => Err(Error::InvalidParameter(
                "a certificate record needs exactly one of witness and refutation".into(),
            )),
        }
    }

    pub fn validate(&self, body: &SymmetricBody) -> Result<bool> {
        self.to_certificate()?.validate(body, &self.vertex, &self.direction)
    }

    pub fn is_witness(&self) -> bool {
        self.witness.is_some()
    }
}
