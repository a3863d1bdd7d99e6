//! Stable claim ids mapped to verifiers.

use serde_json::{json, Value};

use super::{
    binomial_claim, claim_f_check, deep_completeness, lemma32_check, lemma52_check, oracle_equivalence,
    random_symmetric, theorem_d_check, theorem_e_check, thm41_check, thm44_check, verify_b1_lower_bound,
    verify_b2_claims, verify_b3_claims, verify_b4_claims, xray_census, ClaimResult, NamedBody, Profile,
};
use crate::body::SymmetricBody;
use crate::error::{Error, Result};
use crate::exact::{format_scalar, Scalar};
use crate::sets::default_delta;

const IDS: [&str; 16] = [
    "b1.3.lower_bound",
    "b1.4.lower_bound",
    "b2",
    "b3",
    "b4",
    "thmD",
    "thmE",
    "thm41",
    "thm44",
    "claimF",
    "lemma4.3",
    "prop3.5",
    "lemma5.2",
    "xray",
    "lemma3.2",
    "oracle",
];

pub fn claim_ids() -> &'static [&'static str] {
    &IDS
}

/// Optional inputs; every claim has defaults for what it needs.
#[derive(Clone, Debug, Default)]
pub struct ClaimParams {
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub delta: Option<Scalar>,
    /// Body for the per-body theorem checks; a random body otherwise.
    pub body: Option<(String, SymmetricBody)>,
}

/// A verdict with the parameters actually used and, for per-body claims,
/// the body the certificates refer to.
#[derive(Clone, Debug)]
pub struct ClaimRun {
    pub result: ClaimResult,
    pub parameters: Value,
    pub body: Option<SymmetricBody>,
}

fn range_or(n: Option<usize>, lo: usize, hi: usize) -> Vec<usize> {
    match n {
        Some(n) => vec![n],
        None => (lo..=hi).collect(),
    }
}

pub fn run_claim(id: &str, params: &ClaimParams) -> Result<ClaimRun> {
    let body_claim = |check: fn(&SymmetricBody) -> Result<ClaimResult>| -> Result<ClaimRun> {
        let (label, body) = pick_body(params)?;
        let result = check(&body)?;
        Ok(ClaimRun {
            result,
            parameters: json!({ "body": label, "n": body.dim() }),
            body: Some(body),
        })
    };
    let fixed = |result: ClaimResult, parameters: Value, body: Option<SymmetricBody>| {
        Ok(ClaimRun {
            result,
            parameters,
            body,
        })
    };
    match id {
        "b1.3.lower_bound" | "b1.4.lower_bound" => {
            let n = if id == "b1.3.lower_bound" { 3 } else { 4 };
            let body = NamedBody::build(super::BodyId::B1(n))?.body;
            fixed(verify_b1_lower_bound(n)?, json!({ "body": format!("B1({n})"), "n": n }), Some(body))
        }
        "b2" => fixed(
            verify_b2_claims()?,
            json!({ "body": "B2", "n": 9 }),
            Some(NamedBody::build(super::BodyId::B2)?.body),
        ),
        "b3" => fixed(
            verify_b3_claims()?,
            json!({ "body": "B3", "n": 25 }),
            Some(NamedBody::build(super::BodyId::B3)?.body),
        ),
        "b4" => {
            let n = params.n.unwrap_or(4);
            let body = NamedBody::build(super::BodyId::B4(n))?.body;
            fixed(verify_b4_claims(n)?, json!({ "body": format!("B4({n})"), "n": n }), Some(body))
        }
        "thmD" => body_claim(theorem_d_check),
        "thmE" => body_claim(theorem_e_check),
        "thm41" => body_claim(thm41_check),
        "thm44" => body_claim(thm44_check),
        "claimF" => body_claim(claim_f_check),
        "lemma3.2" => {
            let (label, body) = pick_body(params)?;
            let delta = params.delta.clone().unwrap_or_else(|| default_delta(body.dim()));
            let result = lemma32_check(&body, &delta)?;
            fixed(
                result,
                json!({ "body": label, "n": body.dim(), "delta": format_scalar(&delta) }),
                Some(body),
            )
        }
        "lemma4.3" => fixed(binomial_claim()?, json!({}), None),
        "prop3.5" => {
            let ns = range_or(params.n, 2, 10);
            fixed(deep_completeness(&ns)?, json!({ "n": ns }), None)
        }
        "lemma5.2" => {
            let ns = range_or(params.n, 3, 10);
            fixed(lemma52_check(&ns)?, json!({ "n": ns }), None)
        }
        "xray" => {
            let ns = range_or(params.n, 3, 10);
            fixed(xray_census(&ns)?, json!({ "n": ns }), None)
        }
        "oracle" => {
            let seed = params.seed.unwrap_or(0);
            fixed(oracle_equivalence(500, seed)?, json!({ "pairs": 500, "seed": seed }), None)
        }
        _ => Err(Error::InvalidParameter(format!(
            "unknown claim `{id}` (known: {})",
            IDS.join(", ")
        ))),
    }
}

fn pick_body(params: &ClaimParams) -> Result<(String, SymmetricBody)> {
    if let Some((label, body)) = &params.body {
        return Ok((label.clone(), body.clone()));
    }
    let n = params.n.unwrap_or(3);
    let seed = params.seed.unwrap_or(0);
    let named = random_symmetric(n, seed, Profile::for_seed(seed))?;
    Ok((named.id.to_string(), named.body))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_ids_are_rejected() {
        assert!(run_claim("nope", &ClaimParams::default()).is_err());
        assert_eq!(claim_ids().len(), 16);
    }

    #[test]
    fn cheap_claims_run() {
        for id in ["lemma4.3", "xray"] {
            let run = run_claim(id, &ClaimParams { n: Some(4), ..Default::default() }).unwrap();
            assert!(run.result.confirmed(), "{id}");
        }
    }
}
