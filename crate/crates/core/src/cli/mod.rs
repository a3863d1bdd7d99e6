//! The `illum` command line: body files in, direction sets and reports out.
//!
//! Exit codes: 0 success or confirmed, 1 refuted or failed, 2 usage or
//! input error, 3 resource limit (orbit cap or search budget).

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::body::{BodyFile, SymmetricBody, DEFAULT_ORBIT_CAP};
use crate::error::{Error, Result};
use crate::exact::{format_scalar, parse_scalar, Scalar, Vector};
use crate::illum::{
    deep_illuminates, illuminates, min_cover_with_budget, verify_set, DirectionSet, DEFAULT_NODE_BUDGET,
};
use crate::scenarios::acceptance::{run_criteria, Suite, LEMMA32_PROPERTY};
use crate::scenarios::{run_claim, sign_pool, ClaimParams, ClaimVerdict, NamedBody};
use crate::sets::{family, FamilyParams, FamilyTag};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "illum", version, about = "Exact illumination checks for 1-symmetric polytopes")]
pub struct Cli {
    /// Worker threads for vertex checks and claim batches (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct BodyArgs {
    /// Body definition file, or a named body: B1:3, B2, B3, B4:4, cross:3, cube:3, random:4:7.
    #[arg(long)]
    pub body: String,
    /// Largest orbit a body may expand to.
    #[arg(long)]
    pub orbit_cap: Option<u128>,
}

#[derive(Debug, Args, Clone, Default)]
pub struct FamilyArgs {
    /// Direction family tag (G, Method1, Method2, Minus2, ThmE, T1, T2, T2prime, T3, Tn, Thm41, Thm44).
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Perturbation `p/q`; defaults to 1/(n+1).
    #[arg(long)]
    pub delta: Option<String>,
    #[arg(long)]
    pub eta: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a body: generators, symmetry, vertex count.
    BodyShow {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print m_B, dist to the cube, theta and eta.
    BodyInvariants {
        #[command(flatten)]
        body: BodyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a direction family; with --body, also check that it covers the body.
    SetsEmit {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        body: Option<String>,
        #[arg(long)]
        orbit_cap: Option<u128>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether `d` illuminates the boundary point `x`.
    CheckIlluminate {
        #[command(flatten)]
        body: BodyArgs,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Combinatorial deep illumination of `x` by `d`.
    CheckDeep {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Exact minimum number of pool directions covering the body's vertices.
    CoverMin {
        #[command(flatten)]
        body: BodyArgs,
        /// Pool family; the default pool is {-1,0,1}^n without 0.
        #[command(flatten)]
        family: FamilyArgs,
        /// Branch-and-bound node budget.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one registered claim and write a report.
    VerifyPaper {
        #[arg(long)]
        claim: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        delta: Option<String>,
        /// Body for the per-body checks; a seeded random body otherwise.
        #[arg(long)]
        body: Option<String>,
        #[arg(long)]
        orbit_cap: Option<u128>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall time (the report is no longer byte-stable).
        #[arg(long)]
        timing: bool,
        /// Omit the certificate list from the report.
        #[arg(long)]
        no_certificates: bool,
    },
    /// Run the acceptance suite, one line per criterion.
    Selftest {
        /// A group (counterexamples, sets, theorems, body, illum), an id or a number.
        #[arg(long)]
        filter: Option<String>,
        /// Negative control: run the perturbed-basis property with delta = 1/(n-1).
        #[arg(long)]
        wrong_delta: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // A pool may already exist when called repeatedly in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::OrbitTooLarge { .. } | Error::ResourceLimit { .. } => EXIT_LIMIT,
        Error::Lp(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

/// A body from a file path, or by name when no such file exists.
pub fn load_body(spec: &str, orbit_cap: Option<u128>) -> Result<(String, SymmetricBody)> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        let body = BodyFile::parse(&text)?.build(orbit_cap)?;
        return Ok((spec.to_string(), body));
    }
    let named = NamedBody::parse(spec)?;
    let body = match orbit_cap {
        Some(cap) if cap != DEFAULT_ORBIT_CAP => BodyFile::from_body(&named.body).build(Some(cap))?,
        _ => named.body,
    };
    Ok((named.id.to_string(), body))
}

fn envelope(command: &str, parameters: Value, payload: Value) -> Value {
    let mut out = json!({
        "tool": "illum",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "parameters": parameters,
    });
    if let (Value::Object(o), Value::Object(p)) = (&mut out, payload) {
        o.extend(p);
    }
    out
}

fn emit(value: &Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("reports serialize") + "\n";
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn scalar_opt(text: &Option<String>) -> Result<Option<Scalar>> {
    text.as_deref().map(parse_scalar).transpose()
}

fn family_params(args: &FamilyArgs, default_n: Option<usize>) -> Result<FamilyParams> {
    let n = args
        .n
        .or(default_n)
        .ok_or_else(|| Error::InvalidParameter("--n is required".into()))?;
    Ok(FamilyParams {
        n,
        delta: scalar_opt(&args.delta)?,
        eta: scalar_opt(&args.eta)?,
        seed: args.seed,
        budget: None,
    })
}

fn family_echo(tag: &str, p: &FamilyParams) -> Value {
    json!({
        "family": tag,
        "n": p.n,
        "delta": p.delta.as_ref().map(format_scalar),
        "eta": p.eta.as_ref().map(format_scalar),
        "seed": p.seed,
    })
}

fn set_json(set: &DirectionSet) -> Value {
    json!({
        "id": set.id,
        "size": set.len(),
        "directions": set.vectors(),
    })
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::BodyShow { body, out } => {
            let (label, b) = load_body(&body.body, body.orbit_cap)?;
            let file = BodyFile::from_body(&b);
            let mut payload = json!({
                "body": serde_json::to_value(&file).expect("body files serialize"),
                "representatives": b.representatives(),
                "orbit_points": b.orbit_point_count().to_string(),
            });
            if !b.symbolic_only() {
                payload["vertices"] = json!(b.vertices()?.len());
            }
            emit(&envelope("body-show", json!({ "body": label }), payload), out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::BodyInvariants { body, out } => {
            let (label, b) = load_body(&body.body, body.orbit_cap)?;
            let inv = b.invariants()?;
            let payload = json!({
                "normalized": b.is_normalized()?,
                "m_b": inv.m_b,
                "dist_to_cube": format_scalar(&inv.dist_to_cube),
                "theta": format_scalar(&inv.theta),
                "eta": format_scalar(&inv.eta),
            });
            emit(&envelope("body-invariants", json!({ "body": label }), payload), out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::SetsEmit {
            family: fam,
            body,
            orbit_cap,
            out,
        } => {
            let tag_text = fam
                .family
                .clone()
                .ok_or_else(|| Error::InvalidParameter("--family is required".into()))?;
            let tag = FamilyTag::parse(&tag_text)?;
            let loaded = body.as_deref().map(|s| load_body(s, orbit_cap)).transpose()?;
            let params = family_params(&fam, loaded.as_ref().map(|(_, b)| b.dim()))?;
            let set = family(tag, &params)?;
            let mut echo = family_echo(tag.name(), &params);
            let mut payload = json!({ "set": set_json(&set) });
            let mut code = EXIT_OK;
            if let Some((label, b)) = loaded {
                echo["body"] = json!(label);
                let report = verify_set(&b, &set)?;
                if !report.covers() {
                    code = EXIT_FAILED;
                }
                payload["cover"] = serde_json::to_value(&report).expect("reports serialize");
            }
            emit(&envelope("sets-emit", echo, payload), out.as_deref())?;
            Ok(code)
        }
        Command::CheckIlluminate { body, x, d, out } => {
            let (label, b) = load_body(&body.body, body.orbit_cap)?;
            let x = Vector::parse(&x)?;
            let d = Vector::parse(&d)?;
            let (ok, cert) = illuminates(&b, &x, &d)?;
            let payload = json!({
                "illuminates": ok,
                "certificate": cert.to_record(&x, &d),
            });
            let echo = json!({ "body": label, "x": x.to_strings(), "d": d.to_strings() });
            emit(&envelope("check-illuminate", echo, payload), out.as_deref())?;
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::CheckDeep { x, d } => {
            let x = Vector::parse(&x)?;
            let d = Vector::parse(&d)?;
            if x.dim() != d.dim() {
                return Err(Error::DimensionMismatch(format!(
                    "x has {} coordinates, d has {}",
                    x.dim(),
                    d.dim()
                )));
            }
            let ok = deep_illuminates(&d, &x);
            let echo = json!({ "x": x.to_strings(), "d": d.to_strings() });
            emit(&envelope("check-deep", echo, json!({ "deep_illuminates": ok })), None)?;
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::CoverMin {
            body,
            family: fam,
            budget,
            out,
        } => {
            let (label, b) = load_body(&body.body, body.orbit_cap)?;
            let (pool, mut echo) = match &fam.family {
                Some(tag_text) => {
                    let tag = FamilyTag::parse(tag_text)?;
                    let params = family_params(&fam, Some(b.dim()))?;
                    (family(tag, &params)?, family_echo(tag.name(), &params))
                }
                None => (sign_pool(b.dim()), json!({ "family": "signs", "n": b.dim() })),
            };
            let budget = budget.unwrap_or(DEFAULT_NODE_BUDGET);
            echo["body"] = json!(label);
            echo["budget"] = json!(budget);
            // A pool that cannot cover has no minimum; report why instead.
            let full = verify_set(&b, &pool)?;
            if !full.covers() {
                let payload = json!({ "cover": serde_json::to_value(&full).expect("reports serialize") });
                emit(&envelope("cover-min", echo, payload), out.as_deref())?;
                return Ok(EXIT_FAILED);
            }
            let best = min_cover_with_budget(&b, &pool, budget)?;
            let payload = json!({ "min_cover": best });
            emit(&envelope("cover-min", echo, payload), out.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::VerifyPaper {
            claim,
            n,
            seed,
            delta,
            body,
            orbit_cap,
            out,
            timing,
            no_certificates,
        } => {
            let params = ClaimParams {
                n,
                seed,
                delta: scalar_opt(&delta)?,
                body: body.as_deref().map(|s| load_body(s, orbit_cap)).transpose()?,
            };
            let start = Instant::now();
            let run = run_claim(&claim, &params)?;
            let elapsed = start.elapsed();
            let mut result = serde_json::to_value(&run.result).expect("claims serialize");
            if no_certificates {
                if let Value::Object(o) = &mut result {
                    o.remove("certificates");
                }
            }
            let mut payload = json!({ "result": result });
            if timing {
                payload["wall_time_ms"] = json!(elapsed.as_millis() as u64);
            }
            let mut echo = run.parameters.clone();
            echo["claim"] = json!(claim);
            emit(&envelope("verify-paper", echo, payload), out.as_deref())?;
            if out.is_some() {
                eprintln!("{claim}: {}", verdict_word(&run.result.verdict));
            }
            Ok(match run.result.verdict {
                ClaimVerdict::Confirmed => EXIT_OK,
                _ => EXIT_FAILED,
            })
        }
        Command::Selftest { filter, wrong_delta } => {
            let suite = Suite::with_wrong_delta(wrong_delta);
            let mut outcomes = run_criteria(&suite, filter.as_deref());
            if crate::scenarios::acceptance::matches(&LEMMA32_PROPERTY, filter.as_deref()) {
                outcomes.push(suite.run(&LEMMA32_PROPERTY));
            }
            let mut failed = 0;
            for o in &outcomes {
                println!("{}", o.line());
                failed += usize::from(!o.passed);
            }
            println!("selftest: {} passed, {failed} failed", outcomes.len() - failed);
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

fn verdict_word(v: &ClaimVerdict) -> String {
    match v {
        ClaimVerdict::Confirmed => "confirmed".into(),
        ClaimVerdict::Refuted => "refuted".into(),
        ClaimVerdict::Skipped { reason } => format!("skipped ({reason})"),
    }
}
