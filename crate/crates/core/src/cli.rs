//! Job documents in, result documents out.
//!
//! A job is a single JSON object; the result is a single JSON line. All
//! half-integers travel as strings (`"3/2"`), never as floats. Exit codes:
//! `0` success, `2` malformed or invalid input, `1` internal-consistency failure.

use serde::{Deserialize, Serialize};

use crate::context::GroupContext;
use crate::decompose::{
    decompose, multiplicity_discrete, multiplicity_principal, spectrum_report, Contribution, Pi1Descriptor,
    SpectrumReport, TensorDecomposition,
};
use crate::error::Error;
use crate::halfint::HalfInt;
use crate::limits::Limits;
use crate::restriction::{Pi2Descriptor, Sign};
use crate::spectrum::DensityVariant;
use crate::weight::WeightVector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

pub const DEFAULT_T_GRID: [f64; 4] = [0.5, 1.0, 2.0, 4.0];

fn default_cutoff() -> HalfInt {
    HalfInt::from_int(5)
}

fn default_t_grid() -> Vec<f64> {
    DEFAULT_T_GRID.to_vec()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Decompose,
    MultDiscrete,
    MultPrincipal,
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pi1Spec {
    pub sigma: WeightVector,
    pub t: f64,
}

/// The constituent asked about by `mult-discrete` / `mult-principal`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<WeightVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<WeightVector>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub m: u32,
    pub pi1: Pi1Spec,
    pub pi2: Pi2Descriptor,
    pub command: Command,
    #[serde(default = "default_cutoff")]
    pub cutoff: HalfInt,
    #[serde(default = "default_t_grid")]
    pub t_grid: Vec<f64>,
    #[serde(default)]
    pub density_variant: DensityVariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QuerySpec>,
}

/// `JobSpec` with `pi2` left raw. Tagged enums buffer their content, which
/// would lose the field path of errors inside `pi2`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    m: u32,
    pi1: Pi1Spec,
    pi2: serde_json::Value,
    command: Command,
    #[serde(default = "default_cutoff")]
    cutoff: HalfInt,
    #[serde(default = "default_t_grid")]
    t_grid: Vec<f64>,
    #[serde(default)]
    density_variant: DensityVariant,
    #[serde(default)]
    query: Option<QuerySpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrincipalSpec {
    mu: WeightVector,
    t: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiscreteSpec {
    sign: Sign,
    a: WeightVector,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplementarySpec {
    mu: WeightVector,
    a: f64,
}

fn describe<E: std::fmt::Display>(prefix: &str, e: serde_path_to_error::Error<E>) -> String {
    let path = e.path().to_string();
    match (prefix, path.as_str()) {
        ("", ".") => format!("parse error: {}", e.inner()),
        ("", p) => format!("parse error at {p}: {}", e.inner()),
        (pre, ".") => format!("parse error at {pre}: {}", e.inner()),
        (pre, p) => format!("parse error at {pre}.{p}: {}", e.inner()),
    }
}

fn from_value<T: serde::de::DeserializeOwned>(prefix: &str, v: serde_json::Value) -> Result<T, String> {
    serde_path_to_error::deserialize(v).map_err(|e| describe(prefix, e))
}

fn parse_pi2(mut v: serde_json::Value) -> Result<Pi2Descriptor, String> {
    let kind = match v.as_object_mut().map(|o| o.remove("kind")) {
        None => return Err("parse error at pi2: expected an object".to_string()),
        Some(None) => return Err("parse error at pi2: missing field `kind`".to_string()),
        Some(Some(serde_json::Value::String(k))) => k,
        Some(Some(_)) => return Err("parse error at pi2.kind: expected a string".to_string()),
    };
    Ok(match kind.as_str() {
        "principal" => {
            let p: PrincipalSpec = from_value("pi2", v)?;
            Pi2Descriptor::Principal { mu: p.mu, t: p.t }
        }
        "discrete" => {
            let d: DiscreteSpec = from_value("pi2", v)?;
            Pi2Descriptor::Discrete { sign: d.sign, a: d.a }
        }
        "complementary" => {
            let c: ComplementarySpec = from_value("pi2", v)?;
            Pi2Descriptor::Complementary { mu: c.mu, a: c.a }
        }
        other => {
            return Err(format!(
                "parse error at pi2.kind: unknown variant `{other}`, expected one of `principal`, `discrete`, `complementary`"
            ))
        }
    })
}

impl JobSpec {
    /// Parses a job, naming the offending field on failure.
    pub fn parse(text: &str) -> Result<JobSpec, String> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawJob = serde_path_to_error::deserialize(de).map_err(|e| describe("", e))?;
        Ok(JobSpec {
            m: raw.m,
            pi1: raw.pi1,
            pi2: parse_pi2(raw.pi2)?,
            command: raw.command,
            cutoff: raw.cutoff,
            t_grid: raw.t_grid,
            density_variant: raw.density_variant,
            query: raw.query,
        })
    }
}

/// Command-line values that take precedence over the job document.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub cutoff: Option<HalfInt>,
    pub t_grid: Option<Vec<f64>>,
    pub density_variant: Option<DensityVariant>,
    pub max_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextEcho {
    pub m: u32,
    pub group: String,
    pub n: u32,
    pub even_spin: bool,
    pub rs_m: String,
    pub rs_mprime: String,
}

impl From<&GroupContext> for ContextEcho {
    fn from(ctx: &GroupContext) -> Self {
        ContextEcho {
            m: ctx.m,
            group: ctx.group_name(),
            n: ctx.n,
            even_spin: ctx.even_spin,
            rs_m: ctx.rs_m.to_string(),
            rs_mprime: ctx.rs_mprime.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Pi1Echo {
    pub sigma: WeightVector,
    pub t: f64,
    pub note: String,
}

pub const PI1_T_NOTE: &str = "the continuous parameter t of pi1 does not enter the decomposition";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub delta: WeightVector,
    pub multiplicity: u64,
    pub provenance: Vec<Contribution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCheck {
    pub blocks: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Answer {
    pub query: QuerySpec,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub status: String,
    pub command: Command,
    pub context: ContextEcho,
    pub pi1: Pi1Echo,
    pub pi2: Pi2Descriptor,
    pub tau: Vec<WeightVector>,
    pub branching: Vec<WeightVector>,
    pub blocks: Vec<BlockEntry>,
    pub dimension_check: DimensionCheck,
    pub max_multiplicity: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub answer: Option<Answer>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<SpectrumReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDocument {
    pub status: String,
    pub violations: Vec<String>,
}

/// Exit code plus the serialized output line (newline-terminated).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

impl Outcome {
    fn failure(exit_code: i32, status: &str, violations: Vec<String>) -> Self {
        let doc = FailureDocument {
            status: status.to_string(),
            violations,
        };
        Outcome {
            exit_code,
            output: serde_json::to_string(&doc).expect("failure document serializes") + "\n",
        }
    }

    fn from_error(err: Error) -> Self {
        match err {
            Error::Invalid(v) => Outcome::failure(EXIT_INVALID, "invalid", v),
            Error::Domain(msg) | Error::Resource(msg) => Outcome::failure(EXIT_INVALID, "invalid", vec![msg]),
            Error::Internal(msg) => Outcome::failure(EXIT_INTERNAL, "internal-error", vec![msg]),
        }
    }
}

/// Blocks section of a result document, in `δ` order.
pub fn block_entries(dec: &TensorDecomposition) -> Vec<BlockEntry> {
    dec.blocks
        .iter()
        .map(|(delta, n)| BlockEntry {
            delta: delta.clone(),
            multiplicity: *n,
            provenance: dec.provenance.get(delta).cloned().unwrap_or_default(),
        })
        .collect()
}

/// Validates the job's group and representations and decomposes, whatever the command.
pub fn decompose_job(job: &JobSpec, overrides: &Overrides) -> Result<TensorDecomposition, Error> {
    let ctx = GroupContext::new(job.m).map_err(|e| Error::Invalid(vec![e.to_string()]))?;
    let limits = Limits {
        max_rank: overrides.max_rank.unwrap_or(crate::limits::DEFAULT_MAX_RANK),
        ..Limits::default()
    };
    let pi1 = Pi1Descriptor::new(&ctx, job.pi1.sigma.clone(), job.pi1.t)?;
    decompose(&ctx, &pi1, &job.pi2, &limits)
}

fn execute(job: &JobSpec, overrides: &Overrides) -> Result<ResultDocument, Error> {
    let dec = decompose_job(job, overrides)?;
    let ctx = dec.ctx;

    let query = || {
        job.query
            .clone()
            .ok_or_else(|| Error::Invalid(vec!["query: required for this command".to_string()]))
    };
    let answer = match job.command {
        Command::MultDiscrete => {
            let q = query()?;
            let (Some(a), Some(sign)) = (q.a.clone(), q.sign) else {
                return Err(Error::Invalid(vec!["query: mult-discrete needs fields a and sign".to_string()]));
            };
            Some(Answer {
                multiplicity: multiplicity_discrete(&dec, &a, sign)?,
                query: q,
            })
        }
        Command::MultPrincipal => {
            let q = query()?;
            let Some(phi) = q.phi.clone() else {
                return Err(Error::Invalid(vec!["query: mult-principal needs field phi".to_string()]));
            };
            Some(Answer {
                multiplicity: multiplicity_principal(&dec, &phi)?,
                query: q,
            })
        }
        _ => None,
    };
    let report = if job.command == Command::Report {
        let cutoff = overrides.cutoff.unwrap_or(job.cutoff);
        let grid = overrides.t_grid.as_deref().unwrap_or(&job.t_grid);
        let variant = overrides.density_variant.unwrap_or(job.density_variant);
        Some(spectrum_report(&dec, cutoff, grid, variant)?)
    } else {
        None
    };

    let to_u64 = |x: u128| u64::try_from(x).map_err(|_| Error::Resource(format!("dimension {x} overflows u64")));
    Ok(ResultDocument {
        status: "ok".to_string(),
        command: job.command,
        context: ContextEcho::from(&ctx),
        pi1: Pi1Echo {
            sigma: job.pi1.sigma.clone(),
            t: job.pi1.t,
            note: PI1_T_NOTE.to_string(),
        },
        pi2: job.pi2.clone(),
        tau: dec.taus.iter().map(|l| l.highest_weight().clone()).collect(),
        branching: dec.branching.iter().map(|l| l.highest_weight().clone()).collect(),
        blocks: block_entries(&dec),
        dimension_check: DimensionCheck {
            blocks: to_u64(dec.block_dimension())?,
            expected: to_u64(dec.expected_dimension())?,
        },
        max_multiplicity: dec.max_multiplicity(),
        answer,
        report,
    })
}

/// Runs one job given as JSON text.
pub fn run_job_str(text: &str, overrides: &Overrides) -> Outcome {
    match JobSpec::parse(text) {
        Ok(job) => run_job(&job, overrides),
        Err(msg) => Outcome::failure(EXIT_INVALID, "invalid", vec![msg]),
    }
}

pub fn run_job(job: &JobSpec, overrides: &Overrides) -> Outcome {
    match execute(job, overrides) {
        Ok(doc) => Outcome {
            exit_code: EXIT_OK,
            output: serde_json::to_string(&doc).expect("result document serializes") + "\n",
        },
        Err(e) => Outcome::from_error(e),
    }
}
