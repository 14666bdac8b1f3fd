//! Job files. A job is
//!
//! ```json
//! {"schema_version": 1, "command": "analyze-projection", "field": "Fp:10007",
//!  "seed": 0, "truncation_cap": 64, "params": {...}}
//! ```
//!
//! Unknown fields are rejected at every level.

use serde::Deserialize;
use serde_json::Value;

use curvegap::field::FieldSpec;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ClassifySeries,
    AnalyzeProjection,
    SampleStratum,
    VerifyBounds,
    EnumerateTypes,
    FuzzKeyLemma,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::ClassifySeries,
        Command::AnalyzeProjection,
        Command::SampleStratum,
        Command::VerifyBounds,
        Command::EnumerateTypes,
        Command::FuzzKeyLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::ClassifySeries => "classify-series",
            Command::AnalyzeProjection => "analyze-projection",
            Command::SampleStratum => "sample-stratum",
            Command::VerifyBounds => "verify-bounds",
            Command::EnumerateTypes => "enumerate-types",
            Command::FuzzKeyLemma => "fuzz-key-lemma",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    schema_version: u32,
    command: String,
    #[serde(default)]
    field: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    truncation_cap: Option<usize>,
    #[serde(default)]
    params: Option<Value>,
}

#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub field: FieldSpec,
    pub seed: u64,
    pub truncation_cap: usize,
    pub params: Value,
}

/// Command-line overrides applied on top of the job file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub field: Option<FieldSpec>,
    pub seed: Option<u64>,
    pub truncation_cap: Option<usize>,
}

pub const DEFAULT_FIELD: FieldSpec = FieldSpec::Prime(10007);
pub const DEFAULT_CAP: usize = 64;

impl Job {
    pub fn from_value(v: Value, o: &Overrides) -> Result<Self, CliError> {
        let raw: RawJob = serde_json::from_value(v)?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(CliError::validation(format!(
                "unsupported schema_version {}; expected {SCHEMA_VERSION}",
                raw.schema_version
            )));
        }
        let command = Command::ALL
            .into_iter()
            .find(|c| c.name() == raw.command)
            .ok_or_else(|| CliError::validation(format!("unknown command {:?}", raw.command)))?;
        let field = match (&o.field, &raw.field) {
            (Some(f), _) => f.clone(),
            (None, Some(s)) => s.parse()?,
            (None, None) => DEFAULT_FIELD,
        };
        let truncation_cap = o.truncation_cap.or(raw.truncation_cap).unwrap_or(DEFAULT_CAP);
        if truncation_cap == 0 {
            return Err(CliError::validation("truncation_cap must be positive"));
        }
        Ok(Job {
            command,
            field,
            seed: o.seed.or(raw.seed).unwrap_or(0),
            truncation_cap,
            params: raw.params.unwrap_or_else(|| Value::Object(Default::default())),
        })
    }

    pub fn params<T: for<'de> Deserialize<'de>>(&self) -> Result<T, CliError> {
        serde_json::from_value(self.params.clone())
            .map_err(|e| CliError::validation(format!("params of {}: {e}", self.command.name())))
    }
}

/// A scalar given as a JSON integer or as a string such as `"-3/4"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

/// A series generator: one expression in `t` per branch, or a single
/// expression when there is one branch.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Generator {
    One(String),
    Branches(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifySeries {
    #[serde(default = "one")]
    pub branches: usize,
    pub generators: Vec<Generator>,
    #[serde(default = "yes")]
    pub include_unit: bool,
    /// First truncation order tried.
    #[serde(default)]
    pub truncation: Option<usize>,
}

/// A center `L`, given by spanning vectors (rows or points of `P(L)`) or
/// by a basis of the linear system `M = L^⊥`. Coordinates are in the basis
/// dual to `x^d, x^{d-1} y, ..., y^d`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum CenterInput {
    Rows(Vec<Vec<Scalar>>),
    Points(Vec<Vec<Scalar>>),
    Forms(Vec<Vec<Scalar>>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeProjection {
    pub d: usize,
    pub center: CenterInput,
    #[serde(default = "yes")]
    pub enforce_hypotheses: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleStratum {
    pub d: usize,
    pub n: usize,
    pub types: Vec<String>,
    /// Points per type, e.g. `[["(1:0)"], ["3", "5"]]`; random when absent.
    #[serde(default)]
    pub points: Option<Vec<Vec<String>>>,
    /// Also analyze the sample.
    #[serde(default = "yes")]
    pub verify: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumerateTypes {
    /// Evaluate partitions and codimensions at this `n`.
    #[serde(default)]
    pub n: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzKeyLemma {
    #[serde(default = "two_hundred")]
    pub count: usize,
    #[serde(default = "three")]
    pub max_branches: usize,
    #[serde(default = "four")]
    pub max_delta: usize,
}

fn one() -> usize {
    1
}
fn three() -> usize {
    3
}
fn four() -> usize {
    4
}
fn two_hundred() -> usize {
    200
}
fn yes() -> bool {
    true
}
