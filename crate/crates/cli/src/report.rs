//! The JSON report and its canonical serialization.
//!
//! Canonical form: object keys sorted, two-space indentation, every float
//! written as `{:.16e}` (17 significant digits, so it parses back to the
//! same bits), integers as integers, trailing newline. Two runs with the
//! same configuration and no `--timing` produce identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use orbitq::quantize::{CheckReport, DirectionRecord, Tolerance};
use orbitq::rootsys::WeightVec;
use orbitq::OrbitSpec;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub config: RunConfig,
    pub environment: Environment,
    pub checks: Vec<CheckEntry>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Tool {
    pub fn current() -> Self {
        Tool { name: "orbitq".into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    pub dim_cap: u64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    pub level: u32,
    pub dim: usize,
    pub rule: String,
    /// `absolute` or `standard-errors`.
    pub tolerance_kind: String,
    pub tolerance: f64,
    pub max_residual: f64,
    pub pass: bool,
    pub directions: Vec<DirectionEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionEntry {
    pub direction: String,
    pub residual: f64,
    pub reference_norm: f64,
    pub standard_error: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
}

impl From<&DirectionRecord> for DirectionEntry {
    fn from(r: &DirectionRecord) -> Self {
        DirectionEntry {
            direction: r.direction.clone(),
            residual: r.residual,
            reference_norm: r.beta_norm,
            standard_error: r.standard_error,
            threshold: r.threshold,
            pass: r.pass,
        }
    }
}

impl From<&CheckReport> for CheckEntry {
    fn from(r: &CheckReport) -> Self {
        let tolerance_kind = match r.tolerance {
            Tolerance::Absolute(_) => "absolute",
            Tolerance::StandardErrors(_) => "standard-errors",
        };
        CheckEntry {
            check: r.check.clone(),
            level: r.level,
            dim: r.dim,
            rule: r.rule.clone(),
            tolerance_kind: tolerance_kind.into(),
            tolerance: r.tolerance.value(),
            max_residual: r.max_residual,
            pass: r.pass,
            directions: r.records.iter().map(DirectionEntry::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitInfo {
    pub n: usize,
    pub xi: Vec<String>,
    pub real_dim: usize,
    pub stabilizer_roots: Vec<String>,
    pub complementary_roots: Vec<String>,
    pub delta: Vec<String>,
    pub karabegov_shift: Vec<String>,
    pub einstein_lambda: Option<String>,
    pub levels: Vec<LevelInfo>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelInfo {
    pub level: u32,
    pub weight: Vec<String>,
    pub shifted_weight: Vec<String>,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesInfo {
    pub u: String,
    pub v: String,
    pub levels: Vec<u32>,
    pub dims: Vec<usize>,
    pub defects: Vec<f64>,
    pub fitted_slope: Option<f64>,
    pub fitted_constant: Option<f64>,
    pub degenerate: bool,
    pub c1_relative_error: f64,
    pub c1_levels: (u32, u32),
}

pub fn weight_strings(w: &WeightVec) -> Vec<String> {
    w.coords.iter().map(|c| c.to_string()).collect()
}

impl OrbitInfo {
    pub fn new(spec: &OrbitSpec, levels: Vec<LevelInfo>) -> Self {
        OrbitInfo {
            n: spec.rs.n,
            xi: weight_strings(&spec.xi),
            real_dim: spec.real_dim(),
            stabilizer_roots: spec.stabilizer_roots.iter().map(|r| r.to_string()).collect(),
            complementary_roots: spec.complementary_roots.iter().map(|r| r.to_string()).collect(),
            delta: weight_strings(&spec.delta),
            karabegov_shift: weight_strings(&spec.karabegov_shift),
            einstein_lambda: spec.einstein_lambda.map(|l| l.to_string()),
            levels,
        }
    }
}

impl Report {
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report fields are always representable");
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        out.push('\n');
        out
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else {
                out.push_str(&format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("strings always serialize")),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                indent(level + 1, out);
                write_value(item, level + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&serde_json::to_string(key).expect("strings always serialize"));
                out.push_str(": ");
                write_value(&map[*key], level + 1, out);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            indent(level, out);
            out.push('}');
        }
    }
}
