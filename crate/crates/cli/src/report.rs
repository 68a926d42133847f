//! Reports: serializable structs with a fixed field order, and a text
//! rendering derived from their JSON form.

use polarmac_core::degrees::{DrawRecord, DrawStatus, PolarProfile};
use polarmac_core::{Field, Purity};
use serde::Serialize;
use serde_json::Value;

use crate::problem::{ProblemFile, StratumJson};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: InputEcho,
    pub run: RunInfo,
    pub profiles: Vec<ProfileReport>,
    pub result: ResultReport,
    pub validation: Vec<CheckResult>,
    pub status: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.validation.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        render_text(&serde_json::to_value(self).expect("reports serialize"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub variables: Vec<String>,
    pub strata: Vec<StratumJson>,
    pub order: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<NamedValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<NamedValue>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<LinkEntry>,
}

impl InputEcho {
    pub fn new(file: &ProblemFile, order: Vec<(String, String)>) -> Self {
        let named = |m: &Option<std::collections::BTreeMap<String, i64>>| {
            m.as_ref().map(|m| {
                // stratum order, not key order
                file.strata
                    .iter()
                    .filter_map(|s| m.get(&s.name).map(|&v| NamedValue::new(&s.name, v)))
                    .collect()
            })
        };
        let links = file
            .links
            .iter()
            .flatten()
            .flat_map(|(lo, row)| {
                row.iter().map(move |(hi, &v)| LinkEntry {
                    low: lo.clone(),
                    high: hi.clone(),
                    value: v,
                })
            })
            .collect();
        InputEcho {
            variables: file.variables.clone(),
            strata: file.strata.clone(),
            order: order.into_iter().map(|(a, b)| [a, b]).collect(),
            alpha: named(&file.alpha),
            eta: named(&file.eta),
            links,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunInfo {
    /// Field the results were computed in.
    pub field: String,
    pub seed: u64,
    pub resamples: usize,
    /// Primes abandoned as bad before `field` succeeded.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rejected_primes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub stratum: String,
    pub value: i64,
}

impl NamedValue {
    pub fn new(stratum: &str, value: i64) -> Self {
        NamedValue {
            stratum: stratum.to_string(),
            value,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkEntry {
    pub low: String,
    pub high: String,
    pub value: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileReport {
    pub stratum: String,
    pub dim: usize,
    pub degree: u64,
    pub gamma: Vec<u64>,
    pub euler_obstruction: i64,
    pub levels: Vec<LevelReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub k: usize,
    pub gamma: u64,
    pub purity: String,
    pub agreed_first_batch: bool,
    pub draws: Vec<DrawReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DrawReport {
    pub draw: u64,
    pub seed: u64,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

pub fn purity_name(p: Purity) -> String {
    match p {
        Purity::Pure => "pure".into(),
        Purity::Empty => "empty".into(),
        Purity::Failed { dimension } => format!("failed (dimension {dimension})"),
    }
}

fn status_name(s: DrawStatus) -> String {
    match s {
        DrawStatus::Generic => "generic".into(),
        DrawStatus::ImpurePolar { dimension } => format!("impure polar variety (dimension {dimension})"),
        DrawStatus::SliceNotZeroDimensional { dimension } => format!("slice of dimension {dimension}"),
        DrawStatus::EmptySlice => "empty slice".into(),
        DrawStatus::NonReduced { multiplicity, distinct } => {
            format!("non-reduced fiber ({distinct} points, multiplicity {multiplicity})")
        }
    }
}

impl From<&DrawRecord> for DrawReport {
    fn from(r: &DrawRecord) -> Self {
        DrawReport {
            draw: r.draw,
            seed: r.seed,
            status: status_name(r.status),
            count: r.count,
        }
    }
}

impl ProfileReport {
    pub fn new<F: Field>(stratum: &str, p: &PolarProfile<F>) -> Self {
        ProfileReport {
            stratum: stratum.to_string(),
            dim: p.n,
            degree: p.degree,
            gamma: p.gamma.clone(),
            euler_obstruction: p.euler_obstruction(),
            levels: p
                .levels
                .iter()
                .map(|l| LevelReport {
                    k: l.k,
                    gamma: l.gamma,
                    purity: purity_name(l.polar.purity),
                    agreed_first_batch: l.agreed_first_batch,
                    draws: l.draws.iter().map(DrawReport::from).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ResultReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eu: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eulerfn: Option<Vec<NamedValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<CycleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_alpha: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_slices: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleReport {
    pub k: usize,
    pub terms: Vec<CycleTermReport>,
    pub gamma_alpha: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleTermReport {
    pub stratum: String,
    pub coefficient: i64,
    /// Reduced grevlex basis of `P_k(S̄)`; `["1"]` when it is empty.
    pub polar_ideal: Vec<String>,
    pub empty: bool,
    pub gamma: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Indented `key: value` lines; arrays of scalars stay on one line.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(format!(
            "[{}]",
            a.iter().map(|x| scalar(x).expect("scalar")).collect::<Vec<_>>().join(", ")
        )),
        Value::Array(a) if a.iter().all(|x| x.as_array().is_some_and(|i| i.iter().all(|y| !y.is_object() && !y.is_array()))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).expect("row")).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).expect("scalar"))),
    }
}
