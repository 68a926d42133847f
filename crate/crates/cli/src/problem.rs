//! Problem files: JSON schema, parsing and validation.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use polarmac_core::cycles::{eta_from_alpha, Basis, ConstructibleData, LinkMatrix, StratifiedSpace, Stratum};
use polarmac_core::degrees::{DEFAULT_RESAMPLES, DEFAULT_SEED};
use polarmac_core::{parse_polynomial, Field, FieldSpec, Ideal, PolyRing, DEFAULT_PRIME};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FieldJson {
    Gfp { p: u64 },
    Rational,
}

impl From<FieldJson> for FieldSpec {
    fn from(f: FieldJson) -> Self {
        match f {
            FieldJson::Gfp { p } => FieldSpec::PrimeField(p),
            FieldJson::Rational => FieldSpec::Rational,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumJson {
    pub name: String,
    pub closure: Vec<String>,
    pub dim: usize,
}

/// Pinned values checked by `check`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<BTreeMap<String, Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eu: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eulerfn: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_alpha: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resamples: Option<usize>,
    pub strata: Vec<StratumJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub links: Option<BTreeMap<String, BTreeMap<String, i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("problem file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn field_spec(&self) -> FieldSpec {
        self.field
            .clone()
            .map_or(FieldSpec::PrimeField(DEFAULT_PRIME), FieldSpec::from)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn resamples(&self) -> usize {
        self.resamples.unwrap_or(DEFAULT_RESAMPLES)
    }
}

/// A validated problem over a concrete field.
#[derive(Debug, Clone)]
pub struct Problem<F: Field> {
    pub file: ProblemFile,
    pub ring: Arc<PolyRing<F>>,
    pub space: StratifiedSpace<F>,
    /// Present when the file has links or the space needs none.
    pub links: Option<LinkMatrix>,
    /// The constructible function, converted to the η basis.
    pub eta: Option<ConstructibleData>,
    pub alpha: Option<ConstructibleData>,
}

/// Parses every polynomial, checks declared dimensions and the order,
/// and converts the constructible function to normal Morse indices.
pub fn load_problem<F: Field>(file: &ProblemFile, field: F) -> Result<Problem<F>, CliError> {
    let ring = PolyRing::new(file.variables.clone(), field)?;
    let mut strata = Vec::with_capacity(file.strata.len());
    for s in &file.strata {
        let gens = s
            .closure
            .iter()
            .map(|text| {
                parse_polynomial(text, &ring)
                    .map_err(|e| CliError::Input(format!("stratum `{}`, polynomial \"{text}\": {e}", s.name)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        strata.push(Stratum::new(s.name.clone(), Ideal::new(&ring, gens)?, s.dim));
    }
    let space = StratifiedSpace::new(&ring, strata, file.order.as_deref())?;
    let has_pairs = !space.order_pairs().is_empty();
    let links = match &file.links {
        Some(named) => Some(LinkMatrix::from_named(&space, named)?),
        None if !has_pairs => Some(LinkMatrix::new()),
        None => None,
    };
    let (alpha, eta) = match (&file.alpha, &file.eta) {
        (Some(_), Some(_)) => {
            return Err(CliError::Input("give either alpha or eta, not both".into()));
        }
        (Some(a), None) => {
            let alpha = ConstructibleData::from_named(&space, Basis::Alpha, a)?;
            let links = links.clone().unwrap_or_default();
            links.require_complete(&space)?;
            let eta = eta_from_alpha(&space, &alpha, &links)?;
            (Some(alpha), Some(eta))
        }
        (None, Some(e)) => (None, Some(ConstructibleData::from_named(&space, Basis::Eta, e)?)),
        (None, None) => (None, None),
    };
    Ok(Problem {
        file: file.clone(),
        ring,
        space,
        links,
        eta,
        alpha,
    })
}
