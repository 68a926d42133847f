//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use polarmac_core::{FieldSpec, DEFAULT_PRIME};

use crate::commands::{Command, Settings};

#[derive(Debug, Parser)]
#[command(name = "polarmac", version, about = "Polar varieties, MacPherson cycles and Euler obstructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Polar degrees of every stratum closure.
    Profile(Common),
    /// Global Euler obstruction of the variety.
    Eu(Common),
    /// Local Euler obstruction along each stratum.
    Eulerfn(Common),
    /// MacPherson cycle of the constructible function.
    Cycle {
        /// Cycle dimension.
        #[arg(short = 'k')]
        k: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Weighted Euler characteristics of generic slices.
    Chi(Common),
    /// Run the property checks and compare pinned values.
    Check(Common),
    /// List the shipped examples, or print one.
    Catalog { name: Option<String> },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Problem file (JSON).
    pub file: PathBuf,
    /// Master seed for the generic forms; overrides the file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Draws per polar level; overrides the file.
    #[arg(long)]
    pub resamples: Option<usize>,
    /// `gfp:P`, `gfp` or `rational`.
    #[arg(long, value_parser = parse_field)]
    pub field: Option<FieldSpec>,
    /// JSON report (the default).
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    /// Indented plain-text report.
    #[arg(long)]
    pub text: bool,
    /// Compute on one thread.
    #[arg(long)]
    pub serial: bool,
}

impl Common {
    pub fn settings(&self) -> Settings {
        Settings {
            field: self.field,
            seed: self.seed,
            resamples: self.resamples,
            serial: self.serial,
        }
    }
}

impl Cmd {
    pub fn split(&self) -> Option<(Command, &Common)> {
        Some(match self {
            Cmd::Profile(c) => (Command::Profile, c),
            Cmd::Eu(c) => (Command::Eu, c),
            Cmd::Eulerfn(c) => (Command::EulerFn, c),
            Cmd::Cycle { k, common } => (Command::Cycle(*k), common),
            Cmd::Chi(c) => (Command::Chi, c),
            Cmd::Check(c) => (Command::Check, c),
            Cmd::Catalog { .. } => return None,
        })
    }
}

pub fn parse_field(s: &str) -> Result<FieldSpec, String> {
    let spec = match s {
        "rational" => FieldSpec::Rational,
        "gfp" => FieldSpec::PrimeField(DEFAULT_PRIME),
        _ => {
            let p = s
                .strip_prefix("gfp:")
                .ok_or_else(|| format!("expected gfp:P or rational, got `{s}`"))?;
            FieldSpec::PrimeField(p.parse().map_err(|e| format!("bad prime `{p}`: {e}"))?)
        }
    };
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}
