//! Polar degrees `γ_k` by generic slicing, with a resampling protocol that
//! detects non-generic draws, and the global Euler obstruction.
//!
//! `γ_k` is the number of points of `P_k(X, ω) ∩ {ω_1 = t_1, ..., ω_k = t_k}`
//! for general `ω` and `t`. A single draw can land in the bad locus, so
//! every level is computed from several independently seeded draws that
//! must agree.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geom::{derive_seed, dimension_and_degree, point_counts, FormSampler};
use crate::ideal::Ideal;
use crate::polar::{PolarContext, PolarIdeal, Purity};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_RESAMPLES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileConfig {
    pub seed: u64,
    /// Independent draws per level; at least 2.
    pub resamples: usize,
    pub parallel: bool,
}

impl Default for ProfileConfig {
    fn default() -> Self {
        ProfileConfig {
            seed: DEFAULT_SEED,
            resamples: DEFAULT_RESAMPLES,
            parallel: true,
        }
    }
}

/// Why a draw was or was not accepted as generic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawStatus {
    Generic,
    /// `P_k` has the wrong dimension.
    ImpurePolar { dimension: i64 },
    /// The slice of `P_k` still has positive dimension.
    SliceNotZeroDimensional { dimension: i64 },
    /// `P_k` is nonempty but the slice misses it: the projection was not
    /// finite for these forms.
    EmptySlice,
    /// Fiber points carry multiplicity; generic fibers are reduced.
    NonReduced { multiplicity: usize, distinct: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawRecord {
    pub draw: u64,
    pub seed: u64,
    pub status: DrawStatus,
    /// Distinct fiber points; set only for generic draws.
    pub count: Option<usize>,
}

impl DrawRecord {
    pub fn is_generic(&self) -> bool {
        self.status == DrawStatus::Generic
    }
}

/// One level `k` of a profile.
#[derive(Debug, Clone)]
pub struct LevelDiagnostics<F: Field> {
    pub k: usize,
    pub gamma: u64,
    /// All draws of the first batch were generic and agreed.
    pub agreed_first_batch: bool,
    pub draws: Vec<DrawRecord>,
    /// Polar ideal of the first accepted draw.
    pub polar: PolarIdeal<F>,
}

#[derive(Debug, Clone)]
pub struct PolarProfile<F: Field> {
    pub n: usize,
    /// Degree of `V(I)` from its Hilbert series.
    pub degree: u64,
    /// `[γ_0, ..., γ_n]`.
    pub gamma: Vec<u64>,
    pub levels: Vec<LevelDiagnostics<F>>,
}

impl<F: Field> PolarProfile<F> {
    /// `γ_k`, zero above the dimension.
    pub fn gamma(&self, k: usize) -> u64 {
        self.gamma.get(k).copied().unwrap_or(0)
    }

    /// `Σ (-1)^(n-k) γ_k`.
    pub fn euler_obstruction(&self) -> i64 {
        alternating_sum(&self.gamma, self.n)
    }
}

fn alternating_sum(gamma: &[u64], n: usize) -> i64 {
    gamma
        .iter()
        .enumerate()
        .map(|(k, &g)| if (n - k).is_multiple_of(2) { g as i64 } else { -(g as i64) })
        .sum()
}

/// One draw at level `k`: forms seeded by `(seed, k, draw)`, so the same
/// draw index gives the same coordinates for every variety in a run.
pub fn polar_degree<F: Field>(ctx: &PolarContext<F>, k: usize, seed: u64, draw: u64) -> Result<(DrawRecord, PolarIdeal<F>)> {
    let n = ctx.dim();
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, limit: n + 1 });
    }
    let ring = ctx.ideal().ring();
    let draw_seed = derive_seed(seed, &[k as u64, draw]);
    let forms = FormSampler::new(draw_seed).sample(ring.field(), ring.nvars(), k + 1, true);
    let polar = ctx.polar_ideal(&forms)?;
    let record = |status, count| DrawRecord {
        draw,
        seed: draw_seed,
        status,
        count,
    };
    match polar.purity {
        Purity::Failed { dimension } => {
            return Ok((record(DrawStatus::ImpurePolar { dimension }, None), polar));
        }
        Purity::Empty => return Ok((record(DrawStatus::Generic, Some(0)), polar)),
        Purity::Pure => {}
    }
    let slice_eqs: Vec<_> = forms[..k].iter().map(|f| f.affine(ring)).collect();
    let slice = polar.ideal.with_generators(&slice_eqs)?;
    let dd = dimension_and_degree(&slice);
    if dd.is_empty() {
        return Ok((record(DrawStatus::EmptySlice, None), polar));
    }
    if dd.dimension > 0 {
        let status = DrawStatus::SliceNotZeroDimensional {
            dimension: dd.dimension,
        };
        return Ok((record(status, None), polar));
    }
    let (distinct, multiplicity) = point_counts(&slice)?;
    if distinct != multiplicity {
        let status = DrawStatus::NonReduced { multiplicity, distinct };
        return Ok((record(status, None), polar));
    }
    Ok((record(DrawStatus::Generic, Some(distinct)), polar))
}

type Draw<F> = (DrawRecord, PolarIdeal<F>);

fn run_batch<F: Field>(ctx: &PolarContext<F>, jobs: &[(usize, u64)], cfg: &ProfileConfig) -> Result<Vec<Draw<F>>> {
    let one = |&(k, d): &(usize, u64)| polar_degree(ctx, k, cfg.seed, d);
    if cfg.parallel {
        jobs.par_iter().map(one).collect()
    } else {
        jobs.iter().map(one).collect()
    }
}

/// The common count when every draw is generic and all agree.
fn agreed(draws: &[Draw<impl Field>]) -> Option<usize> {
    let first = draws.first()?.0.count?;
    draws
        .iter()
        .all(|(r, _)| r.is_generic() && r.count == Some(first))
        .then_some(first)
}

fn describe(k: usize, draws: &[DrawRecord]) -> String {
    let parts: Vec<String> = draws
        .iter()
        .map(|r| match (r.status, r.count) {
            (DrawStatus::Generic, Some(c)) => format!("draw {}: {c} points", r.draw),
            (s, _) => format!("draw {}: {s:?}", r.draw),
        })
        .collect();
    format!(
        "k = {k}: {}; the input may be non-reduced or the prime bad, re-run over the rationals",
        parts.join(", ")
    )
}

/// `[γ_0, ..., γ_n]` of the pure `n`-dimensional `V(I)`. Each level takes
/// `R` draws; if any is non-generic or they disagree, `R` more are taken
/// and the level is accepted only if that batch is generic and unanimous.
pub fn polar_profile<F: Field>(ideal: &Ideal<F>, n: usize, cfg: &ProfileConfig) -> Result<PolarProfile<F>> {
    if cfg.resamples < 2 {
        return Err(Error::invalid("at least 2 resamples are required"));
    }
    let dd = dimension_and_degree(ideal);
    if dd.is_empty() {
        return Err(Error::invalid("the ideal is the unit ideal (empty variety)"));
    }
    if dd.dimension != n as i64 {
        return Err(Error::DimensionMismatch {
            what: "variety".into(),
            declared: n as i64,
            computed: dd.dimension,
        });
    }
    let ctx = PolarContext::new(ideal, n)?;
    let r = cfg.resamples as u64;
    let first: Vec<(usize, u64)> = (0..=n).flat_map(|k| (0..r).map(move |d| (k, d))).collect();
    let mut results = run_batch(&ctx, &first, cfg)?;

    let mut levels = Vec::with_capacity(n + 1);
    for k in (0..=n).rev() {
        let batch: Vec<Draw<F>> = results.split_off(k * cfg.resamples);
        let (gamma, ok_first, draws, polar) = match agreed(&batch) {
            Some(g) => {
                let polar = batch[0].1.clone();
                (g, true, batch.into_iter().map(|d| d.0).collect::<Vec<_>>(), polar)
            }
            None => {
                let extra: Vec<(usize, u64)> = (r..2 * r).map(|d| (k, d)).collect();
                let second = run_batch(&ctx, &extra, cfg)?;
                let mut records: Vec<DrawRecord> = batch.iter().map(|d| d.0.clone()).collect();
                records.extend(second.iter().map(|d| d.0.clone()));
                match agreed(&second) {
                    Some(g) => (g, false, records, second[0].1.clone()),
                    None => return Err(Error::NonGeneric(describe(k, &records))),
                }
            }
        };
        levels.push(LevelDiagnostics {
            k,
            gamma: gamma as u64,
            agreed_first_batch: ok_first,
            draws,
            polar,
        });
    }
    levels.reverse();
    Ok(PolarProfile {
        n,
        degree: dd.degree.expect("nonempty variety has a degree"),
        gamma: levels.iter().map(|l| l.gamma).collect(),
        levels,
    })
}

/// `Eu(X) = Σ (-1)^(n-k) γ_k(X)`.
pub fn global_euler_obstruction<F: Field>(ideal: &Ideal<F>, n: usize, cfg: &ProfileConfig) -> Result<i64> {
    Ok(polar_profile(ideal, n, cfg)?.euler_obstruction())
}
