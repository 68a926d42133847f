//! Subcommand execution over a concrete field, with bad-prime retries.

use std::collections::BTreeMap;

use polarmac_core::cycles::{
    alpha_from_eta, euler_characteristics_from_degrees, euler_obstruction_of_space, eta_from_alpha,
    generalized_degrees_with, macpherson_cycle_with, Basis, ConstructibleData, LinkMatrix, StratifiedSpace,
};
use polarmac_core::degrees::{polar_profile, PolarProfile, ProfileConfig};
use polarmac_core::geom::{derive_seed, point_counts, FormSampler};
use polarmac_core::{Error, Field, FieldSpec, Ideal, PrimeField, Purity, Rationals, DEFAULT_PRIME, FALLBACK_PRIMES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::problem::{load_problem, Problem, ProblemFile};
use crate::report::{
    CheckResult, CycleReport, CycleTermReport, InputEcho, NamedValue, ProfileReport, Report, ResultReport, RunInfo,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Profile,
    Eu,
    EulerFn,
    Cycle(usize),
    Chi,
    Check,
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Profile => "profile".into(),
            Command::Eu => "eu".into(),
            Command::EulerFn => "eulerfn".into(),
            Command::Cycle(k) => format!("cycle {k}"),
            Command::Chi => "chi".into(),
            Command::Check => "check".into(),
        }
    }
}

/// Command-line overrides of the problem file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings {
    pub field: Option<FieldSpec>,
    pub seed: Option<u64>,
    pub resamples: Option<usize>,
    pub serial: bool,
}

/// Number of random constructible functions in the round-trip check.
const ROUND_TRIPS: usize = 100;
/// Random functions tested in the slicing check, besides the file's own.
const GYSIN_SAMPLES: usize = 3;
/// Seed path tag separating slice forms from polar forms.
const SLICE_TAG: u64 = u64::MAX;

/// Runs `cmd`; over a prime field a bad prime moves on to the next
/// fallback prime.
pub fn run_command(cmd: Command, file: &ProblemFile, settings: &Settings) -> Result<Report, CliError> {
    let spec = settings.field.unwrap_or_else(|| file.field_spec());
    spec.validate().map_err(|e| CliError::Input(e.to_string()))?;
    let cfg = ProfileConfig {
        seed: settings.seed.unwrap_or_else(|| file.seed()),
        resamples: settings.resamples.unwrap_or_else(|| file.resamples()),
        parallel: !settings.serial,
    };
    match spec {
        FieldSpec::Rational => run_in(cmd, file, Rationals, &cfg, Vec::new()),
        FieldSpec::PrimeField(p) => {
            let mut candidates = vec![p];
            candidates.extend(FALLBACK_PRIMES.iter().copied().filter(|&q| q != p));
            let mut rejected = Vec::new();
            let mut reasons = Vec::new();
            for q in candidates {
                match run_in(cmd, file, PrimeField::new(q)?, &cfg, rejected.clone()) {
                    Err(CliError::Engine(e @ Error::BadPrime { .. })) => {
                        rejected.push(q);
                        reasons.push(e.to_string());
                    }
                    other => return other,
                }
            }
            Err(CliError::PrimesExhausted(reasons.join("; ")))
        }
    }
}

fn run_in<F: Field>(cmd: Command, file: &ProblemFile, field: F, cfg: &ProfileConfig, rejected: Vec<u64>) -> Result<Report, CliError> {
    let problem = load_problem(file, field)?;
    let mut report = Report {
        command: cmd.name(),
        input: InputEcho::new(file, problem.space.order_pairs()),
        run: RunInfo {
            field: problem.ring.field().spec().to_string(),
            seed: cfg.seed,
            resamples: cfg.resamples,
            rejected_primes: rejected,
        },
        profiles: Vec::new(),
        result: ResultReport::default(),
        validation: Vec::new(),
        status: String::new(),
    };
    match cmd {
        Command::Profile => {
            let profiles = problem.space.profiles(cfg)?;
            report.profiles = profile_reports(&problem.space, &profiles);
        }
        Command::Eu => {
            let (name, profile) = top_profile(&problem.space, cfg)?;
            report.result.eu = Some(profile.euler_obstruction());
            report.profiles = vec![ProfileReport::new(&name, &profile)];
        }
        Command::EulerFn => {
            let links = problem.links.clone().unwrap_or_default();
            let eu = euler_obstruction_of_space(&problem.space, &links)?;
            report.result.eulerfn = Some(named(&problem.space, &eu));
        }
        Command::Cycle(k) => {
            let eta = require_eta(&problem)?;
            if k > problem.space.dim() {
                return Err(CliError::Input(format!(
                    "k = {k} exceeds the dimension {}",
                    problem.space.dim()
                )));
            }
            let profiles = problem.space.profiles(cfg)?;
            let cycle = macpherson_cycle_with(&problem.space, &profiles, eta, k)?;
            report.result.cycle = Some(CycleReport {
                k,
                terms: cycle
                    .terms
                    .iter()
                    .map(|t| {
                        let (polar_ideal, empty) = match &t.polar {
                            Some(p) => (p.ideal.basis_strings(), p.purity == Purity::Empty),
                            None => (vec!["1".to_string()], true),
                        };
                        CycleTermReport {
                            stratum: t.stratum.clone(),
                            coefficient: t.coefficient,
                            polar_ideal,
                            empty,
                            gamma: t.gamma,
                        }
                    })
                    .collect(),
                gamma_alpha: cycle.gamma,
            });
            report.profiles = profile_reports(&problem.space, &profiles);
        }
        Command::Chi => {
            let eta = require_eta(&problem)?;
            let profiles = problem.space.profiles(cfg)?;
            let gamma = generalized_degrees_with(&problem.space, &profiles, eta)?;
            let chi = euler_characteristics_from_degrees(&gamma);
            report.result.gamma_alpha = Some(gamma);
            report.result.chi_slices = Some(chi.slices);
            report.result.chi = Some(chi.chi);
            report.profiles = profile_reports(&problem.space, &profiles);
        }
        Command::Check => run_checks(&problem, cfg, &mut report)?,
    }
    report.status = if report.passed() { "ok" } else { "failed" }.into();
    Ok(report)
}

fn require_eta<F: Field>(problem: &Problem<F>) -> Result<&ConstructibleData, CliError> {
    problem
        .eta
        .as_ref()
        .ok_or_else(|| CliError::Input("this command needs alpha or eta values".into()))
}

fn named<F: Field>(space: &StratifiedSpace<F>, data: &ConstructibleData) -> Vec<NamedValue> {
    data.named(space)
        .into_iter()
        .map(|(s, v)| NamedValue { stratum: s, value: v })
        .collect()
}

fn profile_reports<F: Field>(space: &StratifiedSpace<F>, profiles: &[PolarProfile<F>]) -> Vec<ProfileReport> {
    space
        .strata()
        .iter()
        .zip(profiles)
        .map(|(s, p)| ProfileReport::new(&s.name, p))
        .collect()
}

/// Profile of the closure of the union of the top strata.
fn top_profile<F: Field>(space: &StratifiedSpace<F>, cfg: &ProfileConfig) -> Result<(String, PolarProfile<F>), CliError> {
    let top = space.top_strata();
    let names: Vec<&str> = top.iter().map(|&i| space.strata()[i].name.as_str()).collect();
    let mut ideal: Ideal<F> = space.strata()[top[0]].closure.clone();
    for &i in &top[1..] {
        ideal = ideal.intersect(&space.strata()[i].closure)?;
    }
    Ok((names.join("+"), polar_profile(&ideal, space.dim(), cfg)?))
}

fn run_checks<F: Field>(problem: &Problem<F>, cfg: &ProfileConfig, report: &mut Report) -> Result<(), CliError> {
    let space = &problem.space;
    let profiles = space.profiles(cfg)?;
    report.profiles = profile_reports(space, &profiles);
    let checks = &mut report.validation;

    let all_levels = || profiles.iter().flat_map(|p| p.levels.iter());
    let impure: Vec<String> = all_levels()
        .filter(|l| matches!(l.polar.purity, Purity::Failed { .. }))
        .map(|l| format!("k = {}", l.k))
        .collect();
    checks.push(CheckResult::new(
        "purity",
        impure.is_empty(),
        if impure.is_empty() {
            "every accepted polar variety is pure of dimension k or empty".to_string()
        } else {
            format!("impure levels: {}", impure.join(", "))
        },
    ));
    let draws: usize = all_levels().map(|l| l.draws.len()).sum();
    let first = all_levels().all(|l| l.agreed_first_batch);
    checks.push(CheckResult::new(
        "resampling agreement",
        true,
        format!(
            "{draws} draws; {}",
            if first {
                "every first batch was unanimous"
            } else {
                "some levels needed a second batch"
            }
        ),
    ));

    let other = second_field_gammas(&problem.file, problem.ring.field().spec(), cfg)?;
    let mine: Vec<Vec<u64>> = profiles.iter().map(|p| p.gamma.clone()).collect();
    checks.push(CheckResult::new(
        "second prime",
        other.1 == mine,
        format!("{}: {:?}; {}: {:?}", problem.ring.field().spec(), mine, other.0, other.1),
    ));

    let bad_top: Vec<&str> = space
        .strata()
        .iter()
        .zip(&profiles)
        .filter(|(_, p)| p.gamma[p.n] != p.degree)
        .map(|(s, _)| s.name.as_str())
        .collect();
    checks.push(CheckResult::new(
        "top degree",
        bad_top.is_empty(),
        if bad_top.is_empty() {
            "gamma_n equals the degree on every stratum".to_string()
        } else {
            format!("gamma_n differs from the degree on {bad_top:?}")
        },
    ));

    let mut morse_ok = true;
    for p in &profiles {
        let level = &p.levels[0];
        if level.polar.purity == Purity::Pure {
            let (distinct, mult) = point_counts(&level.polar.ideal)?;
            morse_ok &= distinct == mult && distinct as u64 == level.gamma;
        }
    }
    checks.push(CheckResult::new(
        "reduced morse points",
        morse_ok,
        "P_0 is reduced and has gamma_0 points",
    ));

    if space.len() == 1 {
        let s = &space.strata()[0];
        let eta = ConstructibleData::new(Basis::Eta, vec![1]);
        let gamma = generalized_degrees_with(space, &profiles, &eta)?;
        let chi = euler_characteristics_from_degrees(&gamma).chi;
        let eu = profiles[0].euler_obstruction();
        checks.push(CheckResult::new(
            "smooth consistency",
            chi == eu,
            format!("chi(X, 1) = {chi}, Eu({}) = {eu}", s.name),
        ));
    }

    let complete = problem
        .links
        .as_ref()
        .filter(|l| l.require_complete(space).is_ok())
        .cloned();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[SLICE_TAG, 1]));
    let random_alpha =
        |rng: &mut ChaCha8Rng| ConstructibleData::new(Basis::Alpha, (0..space.len()).map(|_| rng.gen_range(-10..=10)).collect());

    let mut eulerfn = None;
    if let Some(links) = &complete {
        let mut ok = true;
        for _ in 0..ROUND_TRIPS {
            let a = random_alpha(&mut rng);
            let e = eta_from_alpha(space, &a, links)?;
            ok &= alpha_from_eta(space, &e, links)? == a;
            let h = ConstructibleData::new(Basis::Eta, a.values.clone());
            ok &= eta_from_alpha(space, &alpha_from_eta(space, &h, links)?, links)? == h;
        }
        checks.push(CheckResult::new(
            "round trip",
            ok,
            format!("{ROUND_TRIPS} random functions in both directions"),
        ));

        let eu_fn = euler_obstruction_of_space(space, links)?;
        let gamma = generalized_degrees_with(space, &profiles, &eta_from_alpha(space, &eu_fn, links)?)?;
        let chi = euler_characteristics_from_degrees(&gamma).chi;
        let (_, top) = top_profile(space, cfg)?;
        let eu = top.euler_obstruction();
        checks.push(CheckResult::new(
            "index formula",
            chi == eu,
            format!("chi(X, Eu_X) = {chi}, Eu(X) = {eu}"),
        ));
        report.result.eu = Some(eu);
        report.result.eulerfn = Some(named(space, &eu_fn));
        eulerfn = Some(eu_fn);

        if space.dim() >= 1 {
            let mut samples: Vec<ConstructibleData> = problem.alpha.iter().cloned().collect();
            samples.extend((0..GYSIN_SAMPLES).map(|_| random_alpha(&mut rng)));
            checks.push(gysin_check(space, links, &profiles, &samples, cfg)?);
        }
    }

    if let Some(eta) = &problem.eta {
        let gamma = generalized_degrees_with(space, &profiles, eta)?;
        let chi = euler_characteristics_from_degrees(&gamma);
        report.result.gamma_alpha = Some(gamma);
        report.result.chi_slices = Some(chi.slices);
        report.result.chi = Some(chi.chi);
    }
    if report.result.eu.is_none() {
        let (_, top) = top_profile(space, cfg)?;
        report.result.eu = Some(top.euler_obstruction());
    }

    if let Some(exp) = &problem.file.expected {
        let mut diffs = Vec::new();
        if let Some(g) = &exp.gamma {
            for (name, want) in g {
                match space.index_of(name) {
                    Some(i) if &profiles[i].gamma == want => {}
                    Some(i) => diffs.push(format!("gamma[{name}] = {:?}, expected {want:?}", profiles[i].gamma)),
                    None => diffs.push(format!("expected gamma for unknown stratum `{name}`")),
                }
            }
        }
        if let Some(want) = exp.eu {
            if report.result.eu != Some(want) {
                diffs.push(format!("eu = {:?}, expected {want}", report.result.eu));
            }
        }
        if let Some(want) = &exp.eulerfn {
            let got: Option<BTreeMap<String, i64>> = eulerfn.as_ref().map(|e| e.named(space).into_iter().collect());
            if got.as_ref() != Some(want) {
                diffs.push(format!("eulerfn = {got:?}, expected {want:?}"));
            }
        }
        if let Some(want) = &exp.gamma_alpha {
            if report.result.gamma_alpha.as_ref() != Some(want) {
                diffs.push(format!("gamma_alpha = {:?}, expected {want:?}", report.result.gamma_alpha));
            }
        }
        if let Some(want) = exp.chi {
            if report.result.chi != Some(want) {
                diffs.push(format!("chi = {:?}, expected {want}", report.result.chi));
            }
        }
        report.validation.push(CheckResult::new(
            "expected values",
            diffs.is_empty(),
            if diffs.is_empty() {
                "all pinned values reproduced".to_string()
            } else {
                diffs.join("; ")
            },
        ));
    }
    Ok(())
}

/// Profiles over a second field: the next fallback prime, or the default
/// prime when running over the rationals.
fn second_field_gammas(file: &ProblemFile, current: FieldSpec, cfg: &ProfileConfig) -> Result<(FieldSpec, Vec<Vec<u64>>), CliError> {
    let p = match current {
        FieldSpec::Rational => DEFAULT_PRIME,
        FieldSpec::PrimeField(p) => FALLBACK_PRIMES
            .iter()
            .copied()
            .find(|&q| q != p)
            .expect("several fallback primes"),
    };
    let problem = load_problem(file, PrimeField::new(p)?)?;
    let profiles = problem.space.profiles(cfg)?;
    Ok((FieldSpec::PrimeField(p), profiles.into_iter().map(|p| p.gamma).collect()))
}

/// `(-1) γ_k(α) = γ_{k-1}(α|X')` for one generic hyperplane section `X'`.
fn gysin_check<F: Field>(
    space: &StratifiedSpace<F>,
    links: &LinkMatrix,
    profiles: &[PolarProfile<F>],
    samples: &[ConstructibleData],
    cfg: &ProfileConfig,
) -> Result<CheckResult, CliError> {
    let ring = space.ring();
    let mut attempt = 0u64;
    let (sliced, kept) = loop {
        let form = FormSampler::new(derive_seed(cfg.seed, &[SLICE_TAG, 2, attempt])).sample(ring.field(), ring.nvars(), 1, true);
        match space.slice(&form[0]) {
            Ok(s) => break s,
            Err(Error::NonGeneric(_)) if attempt + 1 < cfg.resamples as u64 => attempt += 1,
            Err(e) => return Err(e.into()),
        }
    };
    let sliced_links = links.restrict(&kept);
    let sliced_profiles = sliced.profiles(cfg)?;
    let mut failures = Vec::new();
    for a in samples {
        let eta = eta_from_alpha(space, a, links)?;
        let gamma = generalized_degrees_with(space, profiles, &eta)?;
        let sliced_eta = eta_from_alpha(&sliced, &a.restrict(&kept), &sliced_links)?;
        let sliced_gamma = generalized_degrees_with(&sliced, &sliced_profiles, &sliced_eta)?;
        for k in 1..gamma.len() {
            if -gamma[k] != sliced_gamma[k - 1] {
                failures.push(format!("alpha {:?}, k = {k}: {} vs {}", a.values, -gamma[k], sliced_gamma[k - 1]));
            }
        }
    }
    Ok(CheckResult::new(
        "gysin slicing",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{} functions, one hyperplane section", samples.len())
        } else {
            failures.join("; ")
        },
    ))
}
