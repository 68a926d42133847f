//! The `polarmac` binary: exit codes, loading rules and reproducibility.

use std::path::{Path, PathBuf};
use std::process::Command;

use polarmac_cli::catalog;
use polarmac_cli::{load_problem, CliError, ProblemFile};
use polarmac_core::{Error, PrimeField};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polarmac"))
}

fn catalog_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &TempDir, name: &str, json: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, json).unwrap();
    p.to_string_lossy().into_owned()
}

fn cusp_with(edit: impl FnOnce(&mut serde_json::Value)) -> String {
    let mut v: serde_json::Value = serde_json::from_str(catalog::source("cusp").unwrap()).unwrap();
    edit(&mut v);
    v.to_string()
}

#[test]
fn chi_on_the_cusp() {
    let (code, out, _) = run(&["chi", catalog_path("cusp").to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["chi"], 1);
    assert_eq!(v["result"]["gamma_alpha"], serde_json::json!([-2, -3]));
    assert_eq!(v["status"], "ok");
}

#[test]
fn eu_on_the_nodal_cubic() {
    let (code, out, _) = run(&["eu", catalog_path("nodal").to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["eu"], 1);
}

#[test]
fn cycle_zero_on_the_cusp() {
    let (code, out, _) = run(&["cycle", "-k", "0", catalog_path("cusp").to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let cycle = &v["result"]["cycle"];
    assert_eq!(cycle["gamma_alpha"], -2);
    let terms = cycle["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["coefficient"] == -1 && t["gamma"] == 1));
    assert_eq!(terms[1]["polar_ideal"], serde_json::json!(["y", "x"]));
}

#[test]
fn cycle_above_the_dimension_is_input_error() {
    let (code, _, err) = run(&["cycle", "-k", "2", catalog_path("cusp").to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn text_output() {
    let (code, out, _) = run(&["eulerfn", catalog_path("cusp").to_str().unwrap(), "--text"]);
    assert_eq!(code, 0);
    assert!(out.contains("status: ok"));
    assert!(out.contains("stratum: S0\n") && out.contains("value: 2\n"));
}

#[test]
fn every_catalog_entry_checks() {
    for name in catalog::names() {
        let (code, out, err) = run(&["check", catalog_path(name).to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {err}{out}");
    }
}

#[test]
fn failed_property_exits_5() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "wrong.json", &cusp_with(|v| v["expected"]["chi"] = 7.into()));
    let (code, out, _) = run(&["check", &f]);
    assert_eq!(code, 5);
    assert!(out.contains("\"status\": \"failed\""));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        cusp_with(|v| v["strata"][0]["dim"] = 2.into()),
        cusp_with(|v| v["strata"][0]["closure"][0] = "y^2 - x^^3".into()),
        cusp_with(|v| v["strata"][0]["closure"][0] = "y^2 - w".into()),
        cusp_with(|v| v.as_object_mut().unwrap().remove("links").map(|_| ()).unwrap()),
        cusp_with(|v| v["eta"] = serde_json::json!({"S1": 1, "S0": 0})),
        cusp_with(|v| v["order"] = serde_json::json!([["S1", "S0"]])),
        cusp_with(|v| v["field"] = serde_json::json!({"type": "gfp", "p": 15})),
        cusp_with(|v| v["unexpected"] = 1.into()),
        "{ not json".to_string(),
    ];
    for (i, c) in cases.iter().enumerate() {
        let f = write(&dir, &format!("bad{i}.json"), c);
        let (code, _, err) = run(&["chi", &f]);
        assert_eq!(code, 2, "case {i}: {err}");
        assert!(err.starts_with("error: "));
    }
    let (code, _, _) = run(&["chi", "/nonexistent/problem.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["chi", catalog_path("cusp").to_str().unwrap(), "--field", "gfp:16"]);
    assert_eq!(code, 2);
}

#[test]
fn missing_data_for_chi_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "nodata.json", &cusp_with(|v| {
        v.as_object_mut().unwrap().remove("alpha");
    }));
    let (code, _, err) = run(&["chi", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("alpha or eta"));
    // the profile needs no constructible function
    assert_eq!(run(&["profile", &f]).0, 0);
}

#[test]
fn non_generic_input_exits_3() {
    // a double line: every fiber is non-reduced, so no draw is generic
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "double.json",
        r#"{"variables": ["x", "y"], "strata": [{"name": "D", "closure": ["y^2"], "dim": 1}]}"#,
    );
    let (code, _, err) = run(&["profile", &f]);
    assert_eq!(code, 3, "{err}");
    assert!(err.contains("rationals"));
}

#[test]
fn bad_primes_map_to_exit_4() {
    let bad = Error::BadPrime {
        p: 2147483629,
        reason: "test".into(),
    };
    assert_eq!(CliError::Engine(bad).exit_code(), 4);
    assert_eq!(CliError::PrimesExhausted("all".into()).exit_code(), 4);
    assert_eq!(CliError::Engine(Error::NonGeneric("x".into())).exit_code(), 3);
}

#[test]
fn load_rules() {
    let cusp = catalog::problem("cusp").unwrap();
    let p = load_problem(&cusp, PrimeField::default()).unwrap();
    let dims: Vec<usize> = p.space.strata().iter().map(|s| s.dim).collect();
    assert_eq!(dims, vec![1, 0]);

    let mut wrong = cusp.clone();
    wrong.strata[0].dim = 2;
    assert!(matches!(
        load_problem(&wrong, PrimeField::default()),
        Err(CliError::Engine(Error::DimensionMismatch { .. }))
    ));

    let mut no_links = cusp.clone();
    no_links.links = None;
    assert!(matches!(
        load_problem(&no_links, PrimeField::default()),
        Err(CliError::Engine(Error::MissingLink { .. }))
    ));
}

#[test]
fn reports_are_reproducible() {
    let path = catalog_path("umbrella");
    let p = path.to_str().unwrap();
    let a = run(&["check", p]);
    let b = run(&["check", p]);
    let c = run(&["check", p, "--serial"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
    let d = run(&["check", p, "--seed", "7"]);
    assert_eq!(d.0, 0);
    assert_ne!(a.1, d.1);
}

#[test]
fn rational_field_flag() {
    let (code, out, err) = run(&["chi", catalog_path("nodal").to_str().unwrap(), "--field", "rational"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["run"]["field"], "rational");
    assert_eq!(v["result"]["chi"], 0);
}

#[test]
fn catalog_subcommand() {
    let (code, out, _) = run(&["catalog"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "umbrella"));
    let (code, out, _) = run(&["catalog", "cusp"]);
    assert_eq!(code, 0);
    assert!(ProblemFile::from_json(&out).is_ok());
    assert_eq!(run(&["catalog", "nope"]).0, 2);
}
