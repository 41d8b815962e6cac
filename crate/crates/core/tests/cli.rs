use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_susy-gardner"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_json(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build(dir: &Path, name: &str, config: Value) -> PathBuf {
    let cfg = write_json(dir, &format!("{name}.json"), &config);
    let out = dir.join(format!("{name}.tau.json"));
    let o = run(&["build", "--config", s(&cfg), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn shock_samples_match_the_tanh_profile() {
    let dir = tempfile::tempdir().unwrap();
    let tau = build(dir.path(), "shock", json!({"regime": "defocusing", "sigma": -2.0, "kind": "shock", "entries": []}));
    let csv = dir.path().join("shock.csv");
    let o = run(&[
        "sample", "--tau", s(&tau), "--xmin", "-5", "--xmax", "5", "--nx", "101", "--tmin", "0", "--tmax", "0.2",
        "--nt", "2", "--out", s(&csv),
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let sigma = -2.0f64;
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let (x, t): (f64, f64) = (cols[0].parse().unwrap(), cols[1].parse().unwrap());
        let re: f64 = cols[3].parse().unwrap();
        let s = 0.5 * (1.0 + (-sigma / 2.0 * (x + 2.0 * sigma * sigma * t) + 2f64.ln() / 2.0).tanh());
        match cols[2] {
            "theta" => {
                assert!((re - (-sigma) * s).abs() <= 1e-12, "{line}");
                rows += 1;
            }
            "xi1" => assert!((re - s).abs() <= 1e-12, "{line}"),
            other => panic!("unexpected monomial {other}"),
        }
    }
    assert_eq!(rows, 202);
}

#[test]
fn corrupted_tau_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let tau = build(dir.path(), "two", json!({"regime": "focusing", "sigma": 1.0, "kind": "soliton", "entries": [{"k": 1.0}, {"k": 2.0}]}));
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&tau).unwrap()).unwrap();
    let w = &mut doc["f"]["terms"][1]["w"][0];
    *w = json!(w.as_f64().unwrap() + 0.1);
    let bad = write_json(dir.path(), "bad.tau.json", &doc);
    let report = dir.path().join("report.json");
    let o = run(&["verify", "bilinear", "--tau", s(&bad), "--out", s(&report)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    let rep: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(rep[0]["max_abs"].as_f64().unwrap() > 1e-3);
    assert_eq!(rep[0]["pass"], json!(false));
    assert!(rep[0]["at"]["monomial"].is_string());
}

#[test]
fn identities_with_seed_seven() {
    let o = run(&["verify", "identities", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("product identity: 20/20 checks pass"));
}

#[test]
fn every_kind_builds_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let configs = [
        json!({"regime": "focusing", "sigma": 1.0, "kind": "soliton", "entries": [{"k": 1.0}, {"k": 2.0}, {"k": 3.0}]}),
        json!({"regime": "defocusing", "sigma": 1.0, "kind": "soliton", "entries": [{"k": 1.0}, {"k": 2.0, "fermion": false}]}),
        json!({"regime": "defocusing", "sigma": -2.0, "kind": "shock", "entries": []}),
        json!({"regime": "focusing", "sigma": 1.0, "kind": "rational", "entries": [{"k": 1.0}]}),
        json!({"regime": "focusing", "sigma": 1.0, "kind": "mixed-rational-soliton", "entries": [{"k": 0.3}, {"k": 1.0, "phase": 0.5}]}),
        json!({"regime": "defocusing", "sigma": -2.0, "kind": "mixed-shock-soliton", "entries": [{"k": 1.0}]}),
    ];
    for (i, cfg) in configs.into_iter().enumerate() {
        let tau = build(dir.path(), &format!("c{i}"), cfg);
        for frame in ["XT", "xt"] {
            let o = run(&["verify", "bilinear", "--tau", s(&tau), "--frame", frame]);
            assert_eq!(code(&o), 0, "config {i} frame {frame}: {}", stdout(&o));
        }
        for form in ["superfield", "potential"] {
            let o = run(&["verify", "pde", "--tau", s(&tau), "--form", form, "--points", "16", "--seed", "5"]);
            assert_eq!(code(&o), 0, "config {i} {form}: {}", stdout(&o));
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = json!({"regime": "focusing", "sigma": 1.0, "kind": "soliton", "entries": [{"k": 1.0}, {"k": 2.0}]});
    let mut tau_texts = Vec::new();
    let mut csv_texts = Vec::new();
    let mut report_texts = Vec::new();
    for round in 0..2 {
        let tau = build(dir.path(), &format!("r{round}"), config.clone());
        tau_texts.push(fs::read(&tau).unwrap());
        let csv = dir.path().join(format!("r{round}.csv"));
        let o = run(&[
            "sample", "--tau", s(&tau), "--xmin", "-3", "--xmax", "3", "--nx", "31", "--tmin", "-1", "--tmax", "1",
            "--nt", "5", "--out", s(&csv),
        ]);
        assert_eq!(code(&o), 0);
        csv_texts.push(fs::read(&csv).unwrap());
        let rep = dir.path().join(format!("r{round}.report.json"));
        let o = run(&["verify", "pde", "--tau", s(&tau), "--points", "16", "--seed", "9", "--out", s(&rep)]);
        assert_eq!(code(&o), 0);
        report_texts.push(fs::read(&rep).unwrap());
    }
    assert_eq!(tau_texts[0], tau_texts[1]);
    assert_eq!(csv_texts[0], csv_texts[1]);
    assert_eq!(report_texts[0], report_texts[1]);
}

#[test]
fn limit_and_asymptotics_commands() {
    let o = run(&["limit", "--sigma", "1", "--k0", "1", "--eps", "0.1,0.01,0.001"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("minimum observed order"));

    let dir = tempfile::tempdir().unwrap();
    let tau = build(dir.path(), "mixed", json!({"regime": "focusing", "sigma": 1.0, "kind": "mixed-rational-soliton", "entries": [{"k": 0.3}, {"k": 1.0}]}));
    let report = dir.path().join("asym.json");
    let o = run(&["asymptotics", "--tau", s(&tau), "--times", "-50,50", "--out", s(&report)]);
    // the soliton-frame comparison decays only like 1/T
    assert_eq!(code(&o), 1);
    let rep: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(rep["shifts"][0]["pass"], json!(true));
    let o = run(&["asymptotics", "--tau", s(&tau), "--times", "-50,50", "--tol", "0.1"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify", "bilinear", "--tau", "/nonexistent/tau.json"])), 2);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    let o = run(&["build", "--config", s(&bad), "--out", s(&dir.path().join("x.json"))]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed soliton spec"));
    let o = run(&["build", "--config", s(&bad), "--out", s(&bad)]);
    assert_eq!(code(&o), 2);
    let o = run(&["limit", "--sigma", "1", "--k0", "1", "--eps", "0.01,0.1"]);
    assert_eq!(code(&o), 2);
    let cfg = write_json(dir.path(), "k.json", &json!({"regime": "focusing", "sigma": 1.0, "kind": "soliton", "entries": [{"k": 1.0}, {"k": -1.0}]}));
    let o = run(&["build", "--config", s(&cfg), "--out", s(&dir.path().join("k.tau.json"))]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn sigma_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_json(dir.path(), "c.json", &json!({"regime": "defocusing", "sigma": 1.0, "kind": "shock", "entries": []}));
    let out = dir.path().join("c.tau.json");
    let o = run(&["build", "--config", s(&cfg), "--out", s(&out), "--sigma", "-3"]);
    assert_eq!(code(&o), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["sigma"], json!(-3.0));
}
