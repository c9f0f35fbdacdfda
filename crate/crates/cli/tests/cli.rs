use std::process::{Command, Output};

use qbessel_cli::suite::suite_specs;
use qbessel_cli::{parse_spec, render, run_suite, Status, SuiteName, SuiteOptions};

fn qb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qb"))
        .args(args)
        .env_remove("QB_DEFAULT_TOL")
        .output()
        .expect("qb runs")
}

const SUITES: [SuiteName; 4] = [
    SuiteName::PaperCore,
    SuiteName::PaperElementary,
    SuiteName::PaperAiry,
    SuiteName::GenericRandom,
];

#[test]
fn suite_specs_round_trip() {
    for name in SUITES {
        for spec in suite_specs(name, 11) {
            let text = render(&spec);
            assert_eq!(parse_spec(&text).unwrap(), spec, "{text}");
        }
    }
}

#[test]
fn every_suite_passes() {
    let opts = SuiteOptions {
        timestamp: false,
        ..Default::default()
    };
    for name in SUITES {
        let r = run_suite(name, &opts);
        let bad: Vec<_> = r
            .entries
            .iter()
            .filter(|e| e.status == Status::Fail)
            .collect();
        assert!(bad.is_empty(), "{}: {bad:#?}", r.metadata.suite);
        assert_eq!(r.count(Status::Skipped), 0, "{}", r.metadata.suite);
    }
}

#[test]
fn reports_are_byte_identical_without_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2)
        .map(|i| dir.path().join(format!("run{i}.json")))
        .collect();
    for p in &paths {
        let out = qb(&[
            "suite",
            "generic-random",
            "--seed",
            "99",
            "--no-timestamp",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let (a, b) = (
        std::fs::read(&paths[0]).unwrap(),
        std::fs::read(&paths[1]).unwrap(),
    );
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["metadata"]["seed"], 99);
    assert!(report["metadata"]["timestamp"].is_null());
    assert_eq!(report["entries"].as_array().unwrap().len(), 32);
}

#[test]
fn tables_have_the_documented_rows() {
    let dir = tempfile::tempdir().unwrap();
    for (family, rows) in [
        ("k4-digamma", 6),
        ("ik3-digamma", 5),
        ("i2k2-elementary", 6),
        ("airy", 6),
    ] {
        let csv_path = dir.path().join(format!("{family}.csv"));
        let out = qb(&[
            "table",
            family,
            "--format",
            "csv",
            "--out",
            csv_path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{family}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let mut reader = csv::Reader::from_path(&csv_path).unwrap();
        assert_eq!(&reader.headers().unwrap()[0], "order");
        let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
        assert_eq!(records.len(), rows, "{family}");
        assert!(records.iter().all(|r| &r[7] == "pass"), "{family}");

        let json_path = dir.path().join(format!("{family}.json"));
        let out = qb(&[
            "table",
            family,
            "--format",
            "json",
            "--out",
            json_path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        let entries = v.as_array().unwrap();
        assert_eq!(entries.len(), rows);
        for key in [
            "formula_id",
            "params",
            "closed_value",
            "oracle_value",
            "rel_gap",
            "status",
        ] {
            assert!(entries[0].get(key).is_some(), "{family}: missing {key}");
        }
    }
}

#[test]
fn k4_table_rows_are_labelled_by_order() {
    let out = qb(&["table", "k4-digamma"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let orders: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(orders, ["1/3", "1/4", "1/6", "1/8", "1/10", "1/12"]);
}

#[test]
fn exit_codes() {
    let ok = qb(&["verify", "--spec", "x^2 * K(0,1)^4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("fox1"));

    let bad = qb(&["eval", "--spec", "x^1 * K(1/3,1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("column 14"));

    let divergent = qb(&["oracle", "--spec", "x^1 * I(0,2) * K(0,1)"]);
    assert_eq!(divergent.status.code(), Some(2));

    // a threshold no closed form can meet turns verify into a failure
    let strict = qb(&[
        "--rel-tol",
        "1e-30",
        "verify",
        "--spec",
        "x^1.3 * K(0.21,1) * K(0.17,1) * K(0.11,2) * K(0.07,2)",
    ]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn json_outputs_parse() {
    let out = qb(&[
        "eval",
        "--spec",
        "x^2 * I(0,1) * K(0,1)^3",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["formula_id"], "fox2");
    let out = qb(&["oracle", "--spec", "x^1 * Ai(1)^4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let want = 3f64.ln() / (24.0 * std::f64::consts::PI.powi(2));
    assert!((v["value"].as_f64().unwrap() / want - 1.0).abs() < 1e-10);
}

#[test]
fn config_file_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("qb.conf");
    std::fs::write(&cfg, "seed = 5\ntimestamp = false\n").unwrap();
    let out = qb(&["--config", cfg.to_str().unwrap(), "suite", "generic-random"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["metadata"]["seed"], 5);
    assert!(v["metadata"]["timestamp"].is_null());

    let out = Command::new(env!("CARGO_BIN_EXE_qb"))
        .args(["suite", "paper-airy", "--no-timestamp"])
        .env("QB_DEFAULT_TOL", "1e-11")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["metadata"]["oracle_rel_tol"], 1e-11);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    let out = qb(&["--config", cfg.to_str().unwrap(), "suite", "paper-airy"]);
    assert_eq!(out.status.code(), Some(2));
}
