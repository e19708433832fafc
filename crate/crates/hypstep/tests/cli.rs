use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hypstep");

/// Small configurations for every subcommand, fast enough for a debug build.
const QUICK: &[&[&str]] = &[
    &["verify", "--samples", "150"],
    &["sigma", "--r-grid", "0.5:0.9:3", "--samples", "100"],
    &["step"],
    &["slimness", "--r-grid", "0.9:0.999:3", "--samples", "24"],
    &["qgeo", "--samples", "12"],
    &["family", "--t-grid", "0:6:25", "--samples", "60", "--beta", "0.5"],
];

fn hypstep(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn hypstep")
}

fn with(base: &[&str], extra: &[&str]) -> Vec<String> {
    base.iter().chain(extra).map(|s| s.to_string()).collect()
}

fn run(args: &[String]) -> Output {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    hypstep(&refs)
}

fn digest(bytes: &[u8]) -> u64 {
    let mut h = DefaultHasher::new();
    bytes.hash(&mut h);
    h.finish()
}

fn schema() -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&raw).expect("schema compiles")
}

#[test]
fn every_subcommand_passes_and_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (i, base) in QUICK.iter().enumerate() {
        for format in ["csv", "json"] {
            let mut digests = Vec::new();
            for round in 0..2 {
                let out = dir.path().join(format!("{i}-{format}-{round}"));
                let args = with(base, &["--format", format, "--seed", "11", "--out", out.to_str().unwrap()]);
                let o = run(&args);
                assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
                digests.push(digest(&std::fs::read(&out).unwrap()));
            }
            assert_eq!(digests[0], digests[1], "{base:?} {format}");
        }
    }
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("step.csv");
    let file = hypstep(&["step", "--out", out.to_str().unwrap()]);
    assert!(file.status.success());
    assert!(file.stdout.is_empty());
    let stdout = hypstep(&["step"]);
    assert_eq!(std::fs::read(&out).unwrap(), stdout.stdout);
}

#[test]
fn json_output_validates_against_schema() {
    let schema = schema();
    for base in QUICK {
        for extra in [&[][..], &["--wall-time"][..]] {
            let args = with(base, &[&["--format", "json"][..], extra].concat());
            let o = run(&args);
            assert!(o.status.success(), "{args:?}");
            let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
            if let Err(errors) = schema.validate(&doc) {
                let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
                panic!("{args:?}: {msgs:?}");
            }
            assert_eq!(doc["metadata"]["command"], base[0]);
            assert!(!doc["rows"].as_array().unwrap().is_empty());
            assert_eq!(doc["metadata"].get("wall_time_seconds").is_some(), !extra.is_empty());
        }
    }
}

#[test]
fn schema_rejects_malformed_reports() {
    let schema = schema();
    let o = hypstep(&["step", "--format", "json"]);
    let good: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(schema.is_valid(&good));
    let mut bad = good.clone();
    bad["status"] = Value::from("maybe");
    assert!(!schema.is_valid(&bad));
    let mut bad = good;
    bad["metadata"].as_object_mut().unwrap().remove("config");
    assert!(!schema.is_valid(&bad));
}

#[test]
fn csv_has_header_and_full_precision() {
    let o = hypstep(&["sigma", "--r-grid", "0.5", "--samples", "50"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header.len(), row.len());
    let closed = row[header.iter().position(|&c| c == "sigma_closed").unwrap()];
    let mantissa = closed.split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17);
    let value: f64 = closed.parse().unwrap();
    assert!((value - 15f64.sqrt()).abs() < 1e-15);
}

#[test]
fn fault_injection_fails_the_semimodel_suite() {
    let o = hypstep(&["verify", "--samples", "100", "--self-test", "semimodel-theta"]);
    assert_eq!(o.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert!(stderr.contains("invariant failed: semimodel"), "{stderr}");
    let csv = String::from_utf8(o.stdout).unwrap();
    for line in csv.lines().skip(1) {
        let failed = line.ends_with(",false");
        assert_eq!(failed, line.starts_with("semimodel"), "{line}");
    }
}

#[test]
fn fault_flag_is_hidden_from_help() {
    let o = hypstep(&["--help"]);
    assert!(o.status.success());
    let help = String::from_utf8_lossy(&o.stdout);
    assert!(!help.contains("self-test"));
    assert!(help.contains("--r-grid"));
}

#[test]
fn config_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["sigma", "--r-grid", "0.5:0.9:x"],
        &["sigma", "--r-grid", "1.5"],
        &["step", "--tol", "-1"],
        &["step", "--samples", "0"],
        &["step", "--self-test", "semimodel-theta"],
        &["family", "--beta", "1.5"],
        &["verify", "--format", "xml"],
        &["launch"],
    ];
    for args in cases {
        let o = hypstep(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn seed_changes_margins_but_not_verdicts() {
    let a = hypstep(&["verify", "--samples", "150", "--seed", "1"]);
    let b = hypstep(&["verify", "--samples", "150", "--seed", "2"]);
    assert!(a.status.success() && b.status.success());
    assert_ne!(a.stdout, b.stdout);
    let verdicts = |o: &Output| -> Vec<String> {
        String::from_utf8_lossy(&o.stdout)
            .lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                format!("{}:{}", f[0], f[f.len() - 1])
            })
            .collect()
    };
    assert_eq!(verdicts(&a), verdicts(&b));
}
