mod common;

use std::process::Command as Process;

use serde_json::Value;
use torstab::cli::{dispatch, examples, parse_input, render, run, Command, Flags, InputDocument};
use torstab::gallery;

const BIN: &str = env!("CARGO_BIN_EXE_torstab");

fn write_doc(dir: &std::path::Path, name: &str, doc: &InputDocument) -> std::path::PathBuf {
    let path = dir.join(format!("{}.json", name.replace([':', ',', '/'], "_")));
    std::fs::write(&path, serde_json::to_string(doc).unwrap()).unwrap();
    path
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("torstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn gallery_documents_round_trip() {
    for name in gallery::DEFAULT_INSTANCES {
        let doc = gallery::example(name).unwrap();
        let text = serde_json::to_string(&doc).unwrap();
        let (back, _, _) = parse_input(&text).unwrap();
        assert_eq!(back, doc, "{name}");
        let listed: InputDocument = serde_json::from_value(examples(name).unwrap()).unwrap();
        assert_eq!(listed, doc);
    }
    let list = examples("list").unwrap();
    assert!(list["names"].as_array().unwrap().len() >= 4);
    assert!(examples("unknown").unwrap_err().to_string().contains("blowup_p2:x,y"));
}

#[test]
fn every_gallery_entry_runs_every_command() {
    for name in gallery::DEFAULT_INSTANCES {
        let doc = gallery::example(name).unwrap();
        let dim = doc.dim;
        let flags = Flags {
            nu: Some((0..dim as i64).map(|i| i + 1).collect()),
            ..Flags::default()
        };
        for command in Command::ALL {
            if command == Command::Examples {
                continue;
            }
            let started = std::time::Instant::now();
            let first = run(command, &doc, &flags).unwrap_or_else(|e| panic!("{name} {command:?}: {e}"));
            let second = run(command, &doc, &flags).unwrap();
            assert_eq!(render(&first), render(&second), "{name} {command:?} not deterministic");
            assert!(started.elapsed().as_secs() < 20, "{name} {command:?} too slow");
        }
    }
}

#[test]
fn rationals_are_strings() {
    fn check(v: &Value) {
        match v {
            Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float in report: {n}"),
            Value::Array(a) => a.iter().for_each(check),
            Value::Object(o) => o.values().for_each(check),
            _ => {}
        }
    }
    let doc = gallery::example("blowup_p2:3,2").unwrap();
    check(&run(Command::Invariants, &doc, &Flags { nu: Some(vec![1, 1]), ..Flags::default() }).unwrap());
}

#[test]
fn parse_errors_name_the_field() {
    let doc = gallery::example("p2_anticanonical").unwrap();
    let mut bad = doc.clone();
    bad.rays[1] = vec![0, 3];
    assert!(parse_input(&serde_json::to_string(&bad).unwrap()).unwrap_err().to_string().contains("rays[1]"));
    let mut bad = doc.clone();
    bad.rays[2] = vec![-1, -1, 0];
    assert!(parse_input(&serde_json::to_string(&bad).unwrap()).unwrap_err().to_string().contains("rays[2]"));
    let mut bad = doc.clone();
    bad.max_cones[1] = vec![1, 7];
    assert!(parse_input(&serde_json::to_string(&bad).unwrap()).unwrap_err().to_string().contains("max_cones[1]"));
    let mut bad = doc.clone();
    bad.divisor[2] = "one".into();
    assert!(parse_input(&serde_json::to_string(&bad).unwrap()).unwrap_err().to_string().contains("divisor[2]"));
    assert!(parse_input("[1,2]").unwrap_err().to_string().contains("malformed JSON"));
}

#[test]
fn dispatch_reads_files() {
    let dir = tempdir();
    let path = write_doc(&dir, "p2", &gallery::example("p2_anticanonical").unwrap());
    let r = dispatch("criterion", path.to_str().unwrap(), &Flags::default()).unwrap();
    assert_eq!(r["result"]["verdict"], "BOUNDARY");
    assert_eq!(dispatch("beta", "/nonexistent.json", &Flags::default()).unwrap_err().exit_code(), 1);
}

#[test]
fn binary_exit_codes_and_output() {
    let dir = tempdir();
    let blp2 = write_doc(&dir, "blp2", &gallery::example("blowup_p2:3,1").unwrap());
    let out = Process::new(BIN).args(["beta", blp2.to_str().unwrap(), "--nu", "1,1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["beta"], "-4/3");

    let out = Process::new(BIN).args(["oracle", blp2.to_str().unwrap(), "--nu", "-1,-1", "--kmax", "8"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = Process::new(BIN).args(["beta", blp2.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--nu"));

    let mut empty = gallery::example("p2_anticanonical").unwrap();
    empty.divisor = vec!["-1".into(); 3];
    let empty = write_doc(&dir, "empty", &empty);
    let out = Process::new(BIN).args(["invariants", empty.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = Process::new(BIN).args(["frobnicate", blp2.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Process::new(BIN).args(["beta"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = Process::new(BIN).args(["examples", "list"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let a = Process::new(BIN).args(["invariants", blp2.to_str().unwrap()]).output().unwrap();
    let b = Process::new(BIN).args(["invariants", blp2.to_str().unwrap()]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}
