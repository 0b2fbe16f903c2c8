//! The installed binary: exit codes, formats and determinism.

use std::process::{Command, Output};

fn wreathlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wreathlab"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn info_reports_invariants() {
    let o = wreathlab(&["info", "S3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for line in [
        "order: 6",
        "dg: 1",
        "dg_p: 2:1 3:0",
        "dl: 2",
        "semiabelian: yes",
    ] {
        assert!(s.contains(line), "missing {line} in\n{s}");
    }
}

#[test]
fn trivial_atom_is_rejected() {
    let o = wreathlab(&["info", "C1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E"));
    assert_eq!(wreathlab(&["info", "E"]).status.code(), Some(0));
}

#[test]
fn exit_codes() {
    assert_eq!(wreathlab(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(wreathlab(&["info", "wr(C2,"]).status.code(), Some(2));
    assert_eq!(
        wreathlab(&["info", "wr(C4,C4,C4)", "--element-cap", "1000"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(wreathlab(&["realize-cyclic", "1"]).status.code(), Some(2));
    assert_eq!(
        wreathlab(&["--format", "xml", "survey"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_suite_passes_and_prints_seed() {
    let o = wreathlab(&["verify", "functorial", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("seed 7\n"));
    assert!(s.contains("0 failed"));
}

#[test]
fn tightened_caps_skip() {
    let o = wreathlab(&["verify", "all", "--element-cap", "4096", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["body"]["skipped"].as_u64().unwrap() > 0);
    assert_eq!(v["body"]["failed"], 0);
    let statuses: Vec<&str> = v["body"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["status"].as_str().unwrap())
        .collect();
    assert!(statuses.contains(&"skip") && statuses.contains(&"pass"));
}

#[test]
fn wl_certificates() {
    let o = wreathlab(&["wl", "Q8", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "wreathlab-cert/1");
    assert_eq!(v["body"]["certificate"]["exact"], 2);
    assert_eq!(v["body"]["certificate"]["upper_source"], "nilpotent_tower");
    let s = stdout(&wreathlab(&["wl", "D4"]));
    assert!(s.contains("exact: 2") && s.contains("wl_eq_dg: true"));
}

#[test]
fn survey_json_is_deterministic() {
    let a = wreathlab(&["survey", "--max-order", "24", "--format", "json"]);
    let b = wreathlab(&["survey", "--max-order", "24", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn survey_order_eight() {
    let s = stdout(&wreathlab(&[
        "survey",
        "--max-order",
        "8",
        "--format",
        "tsv",
    ]));
    let labels: Vec<&str> = s
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    for l in [
        "E",
        "C2",
        "C8",
        "C2 * C2",
        "C2 * C4",
        "C2 * C2 * C2",
        "D4",
        "Q8",
        "wr(C2,C2;desc)",
    ] {
        assert!(labels.contains(&l), "missing {l}");
    }
    assert!(s
        .lines()
        .any(|l| l.starts_with("wr(C2,C2;desc)\t") && l.contains("\tD4\t")));
    let empty = wreathlab(&["survey", "--max-order", "0"]);
    assert_eq!(empty.status.code(), Some(0));
}

#[test]
fn realize_cyclic() {
    let s = stdout(&wreathlab(&["realize-cyclic", "4"]));
    assert!(s.contains("prime: 5"));
    assert!(s.contains("C4 realized tamely with 1 ramified prime"));
}
