use std::path::{Path, PathBuf};
use std::process::Command;

use slowcolor::graph::families::*;
use slowcolor::Graph;
use slowcolor_cli::commands::{bench, compute, exact, run_census};

fn write(dir: &Path, name: &str, g: &Graph) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, g.to_edge_list_text()).unwrap();
    p
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slowcolor"))
}

#[test]
fn compute_examples() {
    let d = tempfile::tempdir().unwrap();
    let out = compute(&write(d.path(), "p10", path(10).graph()), false, false).unwrap();
    assert!(out.starts_with("s=15\n"), "{out}");
    let out = compute(&write(d.path(), "s50", star(50).graph()), false, false).unwrap();
    assert!(out.starts_with("s=59\n"));
    let out = compute(&write(d.path(), "e3", edgeless(3).graph()), false, false).unwrap();
    assert_eq!(out, "s=3\nisc=3\n");
}

#[test]
fn compute_trace_and_json() {
    let d = tempfile::tempdir().unwrap();
    let p = write(d.path(), "p4", path(4).graph());
    let out = compute(&p, true, false).unwrap();
    assert!(out.contains("step 1 stem=1 r=1 case=split"), "{out}");
    assert!(out.ends_with("s=6\nisc=6\n"));
    let v: serde_json::Value = serde_json::from_str(&compute(&p, true, true).unwrap()).unwrap();
    assert_eq!((v["s"].as_u64(), v["isc"].as_u64(), v["n"].as_u64()), (Some(6), Some(6), Some(4)));
    assert_eq!(v["trace"]["total"], 6);
}

#[test]
fn compute_errors() {
    let d = tempfile::tempdir().unwrap();
    let err = compute(&write(d.path(), "c4", &cycle(4)), false, false).unwrap_err();
    let msg = format!("{err:#}");
    assert!(msg.contains("cycle") && msg.contains("slowcolor exact"), "{msg}");
    let bad = d.path().join("bad");
    std::fs::write(&bad, "3 2\n0 1\n# comment\n1 x\n").unwrap();
    let msg = format!("{:#}", compute(&bad, false, false).unwrap_err());
    assert!(msg.contains("line 4"), "{msg}");
    assert!(compute(&d.path().join("missing"), false, false).is_err());
}

#[test]
fn exact_examples() {
    let d = tempfile::tempdir().unwrap();
    let c4 = write(d.path(), "c4", &cycle(4));
    assert_eq!(exact(&c4, 12, false, false).unwrap(), "s=6\n");
    assert_eq!(exact(&c4, 6, true, false).unwrap(), "isc=7\n");
    assert_eq!(exact(&write(d.path(), "k2", path(2).graph()), 12, false, false).unwrap(), "s=3\n");
    let out = exact(&write(d.path(), "k15", star(6).graph()), 12, false, true).unwrap();
    assert!(out.contains("[0, 1, 2]"), "{out}");
    let out = exact(&c4, 6, true, true).unwrap();
    assert!(out.contains("optimal first requests"));
    let msg = exact(&write(d.path(), "p9", path(9).graph()), 8, false, false).unwrap_err().to_string();
    assert!(msg.contains("cap of 8"), "{msg}");
}

#[test]
fn census_examples() {
    let d = tempfile::tempdir().unwrap();
    for n in [5, 7, 8] {
        let out = d.path().join(format!("census{n}.json"));
        let (text, ok) = run_census(n, Some(&out)).unwrap();
        assert!(ok, "{text}");
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        let rows = v["rows"].as_array().unwrap();
        let mins = rows.iter().filter(|r| r["is_min"] == true).count();
        match n {
            7 => assert_eq!(mins, 11),
            8 => assert_eq!(mins, 4),
            _ => {}
        }
    }
    assert!(run_census(17, None).is_err());
}

#[test]
fn bench_reports_formulas() {
    let (text, _) = bench(200_000, 3).unwrap();
    assert!(text.contains("path n=200000: s=300000 (expected 300000)"), "{text}");
    assert!(text.contains("star n=200000"));
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with(char::is_numeric)).count(), 2);
}

#[test]
fn binary_exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let p = write(d.path(), "p10", path(10).graph());
    let out = bin().args(["compute", p.to_str().unwrap()]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("s=15"));

    let c = write(d.path(), "c5", &cycle(5));
    let out = bin().args(["compute", c.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("slowcolor exact"));

    let out = bin().args(["exact", c.to_str().unwrap(), "--variant", "isc", "--cap", "6"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("isc="));

    let out = bin().args(["census", "--n", "7"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));

    let out = bin().args(["census", "--n", "30"]).output().unwrap();
    assert!(!out.status.success());
}
