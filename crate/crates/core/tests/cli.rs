use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(rel).display().to_string()
}

fn nicety(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nicety")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn check_nice_nagata_writes_inverse_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let inv = dir.path().join("inv.map");
    let json = dir.path().join("r.json");
    let o = nicety(&[
        "check-nice",
        "--input",
        &fixture("nagata/F.map"),
        "--inverse-out",
        inv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Nice(3)\n"));
    let expected = std::fs::read_to_string(fixture("nagata/inverse.map")).unwrap();
    assert_eq!(std::fs::read_to_string(&inv).unwrap(), expected);

    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["schema"], "nicety-report/1");
    assert_eq!(r["verdict"], "Nice(3)");
    assert_eq!(r["m"], 3);
    assert_eq!(r["exit"], 0);
    assert_eq!(r["steps"].as_array().unwrap().len(), 4);
    assert_eq!(r["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert_eq!(r["randomized"]["seed"], 1);
    assert!(r["timing"]["total_ms"].is_number());
}

#[test]
fn invert_prints_only_the_map() {
    let o = nicety(&["invert", "--input", &fixture("elementary/F.map")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("elementary/inverse.map")).unwrap());
}

#[test]
fn not_nice_within_limit_exits_2() {
    let o = nicety(&["check-nice", "--input", &fixture("remark1_nonnice/F.map"), "--max-steps", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("NotNiceWithin(3)"));
    let o = nicety(&["invert", "--input", &fixture("remark1_nonnice/F.map"), "--max-steps", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let o = nicety(&[
        "check-nice",
        "--input",
        &fixture("remark1_nonnice/F.map"),
        "--max-steps",
        "4",
        "--screen-samples",
        "0",
        "--term-budget",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("BudgetExceeded("));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.map", "vars: x1 x2\nF1 = x1 +\nF2 = x2\n");
    let o = nicety(&["keller", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.map:2:"), "{err}");

    assert_eq!(nicety(&["keller", "--input", "/nonexistent/F.map"]).status.code(), Some(1));
    assert_eq!(nicety(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(nicety(&["hubbers", "--g4", "0"]).status.code(), Some(1));
    assert_eq!(nicety(&["--help"]).status.code(), Some(0));
}

#[test]
fn keller_reports_determinant() {
    let o = nicety(&["keller", "--input", &fixture("nagata/F.map")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\ntrue\n");

    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "f.map", "vars: x y\nF1 = x^2\nF2 = y\n");
    let o = nicety(&["keller", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "2*x\nfalse\n");
}

#[test]
fn nilpotence_modes() {
    let o = nicety(&["nilpotence", "--input", &fixture("druzkowski_idx3/F.map"), "--of-h"]);
    assert_eq!(stdout(&o), "3\n");
    let o = nicety(&[
        "nilpotence",
        "--input",
        &fixture("gz16/F.map"),
        "--of-h",
        "--mode",
        "randomized",
        "--samples",
        "8",
        "--seed",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5\n");
    // J(F) itself is never nilpotent: it has the identity as its constant part.
    let o = nicety(&["nilpotence", "--input", &fixture("nagata/F.map"), "--kmax", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compose_conjugate_druzkowski_hubbers() {
    let o = nicety(&["compose", "--f", &fixture("elementary/F.map"), "--g", &fixture("elementary/inverse.map")]);
    assert_eq!(stdout(&o), "vars: x1 x2\nF1 = x1\nF2 = x2\n");

    let o = nicety(&["druzkowski", "--matrix", &fixture("druzkowski_idx2/A.json")]);
    assert_eq!(stdout(&o), std::fs::read_to_string(fixture("druzkowski_idx2/F.map")).unwrap());

    for (part, file) in [("f", "F"), ("h", "H"), ("g", "G")] {
        let o = nicety(&["hubbers", "--part", part]);
        assert_eq!(stdout(&o), std::fs::read_to_string(fixture(&format!("hubbers8_default/{file}.map"))).unwrap());
    }

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.map");
    let o = nicety(&[
        "conjugate",
        "--input",
        &fixture("nagata/F.map"),
        "--matrix",
        &fixture("nagata/T.json"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = nicety(&["check-nice", "--input", out.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("Nice(3)"));
}

#[test]
fn gz_check_trace_transport() {
    let o = nicety(&[
        "gz-check",
        "--small",
        &fixture("gz16/f.map"),
        "--big",
        &fixture("gz16/F.map"),
        "--b",
        &fixture("gz16/B.json"),
        "--c",
        &fixture("gz16/C.json"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 6);

    let o = nicety(&["trace", "--input", &fixture("remark1_nonnice/F.map"), "--kmax", "3"]);
    assert_eq!(stdout(&o), "k=1: x2^3\nk=2: 3*x1^2*x2^2\nk=3: 6*x1^4*x2\n");

    let o = nicety(&["transport", "--input", &fixture("nagata/F.map"), "--matrix", &fixture("nagata/T.json"), "--kmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 4);
}

#[test]
fn corpus_list_export_run() {
    let o = nicety(&["corpus", "list"]);
    assert_eq!(stdout(&o).lines().count(), 8);

    let dir = tempfile::tempdir().unwrap();
    let o = nicety(&["corpus", "export", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let exported = std::fs::read_to_string(dir.path().join("nagata/F.map")).unwrap();
    assert_eq!(exported, std::fs::read_to_string(fixture("nagata/F.map")).unwrap());

    let o = nicety(&["corpus", "run", "druzkowski_idx2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS druzkowski_idx2"));
    assert_eq!(nicety(&["corpus", "run", "nope"]).status.code(), Some(1));
}

#[test]
fn thread_count_does_not_change_output() {
    let input = fixture("hubbers8_default/H.map");
    let run = |t: &str| stdout(&nicety(&["--threads", t, "check-nice", "--input", &input, "--max-steps", "6"]));
    assert_eq!(run("1"), run("4"));
}

#[test]
fn in_process_entry_point() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = nicety::cli::run(["nicety", "keller", "--input", &fixture("elementary/F.map")], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "1\ntrue\n");
    assert!(err.is_empty());
}
