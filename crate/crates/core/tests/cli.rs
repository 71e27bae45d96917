use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use golay_zcz::ArrayPair;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_golay-zcz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_golay-zcz"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_measure_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p40.json");
    let o = run(&[
        "construct-1d",
        "--seed",
        "catalog:binary-10",
        "--signs",
        "1,1,1,-1",
        "-o",
        path(&out),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let pair = ArrayPair::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(pair.shape(), (1, 40));

    let o = run(&["measure", "--input", path(&out)]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("complementary   yes"), "{text}");
    assert!(text.contains("Z_min           11"), "{text}");

    let o = run(&["verify", "--input", path(&out), "--claim", "11"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("claim 1x11 verified"));
}

#[test]
fn construct_full_then_measure_json() {
    let built = run(&["construct-2d-full", "--seed", "catalog:quaternary-2x3"]);
    assert!(built.status.success());
    let o = run_with_stdin(&["measure", "--input", "-", "--json"], &stdout(&built));
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["is_gcap"], true);
    assert_eq!(report["shape"], serde_json::json!([8, 12]));
    assert_eq!(report["z_min"], serde_json::json!({"rows": 8, "cols": 4}));

    let o = run_with_stdin(
        &["verify", "--input", "-", "--claim", "3x4"],
        &stdout(&built),
    );
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn construct_2d_and_mate() {
    let o = run(&[
        "construct-2d",
        "--seed",
        "catalog:quaternary-2x3",
        "--signs",
        "1,1,1,-1",
    ]);
    assert!(o.status.success());
    let pair = ArrayPair::from_json(&stdout(&o)).unwrap();
    assert_eq!(pair.shape(), (2, 12));

    let o = run(&["mate", "--seed", "catalog:quadriphase-3"]);
    assert!(o.status.success());
    let mate = ArrayPair::from_json(&stdout(&o)).unwrap();
    assert_eq!(mate.first().exponents(), &[0, 3, 0]);
}

#[test]
fn corrupted_pair_fails_verification_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("pair.json");
    let o = run(&[
        "construct-1d",
        "--seed",
        "catalog:binary-10",
        "--signs",
        "1,1,1,-1",
        "-o",
        path(&file),
    ]);
    assert!(o.status.success());
    let mut json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let cell = &mut json["first"]["exp"][0][5];
    *cell = serde_json::json!(1 - cell.as_u64().unwrap());
    std::fs::write(&file, json.to_string()).unwrap();

    let o = run(&["verify", "--input", path(&file)]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        stdout(&o).contains("complementary   no (value"),
        "{}",
        stdout(&o)
    );
    assert!(stderr(&o).starts_with("error[claim-failed]"));
}

#[test]
fn unattained_claim_exits_with_claim_failure() {
    let o = run(&["verify", "--input", "catalog:binary-4", "--claim", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("shift"));
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(
        run(&["measure", "--input", "catalog:nope"]).status.code(),
        Some(2)
    );
    let o = run(&[
        "construct-1d",
        "--seed",
        "catalog:binary-4",
        "--signs",
        "1,1,1,1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "construct-1d",
        "--seed",
        "catalog:quaternary-2x3",
        "--signs",
        "1,1,1,-1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_with_stdin(&["measure", "--input", "-"], "{\"first\": 1}");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_guard_and_output() {
    let o = run(&["search", "--length", "12", "--guard", "1000"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).starts_with("error[guard-exceeded]"));

    let o = run(&["search", "--length", "4"]);
    assert!(o.status.success());
    let found: Vec<ArrayPair> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(found.len(), 32);
    let o = run(&["search", "--length", "4", "--limit", "2"]);
    let limited: Vec<ArrayPair> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(limited, found[..2]);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for f in [&a, &b] {
        let o = run(&[
            "--workers",
            "3",
            "construct-2d-full",
            "--seed",
            "catalog:quaternary-2x3",
            "-o",
            path(f),
        ]);
        assert!(o.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let m1 = run(&["measure", "--input", path(&a), "--json"]);
    let m2 = run(&["--workers", "1", "measure", "--input", path(&b), "--json"]);
    assert_eq!(m1.stdout, m2.stdout);
}

#[test]
fn export_tables() {
    let o = run(&[
        "export",
        "--input",
        "catalog:quadriphase-3",
        "--table",
        "first",
        "--kind",
        "periodic",
    ]);
    assert!(o.status.success());
    let csv = stdout(&o);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("tau1\\tau2,0,1,2"));
    assert_eq!(lines.next().unwrap().split(',').nth(1), Some("3+0i"));

    let o = run(&[
        "export",
        "--input",
        "catalog:binary-2",
        "--table",
        "aacs",
        "--kind",
        "aperiodic",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let table: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(table["kind"], "aperiodic");
    assert_eq!(table["exact"], true);
    assert_eq!(
        table["values"],
        serde_json::json!([["0+0i", "4+0i", "0+0i"]])
    );

    let o = run(&[
        "export",
        "--input",
        "catalog:binary-4",
        "--table",
        "cross",
        "--fft",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let table: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(table["exact"], false);

    let o = run(&[
        "export",
        "--input",
        "catalog:binary-4",
        "--table",
        "aacs",
        "--kind",
        "periodic",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_listing() {
    let o = run(&["catalog"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text
        .lines()
        .any(|l| l.starts_with("binary-10") && l.contains("gcap=true")));
    assert_eq!(text.lines().count(), 8);
}
