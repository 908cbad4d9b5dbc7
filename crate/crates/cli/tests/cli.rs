use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_worpitzky"))
        .args(args)
        .env_remove("WORPITZKY_THREADS")
        .output()
        .unwrap()
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_worpitzky"))
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

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eulerian_rows() {
    assert_eq!(
        stdout(&run(&["eulerian", "--type", "B", "--n", "2"])),
        "1,6,1\n"
    );
    assert_eq!(
        stdout(&run(&["eulerian", "--type", "D", "--n", "2", "--q"])),
        "[1],[1,1],[0,1]\n"
    );
    assert_eq!(
        stdout(&run(&["eulerian", "--type", "A", "--n", "1"])),
        "1\n"
    );
    let json: Value = serde_json::from_str(&stdout(&run(&[
        "--format", "json", "eulerian", "--type", "D", "--n", "3",
    ])))
    .unwrap();
    assert_eq!(json["entries"], serde_json::json!([1, 11, 11, 1]));
}

#[test]
fn eulerian_csv() {
    let out = stdout(&run(&[
        "eulerian", "--type", "B", "--n", "2", "--q", "--format", "csv",
    ]));
    assert_eq!(out, "k,weight\n0,1\n1,1 + 4*q + 1*q^2\n2,1*q^2\n");
}

#[test]
fn verify_exit_codes() {
    let o = run(&[
        "verify",
        "--identity",
        "worpitzky-d",
        "--n-range",
        "2..3",
        "--m-range",
        "1..1",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("lhs=15 rhs=15"));
    assert_eq!(
        code(&run(&[
            "verify",
            "--identity",
            "worpitzky-b",
            "--n-range",
            "1..1",
            "--m-range",
            "0..0"
        ])),
        0
    );

    let o = run(&[
        "verify",
        "--identity",
        "erratum-d",
        "--n-range",
        "2..2",
        "--m-range",
        "1..1",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("printed_lhs_at_q1=2"));
    assert!(text.contains("rhs_at_q1=5"));

    assert_eq!(
        code(&run(&[
            "verify",
            "--identity",
            "balance-d",
            "--n-range",
            "1..2",
            "--m-range",
            "1"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "verify",
            "--identity",
            "worpitzky-a",
            "--n-range",
            "3..2",
            "--m-range",
            "1"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "verify",
            "--identity",
            "nope",
            "--n-range",
            "2",
            "--m-range",
            "1"
        ])),
        2
    );
}

#[test]
fn verify_json_reports() {
    let o = run(&[
        "--format",
        "json",
        "verify",
        "--identity",
        "balance-d",
        "--n-range",
        "2",
        "--m-range",
        "1",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["lhs"], serde_json::json!([6, 3]));
    assert_eq!(v[0]["pass"], true);
}

#[test]
fn map_outcomes() {
    assert_eq!(
        stdout(&run(&[
            "map",
            "--type",
            "B",
            "--m",
            "3",
            "--vector",
            "1,-2,0,-1,3,-2"
        ])),
        "3,-4,1,-6,-2,5\n"
    );
    assert_eq!(
        stdout(&run(&[
            "map", "--type", "D", "--m", "2", "--vector", "-2,0,0"
        ])),
        "-2,3,-1 (flipped)\n"
    );
    assert_eq!(
        stdout(&run(&[
            "map", "--type", "D", "--m", "2", "--vector", "2,0,-1"
        ])),
        "missing: case2b\n"
    );
    assert_eq!(
        code(&run(&["map", "--type", "D", "--m", "2", "--vector", "3,0"])),
        2
    );
    assert_eq!(
        code(&run(&["map", "--type", "D", "--m", "1", "--vector", "0"])),
        2
    );
}

#[test]
fn fiber_listing() {
    let o = run(&[
        "fibers",
        "--type",
        "D",
        "--n",
        "5",
        "--m",
        "4",
        "--sigma",
        "2,-3,1,4,-5",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("2,-3,1,4,-5: 6 vectors, expected 6 PASS"));
    for v in [
        "2,1,-2,2,-3",
        "2,1,-2,2,-4",
        "2,1,-2,3,-4",
        "3,1,-2,3,-4",
        "3,1,-3,3,-4",
        "3,2,-3,3,-4",
    ] {
        assert!(text.contains(&format!("  {v}\n")), "{v}");
    }
    assert_eq!(
        code(&run(&[
            "fibers", "--type", "D", "--n", "3", "--m", "2", "--sigma", "-1,2,3"
        ])),
        2
    );
}

#[test]
fn fiber_dump_round_trip() {
    let dump = stdout(&run(&[
        "--format", "json", "fibers", "--type", "D", "--n", "3", "--m", "2",
    ]));
    let reports: Value = serde_json::from_str(&dump).unwrap();
    assert_eq!(reports.as_array().unwrap().len(), 24);

    let o = run_with_stdin(&["reverify", "--dump", "-", "--format", "json"], &dump);
    assert_eq!(code(&o), 0);
    let checks: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for c in checks.as_array().unwrap() {
        assert_eq!(c["recorded"], c["recomputed"]);
    }

    let mut tampered = reports.clone();
    let vectors = tampered[0]["vectors"].as_array_mut().unwrap();
    vectors.pop();
    let o = run_with_stdin(&["reverify", "--dump", "-"], &tampered.to_string());
    assert_eq!(code(&o), 1);
    assert!(stdout(&o)
        .lines()
        .next()
        .unwrap()
        .ends_with("recomputed FAIL"));

    let single = stdout(&run(&[
        "--format", "json", "fibers", "--type", "B", "--n", "2", "--m", "1", "--sigma", "1,-2",
    ]));
    assert_eq!(
        code(&run_with_stdin(&["reverify", "--dump", "-"], &single)),
        0
    );
}

#[test]
fn missing_census() {
    let o = run(&["missing", "--n", "2", "--m", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("total 4, weight 2 + 2*q"));

    let v: Value = serde_json::from_str(&stdout(&run(&[
        "--format", "json", "missing", "--n", "3", "--m", "1",
    ])))
    .unwrap();
    assert_eq!(v["closed_forms"]["A"], 3);
    assert_eq!(v["closed_forms"]["B"], 5);
    assert_eq!(v["closed_forms"]["total"], 12);
    assert_eq!(
        v["closed_forms"]["total_weight"],
        serde_json::json!([3, 6, 3])
    );
    assert_eq!(v["pass"], true);

    let csv = stdout(&run(&[
        "--format", "csv", "missing", "--n", "2", "--m", "1",
    ]));
    assert!(csv.starts_with("case,count,weight\ncase1,2,2\n"));
}

#[test]
fn output_ignores_thread_count() {
    let args = ["--format", "json", "missing", "--n", "4", "--m", "2"];
    let base = stdout(&run(&args));
    for threads in ["1", "3"] {
        let mut with = vec!["--threads", threads];
        with.extend_from_slice(&args);
        assert_eq!(stdout(&run(&with)), base);
    }
    let via_env = Command::new(env!("CARGO_BIN_EXE_worpitzky"))
        .args(args)
        .env("WORPITZKY_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&via_env), base);
}

#[test]
fn oeis_checks() {
    assert_eq!(
        code(&run(&["oeis-check", "--seq", "A060187", "--max-n", "5"])),
        0
    );
    assert_eq!(
        code(&run(&["oeis-check", "--seq", "A262226", "--max-n", "5"])),
        0
    );

    let dir = std::env::temp_dir().join(format!("worpitzky-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "1 1\n2 1\n3 1\n4 1\n5 7\n6 1\n").unwrap();
    let o = run(&[
        "oeis-check",
        "--seq",
        "A060187",
        "--max-n",
        "2",
        "--bfile",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    std::fs::remove_dir_all(&dir).unwrap();

    // unreachable host: warns and falls back to the bundled file
    let o = run(&[
        "oeis-check",
        "--seq",
        "A262226",
        "--max-n",
        "4",
        "--fetch",
        "http://127.0.0.1:9/b.txt",
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn worked_examples_pass() {
    let o = run(&["worked-examples"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 6);
    assert!(stdout(&o).lines().all(|l| l.ends_with("PASS")));
}
