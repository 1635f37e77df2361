use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const TRIANGLE: &str = "c odd triangle\np xnf 3 3\nx 1 2 0\nx 2 3 0\nx 1 3 0\n";

fn xorsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xorsig")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn lines(o: &Output) -> Vec<String> {
    let mut v: Vec<String> = stdout(o).lines().map(str::to_string).collect();
    v.sort();
    v
}

#[test]
fn all_lists_the_four_triangle_signatures() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.xnf", TRIANGLE);
    let out = xorsig(&["all", &f]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "110\n101\n011\n000\n");
}

#[test]
fn every_engine_agrees_on_counts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.xnf", TRIANGLE);
    for engine in ["exact", "supergraph", "proximity", "brute"] {
        let out = xorsig(&["max", "--engine", engine, &f, "--count-only"]);
        assert_eq!(stdout(&out), "3\n", "max via {engine}");
        let out = xorsig(&["min", "--engine", engine, &f, "--count-only"]);
        assert_eq!(stdout(&out), "1\n", "min via {engine}");
        let out = xorsig(&["max", "--engine", engine, &f]);
        assert_eq!(lines(&out), ["011", "101", "110"], "max via {engine}");
    }
}

#[test]
fn check_reports_the_three_verdicts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.xnf", TRIANGLE);
    assert_eq!(stdout(&xorsig(&["check", "--sig", "110", &f])), "signature=true maximal=true minimal=false\n");
    assert_eq!(stdout(&xorsig(&["check", "--sig", "111", &f])), "signature=false maximal=false minimal=false\n");
    assert_eq!(stdout(&xorsig(&["check", "--sig", "000", &f])), "signature=true maximal=false minimal=true\n");
    assert_eq!(xorsig(&["check", "--sig", "11", &f]).status.code(), Some(1));
    assert_eq!(xorsig(&["check", "--sig", "1x0", &f]).status.code(), Some(1));
}

#[test]
fn ndjson_records_are_numbered_and_carry_witnesses() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.xnf", TRIANGLE);
    let out = xorsig(&["max", &f, "--format", "ndjson"]);
    let records: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 3);
    for (k, r) in records.iter().enumerate() {
        assert_eq!(r["seq"], k as u64 + 1);
        assert!(r["delay"].as_u64().is_some());
        assert_eq!(r["signature"].as_str().unwrap().len(), 3);
        assert_eq!(r["witness"].as_str().unwrap().len(), 3);
    }
    let out = xorsig(&["all", &f, "--format", "ndjson"]);
    let first: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert!(first.get("witness").is_none());
    let out = xorsig(&["all", &f, "--format", "ndjson", "--witness"]);
    let first: serde_json::Value = serde_json::from_str(stdout(&out).lines().next().unwrap()).unwrap();
    assert!(first.get("witness").is_some());
}

#[test]
fn limit_truncates_and_count_only_counts() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.xnf", TRIANGLE);
    assert_eq!(stdout(&xorsig(&["all", &f, "--limit", "2"])).lines().count(), 2);
    assert_eq!(stdout(&xorsig(&["all", &f, "--limit", "2", "--count-only"])), "2\n");
    assert_eq!(stdout(&xorsig(&["all", &f, "--count-only"])), "4\n");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.xnf", TRIANGLE);
    let wide = write(&dir, "wide.xnf", "p xnf 3 2\nx 1 2 0\nx 1 2 3 0\n");
    let bad = write(&dir, "bad.xnf", "p xnf 2 1\nx 1 5 0\n");

    assert_eq!(xorsig(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(xorsig(&["all"]).status.code(), Some(1));
    assert_eq!(xorsig(&["all", "/nonexistent/file.xnf"]).status.code(), Some(1));

    let out = xorsig(&["all", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = xorsig(&["max", "--engine", "proximity", &wide]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("clause 2 has 3 variables"));

    assert_eq!(xorsig(&["max", "--rank-cap", "1", &tri]).status.code(), Some(3));
    assert_eq!(xorsig(&["max", "--engine", "brute", "--var-cap", "2", &tri]).status.code(), Some(3));
    assert_eq!(xorsig(&["--help"]).status.code(), Some(0));
}

#[test]
fn reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_xorsig"))
        .args(["stats", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(TRIANGLE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "n=3 m=3 rank=2 components=1 max_width=2\n");
}

#[test]
fn reduce3sat_solves_the_example() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "ex.cnf", "c example\np cnf 3 3\n1 2 3 0\n-1 2 3 0\n-1 2 -3 0\n");
    let out = xorsig(&["reduce3sat", &cnf, "--solve"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# A: 1 2 3\n# B: 19 20 21\n"));
    let assignment = text.lines().find_map(|l| l.strip_prefix("# assignment: ")).unwrap();
    let v: Vec<bool> = assignment.chars().map(|c| c == '1').collect();
    let clauses: [&[i32]; 3] = [&[1, 2, 3], &[-1, 2, 3], &[-1, 2, -3]];
    assert!(clauses.iter().all(|c| c.iter().any(|&l| v[l.unsigned_abs() as usize - 1] == (l > 0))));
    assert_eq!(text.lines().filter(|l| l.starts_with("edge ")).count(), 21);

    // The XNF form is readable by the other subcommands.
    let out = xorsig(&["reduce3sat", &cnf, "--emit", "xnf"]);
    let xnf = write(&dir, "graph.xnf", &stdout(&out));
    let stats = stdout(&xorsig(&["stats", &xnf]));
    assert!(stats.starts_with("n=10 m=21 "), "{stats}");

    let unsat = write(&dir, "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    let text = stdout(&xorsig(&["reduce3sat", &unsat, "--solve"]));
    assert!(text.contains("no extension"));
    let long = write(&dir, "long.cnf", "p cnf 4 1\n1 2 3 4 0\n");
    assert_eq!(xorsig(&["reduce3sat", &long]).status.code(), Some(3));
    let broken = write(&dir, "broken.cnf", "p cnf 1 1\n1 x 0\n");
    assert_eq!(xorsig(&["reduce3sat", &broken]).status.code(), Some(2));
}

#[test]
fn bench_is_deterministic_in_outputs() {
    let run = || {
        let out = xorsig(&["bench", "--instances", "3", "--vars", "6", "--clauses", "10", "--format", "ndjson"]);
        assert!(out.status.success());
        stdout(&out)
            .lines()
            .map(|l| {
                let v: serde_json::Value = serde_json::from_str(l).unwrap();
                (v["engine"].as_str().unwrap().to_string(), v["outputs"].as_u64().unwrap())
            })
            .collect::<Vec<_>>()
    };
    let a = run();
    assert_eq!(a.len(), 5);
    assert_eq!(a, run());
    // Both general engines and both 2-XOR engines list the same number.
    assert_eq!(a[1].1, a[2].1);
    assert_eq!(a[3].1, a[4].1);
}
