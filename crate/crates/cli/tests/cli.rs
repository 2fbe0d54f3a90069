use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn wordgrid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordgrid"))
        .args(args)
        .env_remove("WORDGRID_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn count_reports_total_and_weights() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.wg1", "WG1 d=2 n=3 sigma=AM\nAAA\nAMM\nAMM\n");
    let out = wordgrid(&["count", "--grid", &g, "--word", "AMM"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "total=5\nweight=1 count=4\nweight=2 count=1\n");
    let out = wordgrid(&["count", "--grid", &g, "--word", "AMM", "--matches"]);
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("line=")).count(), 5);
}

#[test]
fn lines_and_segments() {
    let out = wordgrid(&["lines", "-n", "3", "-d", "3"]);
    assert_eq!(
        stdout(&out),
        "weight=1 count=27\nweight=2 count=18\nweight=3 count=4\ntotal=49\n"
    );
    let out = wordgrid(&["lines", "-n", "3", "-d", "2", "--list"]);
    assert_eq!(stdout(&out).lines().count(), 3 + 8);
    let out = wordgrid(&["segments", "-n", "4", "-d", "2", "-k", "2"]);
    assert_eq!(stdout(&out), "total=42\n");
}

#[test]
fn construct_output_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = wordgrid(&["construct", "--word", "AMM"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("# construction=cross(M) guaranteed=5 achieved=5\n"));
    let g = write(dir.path(), "c.wg1", &text);
    let out = wordgrid(&["count", "--grid", &g, "--word", "AMM"]);
    assert!(stdout(&out).starts_with("total=5\n"));

    let path = dir.path().join("p.wg1");
    let out = wordgrid(&[
        "construct",
        "--word",
        "AM",
        "-d",
        "3",
        "--method",
        "parity",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("achieved=16"));
    assert!(fs::read_to_string(&path).unwrap().contains("WG1 d=3 n=2 sigma=AM"));

    let out = wordgrid(&["construct", "--word", "AMAAM", "--method", "quad"]);
    assert!(stdout(&out).contains("guaranteed=8"));
    let out = wordgrid(&["construct", "--word", "AMA", "--method", "counterpoint", "-d", "3"]);
    assert_eq!(code(&out), 0);
    let out = wordgrid(&["construct", "--word", "AMM", "--method", "parity"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn bounds_table() {
    let out = wordgrid(&["bounds", "--word", "AMM"]);
    let text = stdout(&out);
    assert!(text.contains("rule=asymmetric-pair value=6\n"));
    assert!(text.contains("lower=5 via=cross(M)\nupper=6\nexact=5 via=two-block\n"));
    let out = wordgrid(&["bounds", "--word", "ABC"]);
    assert!(stdout(&out).ends_with("upper=6\nexact=none\n"));
}

#[test]
fn solve_writes_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let wit = dir.path().join("w");
    let out = wordgrid(&[
        "solve",
        "--word",
        "AMM",
        "-d",
        "3",
        "--all-optima",
        "--out",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("optimum=28\nclasses=3\n"));
    let files: Vec<_> = fs::read_dir(&wit).unwrap().collect();
    assert_eq!(files.len(), 3);
    let first = wit.join("witness_001.wg1");
    let out = wordgrid(&["count", "--grid", first.to_str().unwrap(), "--word", "AMM"]);
    assert!(stdout(&out).starts_with("total=28\n"));
    let out = wordgrid(&["unfold", "--grid", first.to_str().unwrap(), "--word", "AMM"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).ends_with("f = 28\n"));
}

#[test]
fn solve_is_stable_across_thread_counts() {
    let a = wordgrid(&["solve", "--word", "AAMMM", "--threads", "1"]);
    let b = wordgrid(&["solve", "--word", "AAMMM", "--threads", "4"]);
    assert_eq!(stdout(&a), stdout(&b));
    let c = Command::new(env!("CARGO_BIN_EXE_wordgrid"))
        .args(["solve", "--word", "AAMMM"])
        .env("WORDGRID_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&a), stdout(&c));
    assert!(stdout(&a).starts_with("optimum=8\n"));
}

#[test]
fn budget_limited_solve_exits_3() {
    let out = wordgrid(&[
        "solve",
        "--word",
        "AMM",
        "-d",
        "3",
        "--no-symmetry",
        "--budget-nodes",
        "1",
        "--threads",
        "1",
    ]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("complete=false"));
}

#[test]
fn f1_and_estimate() {
    let out = wordgrid(&["f1", "--word", "ABCD", "-n", "7", "--witness"]);
    assert_eq!(stdout(&out), "f1=2\nwitness=ABCDCBA\n");
    let args = [
        "estimate",
        "--word",
        "AMM",
        "-d",
        "6",
        "--samples",
        "2000",
        "--seed",
        "4",
    ];
    let a = wordgrid(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&wordgrid(&args)));
    let missing_seed = wordgrid(&["estimate", "--word", "AMM", "-d", "6"]);
    assert_eq!(code(&missing_seed), 1);
}

#[test]
fn verify_fast_suite() {
    let out = wordgrid(&["verify"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("check=f(AMM,3,2) expected=5 got=5 status=pass\n"));
    assert!(text.lines().last().unwrap().ends_with("failed=0"));
}

#[test]
fn unfold_rejects_planar_grids() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.wg1", "WG1 d=2 n=3 sigma=AM\nAAA\nAMM\nAMM\n");
    let out = wordgrid(&["unfold", "--grid", &g]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unfold requires d=3 n=3"));
    let cube = write(
        dir.path(),
        "a.wg1",
        &format!("WG1 d=3 n=3 sigma=A\n{}", "AAA\n".repeat(9)),
    );
    let out = wordgrid(&["unfold", "--grid", &cube]);
    assert!(stdout(&out).ends_with("    AAA\ncenter = A\n"));
}

#[test]
fn input_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.wg1", "WG1 d=2 n=3 sigma=AM\nAAA\nAMM\n");
    let out = wordgrid(&["count", "--grid", &bad, "--word", "AMM"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 9 cells"));
    assert_eq!(
        code(&wordgrid(&["count", "--grid", "/nonexistent.wg1", "--word", "A"])),
        1
    );
    assert_eq!(code(&wordgrid(&["nonsense"])), 1);
    assert_eq!(code(&wordgrid(&["solve", "--word", "AMM", "-n", "4"])), 1);
    assert_eq!(code(&wordgrid(&["--help"])), 0);
}
