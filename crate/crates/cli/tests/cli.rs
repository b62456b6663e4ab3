use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lambdacc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambdacc")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lambdacc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_weak_beta() {
    let o = lambdacc(&["reduce", "--strategy", "weak-beta", "(\\x.!x)!z"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "!z\n");
}

#[test]
fn reduce_json_trace() {
    let o = lambdacc(&["reduce", "--strategy", "leftmost", "--rules", "beta-c,id", "--json", "(\\y.(\\x.!x)!y)(z!z)"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "normal_form");
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
    assert_eq!(v["counts"]["beta_c"], 1);
}

#[test]
fn fuel_from_environment() {
    let grow = "(\\x.(\\y.x!x)(x!x))!(\\x.(\\y.x!x)(x!x))";
    let o = Command::new(env!("CARGO_BIN_EXE_lambdacc"))
        .args(["reduce", "--json", grow])
        .env("LAMBDACC_FUEL", "3")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "fuel_exhausted");
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
}

#[test]
fn random_reduction_is_reproducible() {
    let args = ["reduce", "--strategy", "full-random", "--seed", "11", "--json", "(\\x.!x)((\\y.!y)((\\w.!w)!z))"];
    let a = lambdacc(&args);
    let b = lambdacc(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn halts_and_normalize() {
    assert_eq!(stdout(&lambdacc(&["halts", "(\\x.x!x)!(\\x.x!x)"])), "false\n");
    assert_eq!(stdout(&lambdacc(&["halts", "(\\x.x!x)((\\y.!(\\x.x!x))(z!z))"])), "true\n");
    assert_eq!(stdout(&lambdacc(&["normalize", "(\\y.(\\x.!x)!y)(z!z)"])), "z!z\n");
}

#[test]
fn translate_reads_stdin() {
    assert_eq!(stdout(&with_stdin(&["translate", "--to", "ml"], "x(z!z)\n")), "let y = z z in x y\n");
    assert_eq!(stdout(&with_stdin(&["translate", "--to", "kernel"], "!(\\x.!x)")), "\\x.x\n");
    assert_eq!(stdout(&with_stdin(&["translate", "--to", "star"], "z!z")), "unit z * z\n");
}

#[test]
fn measure_and_enumerate() {
    assert_eq!(stdout(&lambdacc(&["measure", "z!z"])), "2 4\n");
    assert_eq!(stdout(&lambdacc(&["measure", "\\x.!x"])), "2 2\n");
    assert_eq!(stdout(&lambdacc(&["enumerate", "--max-nodes", "3", "--closed"])), "!(\\x.!x)\n");
    assert_eq!(stdout(&lambdacc(&["enumerate", "--max-nodes", "1"])), "!z\n");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(lambdacc(&["parse", "(\\x.!x"]).status.code(), Some(2));
    assert_eq!(lambdacc(&["check", "--property", "nonsense"]).status.code(), Some(2));
    assert_eq!(lambdacc(&["reduce", "--fuel", "0", "!z"]).status.code(), Some(2));
    assert_eq!(lambdacc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn gallery_passes() {
    let o = lambdacc(&["gallery"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().count() >= 10);
    assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
}

#[test]
fn weak_factorization_reports_the_expected_failure() {
    let o = lambdacc(&["check", "--property", "weak-fact"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["expect_fail"], true);
    assert_eq!(v["witnesses"][0]["terms"][0], "(\\y.(\\x.!x)!y)(z!z)");
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS weak-fact"));
}

#[test]
fn check_output_does_not_depend_on_jobs() {
    let a = lambdacc(&["--jobs", "1", "check", "--property", "measure-descent", "--closed-nodes", "7", "--open-nodes", "5"]);
    let b = lambdacc(&["--sequential", "check", "--property", "measure-descent", "--closed-nodes", "7", "--open-nodes", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
