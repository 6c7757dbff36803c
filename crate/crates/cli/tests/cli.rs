use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lperiodic")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["selftest"]).status.code(), Some(0));
    assert_eq!(run(&["apoints", "--q", "0", "--t2", "100"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--s", "1+0i"]).status.code(), Some(2));
    assert_eq!(run(&["repro", "--theorem", "6"]).status.code(), Some(2));
}

#[test]
fn repro_theorem_one_single_family() {
    let out = run(&["repro", "--theorem", "1", "--q", "1", "--a", "1+0i", "--T", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let row = &v["detail"]["rows"][0];
    assert_eq!(row["report"]["computed"], 648);
    assert_eq!(row["contour_count"], 648);
    assert_eq!(v["passed"], true);
}

#[test]
fn cache_reuse_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let cache = cache.to_str().unwrap();
    let fresh = run(&["count", "--q", "3", "--parity", "odd", "--T", "200,500", "--cache", cache]);
    let cached = run(&["count", "--q", "3", "--parity", "odd", "--T", "200,500", "--cache", cache]);
    let plain = run(&["count", "--q", "3", "--parity", "odd", "--T", "200,500"]);
    assert_eq!(fresh.stdout, cached.stdout);
    assert_eq!(fresh.stdout, plain.stdout);
    let wrong = run(&["count", "--q", "5", "--T", "200", "--cache", cache]);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn csv_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "q = 1\nt2 = 60\nformat = csv\n").unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "apoints", "--t1", "40"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,beta,gamma,residual"));
    assert!(lines.next().unwrap().starts_with("7,"));
    std::fs::write(&cfg, "q = 1\nspeed = 3\n").unwrap();
    assert_eq!(run(&["--config", cfg.to_str().unwrap(), "selftest"]).status.code(), Some(2));
}
