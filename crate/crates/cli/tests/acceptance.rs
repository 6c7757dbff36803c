//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use lperiodic_cli::repro::{self, Verdict};
use lperiodic_cli::CliResult;
use std::process::{Command, ExitCode};
use std::time::Instant;

fn cli_json(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_lperiodic")).args(args).output().expect("binary runs");
    assert!(out.status.success(), "lperiodic {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

/// The performance row plus two identical CLI invocations.
fn performance() -> CliResult<Verdict> {
    let mut v = repro::performance()?;
    let args = ["apoints", "--q", "1", "--a", "1+0i", "--t2", "9900"];
    let start = Instant::now();
    let first = cli_json(&args);
    let seconds = start.elapsed().as_secs_f64();
    let second = cli_json(&args);
    let identical = first == second;
    v.passed &= identical;
    v.summary = format!("{}; CLI run {seconds:.2}s, {} bytes, byte-identical: {identical}", v.summary, first.len());
    Ok(v)
}

type Row = fn() -> CliResult<Verdict>;

fn main() -> ExitCode {
    let rows: Vec<(u8, Row)> = vec![
        (1, repro::gram_oracle),
        (2, || repro::theorem1(&repro::count_families(), &repro::COUNT_HEIGHTS)),
        (3, || repro::theorem2(2000.0)),
        (4, || repro::theorem3(&repro::POWER_HEIGHTS, &repro::POWER_BASES)),
        (5, || repro::theorem4(5000)),
        (6, || repro::theorem5(5000)),
        (7, repro::identities),
        (8, repro::real_part_law),
        (9, performance),
    ];
    let mut failures = 0;
    for (id, row) in rows {
        match row() {
            Ok(v) => {
                let tag = if v.passed { "PASS" } else { "FAIL" };
                println!("criterion {id} [{tag}] {}: {}", v.name, v.summary);
                failures += usize::from(!v.passed);
            }
            Err(e) => {
                println!("criterion {id} [FAIL] error: {e}");
                failures += 1;
            }
        }
    }
    println!("{} criteria failed", failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
