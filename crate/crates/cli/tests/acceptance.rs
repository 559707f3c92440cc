//! Runs `reflexa corpus run` with 8 workers and with 1 worker, prints one
//! line per acceptance criterion and fails if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

const TIME_LIMIT: Duration = Duration::from_secs(600);

fn corpus_run(workers: usize) -> (Vec<u8>, i32, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_reflexa"))
        .args(["corpus", "run", "--workers", &workers.to_string(), "--dim-budget", "4"])
        .env_remove("REFLEXA_BUDGET")
        .output()
        .expect("the reflexa binary runs");
    if !out.stderr.is_empty() {
        eprintln!("{}", String::from_utf8_lossy(&out.stderr));
    }
    (out.stdout, out.status.code().unwrap_or(-1), start.elapsed())
}

fn main() -> ExitCode {
    let (eight, code, elapsed) = corpus_run(8);
    let (one, _, _) = corpus_run(1);
    let report: serde_json::Value = match serde_json::from_slice(&eight) {
        Ok(v) => v,
        Err(e) => {
            println!("corpus run produced no report: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut all = true;
    for c in report["criteria"].as_array().into_iter().flatten() {
        let mut passed = c["passed"].as_bool() == Some(true);
        let mut note = String::new();
        if c["id"] == 1 {
            // the whole suite has to finish within the limit set for certification alone
            passed &= elapsed <= TIME_LIMIT;
            note = format!(" (suite {:.0} s, limit {} s)", elapsed.as_secs_f64(), TIME_LIMIT.as_secs());
        }
        all &= passed;
        println!("criterion {:>2} {:<28} {}{note}", c["id"], c["name"].as_str().unwrap_or("?"), if passed { "PASS" } else { "FAIL" });
        if !passed {
            println!("    {}", c["details"]);
        }
    }
    all &= report["criteria"].as_array().map_or(0, |a| a.len()) == 10;
    let identical = eight == one;
    all &= identical;
    println!("criterion 11 {:<28} {}", "determinism_workers_1_vs_8", if identical { "PASS" } else { "FAIL" });
    all &= code == 0;
    if all {
        ExitCode::SUCCESS
    } else {
        println!("exit status of corpus run: {code}");
        ExitCode::FAILURE
    }
}
