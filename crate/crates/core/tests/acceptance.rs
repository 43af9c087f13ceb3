//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! Exits non-zero if any criterion fails.
//!
//! Positional arguments restrict the run to those criterion ids, e.g.
//! `cargo test --test acceptance -- 7 11`. Flags are ignored.

use std::process::ExitCode;

use contikit::audit::{run, AuditConfig, CRITERIA};

fn main() -> ExitCode {
    let ids: Vec<u8> = CRITERIA.iter().map(|(id, _)| *id).collect();
    assert_eq!(ids, (1..=13).collect::<Vec<u8>>(), "criteria table is incomplete");

    let wanted: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let config = AuditConfig::default();
    println!("acceptance: seed {:#x}, {} random systems", config.seed, config.systems);

    let mut failed = Vec::new();
    for id in ids.into_iter().filter(|id| wanted.is_empty() || wanted.contains(id)) {
        let outcome = run(id, &config);
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{verdict} [{id:>2}] {}: {}", outcome.topic, outcome.detail);
        if !outcome.passed {
            failed.push(id);
        }
    }

    if failed.is_empty() {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
