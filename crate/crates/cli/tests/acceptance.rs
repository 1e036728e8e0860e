//! Runs every reproduction scenario at its stated tolerance and prints one
//! PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use corona_walk_cli::reproduce::SCENARIOS;

/// `(total limit, per-run limit)` in seconds for each scenario.
fn limits(id: u32) -> (f64, Option<f64>) {
    match id {
        1 => (30.0, None),
        2 => (120.0, None),
        3 => (30.0, None),
        4 => (5.0, None),
        6 => (30.0, None),
        8 => (7.0 * 60.0, Some(60.0)),
        9 => (6.0 * 120.0, Some(120.0)),
        11 => (3.0 * 120.0, Some(120.0)),
        13 => (60.0, None),
        _ => (300.0, None),
    }
}

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    for s in SCENARIOS {
        let start = Instant::now();
        let report = s.run();
        let elapsed = start.elapsed();
        let (total, per_run) = limits(s.id);
        let slow_runs: Vec<String> = report
            .checks
            .iter()
            .filter_map(|c| c.elapsed.filter(|d| per_run.is_some_and(|lim| *d > Duration::from_secs_f64(lim))).map(|d| format!("{} took {d:.1?}", c.name)))
            .collect();
        let in_time = elapsed.as_secs_f64() < total && slow_runs.is_empty();
        let pass = report.passed && in_time;
        println!("criterion {:>2} {}: {} ({:.2} s)", s.id, if pass { "PASS" } else { "FAIL" }, s.description, elapsed.as_secs_f64());
        for c in &report.checks {
            println!(
                "    {} {} = {:e} ({} {:e}){}",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.value,
                c.relation,
                c.threshold,
                c.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default()
            );
        }
        if !in_time {
            println!("    FAIL runtime limit {total} s{}", if slow_runs.is_empty() { String::new() } else { format!("; {}", slow_runs.join("; ")) });
        }
        if !pass {
            failed.push(s.id);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
