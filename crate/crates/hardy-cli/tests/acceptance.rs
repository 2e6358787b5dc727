//! Runs every acceptance criterion at the default configuration and prints
//! one PASS/FAIL line per criterion. Lines go straight to stderr so they
//! show up even when the harness captures output.

use std::io::Write;

use hardy_cli::config::RunConfig;
use hardy_cli::suite::{run_criterion, CRITERIA};

#[test]
fn acceptance_criteria() {
    let cfg = RunConfig::default();
    let mut err = std::io::stderr().lock();
    let mut failed = Vec::new();
    for id in 1..=CRITERIA.len() {
        let r = run_criterion(&cfg, id);
        let status = if r.pass { "PASS" } else { "FAIL" };
        writeln!(
            err,
            "{status} criterion {id}: {} ({}/{} instances, worst residual {:e})",
            r.name, r.passed, r.instances, r.worst_residual
        )
        .unwrap();
        for note in &r.notes {
            writeln!(err, "    {note}").unwrap();
        }
        if !r.pass {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
