//! Run the self-check suite and print one line per check.
//!
//! Usage: `cargo run --example verify -- [fast|full]`

use frw_entanglement::pipeline::{run_verify, VerifyLevel};
use std::time::Instant;

fn main() -> frw_entanglement::Result<()> {
    let level: VerifyLevel = std::env::args().nth(1).as_deref().unwrap_or("fast").parse()?;
    let start = Instant::now();
    let report = run_verify(level);
    for c in &report.checks {
        println!("{} {:<48} {}", if c.pass { "PASS" } else { "FAIL" }, c.check, c.actual);
    }
    println!("{level}: overall {} in {:.2?}", if report.overall { "pass" } else { "FAIL" }, start.elapsed());
    Ok(())
}
