//! Runs one verification suite from code.
//!
//! Run with `cargo run --release --example verify_suite -- lemma-3-2 4`.

use coxspine::suites::{run_suite, SuiteOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let suite = args.next().unwrap_or_else(|| "lemma-3-2".to_string());
    let n: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(4);
    let report = run_suite(&suite, n, &SuiteOptions::default())?;
    println!("{}", serde_json::to_string_pretty(&report.to_json_value())?);
    Ok(())
}
