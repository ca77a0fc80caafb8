//! Runs the full identity suite on the Petersen graph and the honeycomb
//! lattice and prints one line per identity.
//!
//! cargo run --release --example cross_check

use qwzeta::crosscheck::{check_graph, check_voltage, CrossCheckOptions, CrossCheckReport};
use qwzeta::generators::{honeycomb, petersen};

fn show(title: &str, report: &CrossCheckReport) {
    println!("{title}");
    for e in &report.entries {
        let status = if e.passed { "ok  " } else { "FAIL" };
        println!("  {status} {:<30} {:>10.2e} <= {:.0e}   {}", e.name, e.max_residual, e.tolerance, e.worst_case);
    }
}

fn main() -> qwzeta::Result<()> {
    let opts = CrossCheckOptions::default();
    show("Petersen graph", &check_graph(&petersen(), &opts)?);
    show("honeycomb lattice", &check_voltage(&honeycomb(), &opts)?);
    Ok(())
}
