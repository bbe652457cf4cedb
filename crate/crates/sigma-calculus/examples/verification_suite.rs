//! The full verification suite through the library API: every identity the
//! crate implements, checked on seeded fixtures, with a deterministic JSON
//! report. The `sigma-verify` binary is a thin wrapper around exactly this.
//!
//! ```bash
//! cargo run --example verification_suite
//! ```

use sigma_calculus::{run_suite, SuiteConfig, SuiteName};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig {
        seed: 42,
        trials: 20,
        suites: vec![
            SuiteName::Algebra,
            SuiteName::Maps,
            SuiteName::Leibniz,
            SuiteName::Dynamics,
            SuiteName::Quasinil,
        ],
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg)?;
    print!("{}", report.render_table());

    println!("\nReports are deterministic for a fixed config (byte-identical");
    println!("JSON, wall_ms aside). First entry as JSON:");
    let json = report.to_json();
    println!(
        "{}",
        serde_json::to_string_pretty(&json["entries"][0]).unwrap()
    );

    let anchors: std::collections::BTreeSet<&str> = report
        .entries
        .iter()
        .map(|e| e.anchor.as_str())
        .collect();
    println!("\n{} entries covering {} identity tags:", report.entries.len(), anchors.len());
    println!("{}", anchors.into_iter().collect::<Vec<_>>().join(", "));
    Ok(())
}
