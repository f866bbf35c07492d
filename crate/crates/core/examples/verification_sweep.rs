// Runs the compiled-in `duplication` and `corollary` sweeps, writes their
// CSV reports to the temp directory and prints the summaries.

use legendre_mellin::verify::{emit_report, run_sweep, Identity, SweepSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("legendre-mellin-example");
    std::fs::create_dir_all(&dir)?;
    for identity in [Identity::Duplication, Identity::Corollary] {
        let spec = SweepSpec::with_defaults(identity, 7)?;
        let report = run_sweep(&spec);
        let path = dir.join(format!("{identity}.csv"));
        emit_report(&report.records, &path)?;
        println!("{}", report.summary);
        println!("  -> {}", path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("sweep example");
}
