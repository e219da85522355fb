//! Spreader-fraction sweep over every method, then a method comparison.
//! Same pipeline as `seedhawk fis-sweep` followed by `seedhawk compare`.

use seedhawk::graph::planted_partition;
use seedhawk::harness::{compare, fis_sweep, Dataset, ExperimentConfig};

fn main() -> seedhawk::Result<()> {
    let ds = Dataset::new("planted", planted_partition(4, 50, 0.12, 0.01, 6));
    let cfg = ExperimentConfig::from_text("fractions=0.02,0.04,0.06,0.08\nruns=200\niters=30\n")?;

    let records = fis_sweep(&ds, &cfg)?;
    for r in &records {
        println!(
            "{:<7} f={:<5} k={:<3} FIS {:.4}  LIE {:.2}",
            r.method, r.fraction, r.k, r.fis_mean, r.lie
        );
    }
    let report = compare(&records)?;
    println!("best ranked: {} (Friedman p {:.4})", report.control, report.chi2_p);
    Ok(())
}
