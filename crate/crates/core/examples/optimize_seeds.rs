//! Community-restricted hawk optimizer on a synthetic network, with its
//! convergence trace written to `trace.csv` in the temp directory.

use std::fs::File;

use seedhawk::graph::planted_partition;
use seedhawk::harness::{community_stage, ExperimentConfig};
use seedhawk::hho::{optimize, write_trace_csv, HhoConfig};
use seedhawk::influence::{lie, EstimatorParams, LieFitness};

fn main() -> seedhawk::Result<()> {
    let g = planted_partition(4, 50, 0.15, 0.01, 2);
    let k = 6;
    let stage = community_stage(&g, k, &ExperimentConfig::default())?;

    let cfg = HhoConfig {
        seed: 11,
        ..HhoConfig::new(k)
    };
    let params = EstimatorParams::new(0.1)?;
    let mut fitness = LieFitness::new(&stage.pruned, params);
    let out = optimize(&stage.pruned, &stage.plan, &cfg, &mut fitness)?;

    println!("seeds {:?}", out.seeds.sorted());
    println!(
        "LIE on pruned graph {:.3}, on full graph {:.3}",
        out.fitness,
        lie(&g, out.seeds.nodes(), params)?
    );
    println!(
        "branch counts (explore, soft, hard, soft dive, hard dive) {:?}",
        out.phase_counts
    );
    let first = out.trace.first().unwrap().best_fitness;
    println!(
        "best fitness {first:.3} -> {:.3} over {} iterations",
        out.fitness,
        out.trace.len() - 1
    );

    let path = std::env::temp_dir().join("trace.csv");
    write_trace_csv(&out.trace, File::create(&path)?)?;
    println!("trace written to {}", path.display());
    Ok(())
}
