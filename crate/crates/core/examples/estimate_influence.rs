//! Closed-form spread estimates (LIE and EDV) next to a Monte-Carlo reference.

use seedhawk::diffusion::fis;
use seedhawk::graph::gnp;
use seedhawk::influence::{EdvFitness, EstimatorParams, LieFitness};

fn main() -> seedhawk::Result<()> {
    let g = gnp(300, 0.02, 3);
    let params = EstimatorParams::new(0.1)?;
    let mut lie = LieFitness::new(&g, params);
    let mut edv = EdvFitness::new(&g, params);

    println!("{:<16} {:>8} {:>8} {:>8}", "seeds", "LIE", "EDV", "IC");
    for seeds in [vec![0], vec![0, 1, 2], vec![10, 20, 30, 40, 50]] {
        let mc = fis(&g, &seeds, 0.1, 2000, 7)?;
        println!(
            "{:<16} {:>8.3} {:>8.3} {:>8.3}",
            format!("{seeds:?}"),
            lie.lie(&seeds)?,
            edv.edv(&seeds)?,
            mc.mean_infected
        );
    }
    Ok(())
}
