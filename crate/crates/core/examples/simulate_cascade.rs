//! Independent Cascade: one traced cascade, then replicated averages.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use seedhawk::diffusion::{fis, ic_run};
use seedhawk::graph::gnp;

fn main() -> seedhawk::Result<()> {
    let g = gnp(500, 0.01, 4);
    let seeds = [0, 1, 2];

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let cascade = ic_run(&g, &seeds, 0.2, &mut rng);
    println!("single cascade reached {} nodes", cascade.len());

    for p in [0.05, 0.1, 0.2, 0.3] {
        let r = fis(&g, &seeds, p, 1000, 42)?;
        println!("p = {p:<4}  FIS {:.4} +- {:.4}", r.fis, r.fis_stderr());
    }
    Ok(())
}
