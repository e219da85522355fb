//! Centrality baselines and the seeds each one picks.

use seedhawk::baselines::{
    degree_rank, enc_rank, h_index_rank, kshell, pagerank, top_k, DEFAULT_DAMPING, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};
use seedhawk::diffusion::fis;
use seedhawk::graph::gnp;

fn main() -> seedhawk::Result<()> {
    let g = gnp(400, 0.015, 9);
    let k = 8;
    let rankings = [
        degree_rank(&g),
        pagerank(&g, DEFAULT_DAMPING, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?,
        h_index_rank(&g),
        enc_rank(&g),
    ];
    for r in &rankings {
        let seeds = top_k(r, k)?;
        let spread = fis(&g, seeds.nodes(), 0.1, 500, 0)?;
        println!("{:<8} {:?}  FIS {:.4}", r.method(), seeds.sorted(), spread.fis);
    }
    let ks = kshell(&g);
    println!("max k-shell {}", ks.iter().max().unwrap());
    Ok(())
}
