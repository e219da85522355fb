//! Independent Cascade simulation.
//!
//! Every replicate gets its own ChaCha stream derived from the master seed and
//! the replicate index, so results do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// One IC cascade from `seeds`. Each newly active node makes one Bernoulli(`p`)
/// attempt per inactive neighbor. Returns the active set in activation order.
pub fn ic_run<R: Rng + ?Sized>(g: &Graph, seeds: &[NodeId], p: f64, rng: &mut R) -> Vec<NodeId> {
    let mut active = vec![false; g.node_count()];
    let mut infected = Vec::with_capacity(seeds.len());
    for &s in seeds {
        if !active[s] {
            active[s] = true;
            infected.push(s);
        }
    }
    let mut head = 0;
    while head < infected.len() {
        let u = infected[head];
        head += 1;
        for &v in g.neighbors(u) {
            if !active[v] && rng.random::<f64>() < p {
                active[v] = true;
                infected.push(v);
            }
        }
    }
    infected
}

/// Averaged outcome of repeated cascades.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionResult {
    pub runs: usize,
    pub mean_infected: f64,
    /// Final infected scale, `mean_infected / n`.
    pub fis: f64,
    /// Sample standard deviation of the per-run infected fraction.
    pub fis_std: f64,
    pub per_run_infected: Vec<usize>,
}

impl DiffusionResult {
    /// Standard error of `fis`.
    pub fn fis_stderr(&self) -> f64 {
        self.fis_std / (self.runs as f64).sqrt()
    }
}

/// RNG of replicate `run` under `master_seed`.
pub fn replicate_rng(master_seed: u64, run: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(run as u64);
    rng
}

/// Mean IC spread of `seeds` over `runs` replicates, run in parallel.
pub fn fis(g: &Graph, seeds: &[NodeId], p: f64, runs: usize, master_seed: u64) -> Result<DiffusionResult> {
    if runs == 0 {
        return Err(Error::InvalidArgument("runs must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let n = g.node_count();
    if let Some(&id) = seeds.iter().find(|&&s| s >= n) {
        return Err(Error::NodeOutOfRange { id, n });
    }
    let per_run_infected: Vec<usize> = (0..runs)
        .into_par_iter()
        .map(|run| ic_run(g, seeds, p, &mut replicate_rng(master_seed, run)).len())
        .collect();
    let mean_infected = per_run_infected.iter().sum::<usize>() as f64 / runs as f64;
    let fis = mean_infected / n as f64;
    let fis_std = if runs > 1 {
        let var = per_run_infected
            .iter()
            .map(|&c| (c as f64 / n as f64 - fis).powi(2))
            .sum::<f64>()
            / (runs - 1) as f64;
        var.sqrt()
    } else {
        0.0
    };
    Ok(DiffusionResult {
        runs,
        mean_infected,
        fis,
        fis_std,
        per_run_infected,
    })
}
