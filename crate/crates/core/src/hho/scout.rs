use rand::Rng;

use super::{decode, Hawk};
use crate::community::BudgetPlan;
use crate::graph::Graph;
use crate::influence::SeedFitness;

/// Local search that swaps seeds for their neighbors.
///
/// Seeds are visited in ascending degree (then id). For every neighbor of a
/// seed whose degree exceeds `threshold`, a fair coin decides whether the swap
/// is tried. A swap is kept only if the neighbor is a candidate of the same
/// community group, is not already a seed, and strictly raises fitness. The
/// two nodes exchange position entries so the hawk still decodes to its seed
/// set; a swap whose position would decode differently is dropped.
pub fn neighbor_scout<F, R>(
    hawk: &mut Hawk,
    g: &Graph,
    threshold: usize,
    plan: &BudgetPlan,
    fitness: &mut F,
    rng: &mut R,
) where
    F: SeedFitness + ?Sized,
    R: Rng + ?Sized,
{
    let mut order = hawk.seeds.clone();
    order.sort_by_key(|&v| (g.degree(v), v));

    for original in order {
        let degree = g.degree(original);
        let mut occupant = original;
        for &neighbor in g.neighbors(original) {
            let draw: f64 = rng.random();
            if !(draw > 0.5 && degree > threshold) {
                continue;
            }
            if hawk.seeds.contains(&neighbor) {
                continue;
            }
            let (Some(in_idx), Some(out_idx)) = (plan.pool_index(neighbor), plan.pool_index(occupant)) else {
                continue;
            };
            if plan.pool_group(in_idx) != plan.pool_group(out_idx) {
                continue;
            }
            let candidate: Vec<_> = hawk
                .seeds
                .iter()
                .map(|&s| if s == occupant { neighbor } else { s })
                .collect();
            let value = fitness.evaluate(&candidate);
            if value <= hawk.fitness {
                continue;
            }
            let mut position = hawk.position.clone();
            position.swap(in_idx, out_idx);
            let mut decoded = decode(&position, plan);
            let mut expected = candidate.clone();
            decoded.sort_unstable();
            expected.sort_unstable();
            if decoded != expected {
                continue;
            }
            hawk.position = position;
            hawk.seeds = decode(&hawk.position, plan);
            hawk.fitness = value;
            occupant = neighbor;
        }
    }
}
