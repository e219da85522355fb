//! Discrete Harris' hawks optimizer over a community-restricted candidate pool.
//!
//! Each hawk carries a real position vector with one entry per candidate
//! node. Its seed set is the `budget` highest-valued candidates of every
//! significant community, so the continuous update rules of the classic
//! optimizer steer a discrete selection.

mod levy;
mod scout;
mod update;

use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::community::BudgetPlan;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::influence::SeedFitness;
use crate::seeds::SeedSet;

pub use levy::{levy_flight, mantegna_sigma, LevyFlight, LEVY_SCALE};
pub use scout::neighbor_scout;
pub use update::{
    choose_dive, dive_candidates, escaping_energy, explore_update, hard_besiege, jump_strength, jump_strength_from,
    rapid_dive_update, soft_besiege, Bounds, Dive, DiveChoice, DiveMode, PerchDraws, Phase,
};

/// Optimizer settings.
#[derive(Debug, Clone, PartialEq)]
pub struct HhoConfig {
    pub k: usize,
    pub population: usize,
    pub iterations: usize,
    /// Neighbor-scout degree threshold `L`; `None` means `⌈mean degree⌉` of
    /// the graph being optimized.
    pub scout_threshold: Option<usize>,
    pub beta: f64,
    pub bounds: Bounds,
    pub seed: u64,
}

impl HhoConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            population: 20,
            iterations: 50,
            scout_threshold: None,
            beta: 1.5,
            bounds: Bounds::default(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.population < 2 {
            return bad(format!("population {} < 2", self.population));
        }
        if self.iterations < 1 {
            return bad("iterations must be at least 1".into());
        }
        if !(self.bounds.lower >= 0.0 && self.bounds.lower < self.bounds.upper) {
            return bad(format!(
                "bounds [{}, {}] must satisfy 0 <= LB < UB",
                self.bounds.lower, self.bounds.upper
            ));
        }
        LevyFlight::new(self.beta).map(|_| ())
    }

    fn threshold_for(&self, g: &Graph) -> usize {
        self.scout_threshold.unwrap_or_else(|| g.mean_degree().ceil() as usize)
    }
}

/// One candidate solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Hawk {
    pub position: Vec<f64>,
    pub seeds: Vec<NodeId>,
    pub fitness: f64,
}

/// Seed set encoded by `position`: within each community group the `budget`
/// candidates with the largest entries, ties broken by higher degree and then
/// lower node id.
pub fn decode(position: &[f64], plan: &BudgetPlan) -> Vec<NodeId> {
    assert_eq!(position.len(), plan.pool().len(), "position length must match the pool");
    let pool = plan.pool();
    let mut seeds = Vec::with_capacity(plan.k());
    let mut scratch = Vec::new();
    for group in plan.groups() {
        if group.budget == 0 {
            continue;
        }
        scratch.clear();
        scratch.extend_from_slice(&group.candidates);
        let rank = |&a: &usize, &b: &usize| {
            position[b]
                .total_cmp(&position[a])
                .then(plan.pool_degree(b).cmp(&plan.pool_degree(a)))
                .then(pool[a].cmp(&pool[b]))
        };
        if group.budget < scratch.len() {
            scratch.select_nth_unstable_by(group.budget - 1, rank);
            scratch.truncate(group.budget);
        }
        scratch.sort_by(rank);
        seeds.extend(scratch.iter().map(|&i| pool[i]));
    }
    seeds
}

/// Degree-proportional random position: entry `j` is `r / max_degree` with
/// `r` uniform on `1..=degree(j)`.
pub fn random_position<R: Rng + ?Sized>(g: &Graph, plan: &BudgetPlan, rng: &mut R) -> Vec<f64> {
    let max_degree = g.max_degree().max(1) as f64;
    (0..plan.pool().len())
        .map(|j| {
            let d = plan.pool_degree(j).max(1);
            rng.random_range(1..=d) as f64 / max_degree
        })
        .collect()
}

fn check_plan(plan: &BudgetPlan, cfg: &HhoConfig) -> Result<()> {
    if plan.pool().is_empty() || cfg.k > plan.pool().len() {
        return Err(Error::InfeasibleBudget {
            k: cfg.k,
            pool: plan.pool().len(),
        });
    }
    if plan.k() != cfg.k {
        return Err(Error::InvalidArgument(format!(
            "plan budgets sum to {} but k = {}",
            plan.k(),
            cfg.k
        )));
    }
    Ok(())
}

/// Random initial population, decoded and evaluated.
pub fn init_population<F, R>(
    g: &Graph,
    plan: &BudgetPlan,
    cfg: &HhoConfig,
    fitness: &mut F,
    rng: &mut R,
) -> Result<Vec<Hawk>>
where
    F: SeedFitness + ?Sized,
    R: Rng + ?Sized,
{
    check_plan(plan, cfg)?;
    Ok((0..cfg.population)
        .map(|_| {
            let position: Vec<f64> = random_position(g, plan, rng)
                .into_iter()
                .map(|v| cfg.bounds.clamp(v))
                .collect();
            let seeds = decode(&position, plan);
            let fitness = fitness.evaluate(&seeds);
            Hawk {
                position,
                seeds,
                fitness,
            }
        })
        .collect())
}

/// Best fitness after an iteration (iteration 0 is the initial population).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub iteration: usize,
    pub best_fitness: f64,
    pub wall_ms: f64,
}

/// Writes a trace as CSV `iteration,best_fitness,wall_ms`.
pub fn write_trace_csv<W: Write>(trace: &[TracePoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["iteration", "best_fitness", "wall_ms"])?;
    for p in trace {
        w.write_record([
            p.iteration.to_string(),
            p.best_fitness.to_string(),
            format!("{:.3}", p.wall_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Result of a full optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimized {
    pub seeds: SeedSet,
    pub fitness: f64,
    pub position: Vec<f64>,
    pub trace: Vec<TracePoint>,
    /// How often each update branch fired, in [`Phase`] declaration order.
    pub phase_counts: [usize; 5],
}

fn phase_slot(phase: Phase) -> usize {
    match phase {
        Phase::Explore => 0,
        Phase::SoftBesiege => 1,
        Phase::HardBesiege => 2,
        Phase::SoftDive => 3,
        Phase::HardDive => 4,
    }
}

fn mean_position(hawks: &[Hawk]) -> Vec<f64> {
    let dim = hawks[0].position.len();
    let mut mean = vec![0.0; dim];
    for h in hawks {
        for (m, &x) in mean.iter_mut().zip(&h.position) {
            *m += x;
        }
    }
    let n = hawks.len() as f64;
    mean.iter_mut().for_each(|m| *m /= n);
    mean
}

/// Runs the optimizer on `g` (normally the community-pruned graph).
///
/// Per iteration every hawk except the current rabbit draws `E0 ∈ [−1, 1]`,
/// derives `E` and `J`, applies the branch picked by [`Phase::select`],
/// is re-decoded and re-evaluated, and then runs the neighbor scout. The
/// rabbit and mean position are frozen at the start of each iteration and
/// the rabbit is replaced only by a strictly fitter hawk at its end.
pub fn optimize<F>(g: &Graph, plan: &BudgetPlan, cfg: &HhoConfig, fitness: &mut F) -> Result<Optimized>
where
    F: SeedFitness + ?Sized,
{
    cfg.validate()?;
    check_plan(plan, cfg)?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let levy = LevyFlight::new(cfg.beta)?;
    let threshold = cfg.threshold_for(g);
    let bounds = cfg.bounds;

    let mut hawks = init_population(g, plan, cfg, fitness, &mut rng)?;
    let mut rabbit_idx = best_index(&hawks);
    let mut rabbit = hawks[rabbit_idx].clone();
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_fitness: rabbit.fitness,
        wall_ms: elapsed_ms(start),
    }];
    let mut phase_counts = [0usize; 5];

    for t in 0..cfg.iterations {
        let snapshot: Vec<Vec<f64>> = hawks.iter().map(|h| h.position.clone()).collect();
        let x_mean = mean_position(&hawks);
        let x_rabbit = rabbit.position.clone();

        for i in 0..hawks.len() {
            if i == rabbit_idx {
                continue;
            }
            let e0 = 2.0 * rng.random::<f64>() - 1.0;
            let energy = escaping_energy(e0, t, cfg.iterations);
            let jump = jump_strength(&mut rng);
            let r: f64 = rng.random();
            let phase = Phase::select(energy, r);
            phase_counts[phase_slot(phase)] += 1;

            let x = &snapshot[i];
            let (position, known_fitness) = match phase {
                Phase::Explore => {
                    let mut other = rng.random_range(0..hawks.len() - 1);
                    if other >= i {
                        other += 1;
                    }
                    let draws = PerchDraws::sample(&mut rng);
                    (
                        explore_update(x, &snapshot[other], &x_rabbit, &x_mean, draws, bounds),
                        None,
                    )
                }
                Phase::SoftBesiege => (soft_besiege(x, &x_rabbit, energy, jump, bounds), None),
                Phase::HardBesiege => (hard_besiege(x, &x_rabbit, energy, bounds), None),
                Phase::SoftDive | Phase::HardDive => {
                    let mode = if phase == Phase::SoftDive {
                        DiveMode::Soft
                    } else {
                        DiveMode::Hard
                    };
                    let mut eval = |pos: &[f64]| fitness.evaluate(&decode(pos, plan));
                    let dive = rapid_dive_update(
                        x,
                        hawks[i].fitness,
                        &x_rabbit,
                        &x_mean,
                        energy,
                        jump,
                        mode,
                        &levy,
                        bounds,
                        &mut eval,
                        &mut rng,
                    );
                    (dive.position, Some(dive.fitness))
                }
            };

            let seeds = decode(&position, plan);
            let value = known_fitness.unwrap_or_else(|| fitness.evaluate(&seeds));
            let hawk = &mut hawks[i];
            hawk.position = position;
            hawk.seeds = seeds;
            hawk.fitness = value;
            neighbor_scout(hawk, g, threshold, plan, fitness, &mut rng);
        }

        let candidate = best_index(&hawks);
        if hawks[candidate].fitness > rabbit.fitness {
            rabbit_idx = candidate;
            rabbit = hawks[candidate].clone();
        }
        trace.push(TracePoint {
            iteration: t + 1,
            best_fitness: rabbit.fitness,
            wall_ms: elapsed_ms(start),
        });
    }

    let params = format!(
        "k={} N={} T={} L={} beta={} seed={}",
        cfg.k, cfg.population, cfg.iterations, threshold, cfg.beta, cfg.seed
    );
    Ok(Optimized {
        seeds: SeedSet::new(rabbit.seeds.clone(), "DHHO", params),
        fitness: rabbit.fitness,
        position: rabbit.position,
        trace,
        phase_counts,
    })
}

/// Index of the fittest hawk; the first one wins ties.
fn best_index(hawks: &[Hawk]) -> usize {
    let mut best = 0;
    for (i, h) in hawks.iter().enumerate() {
        if h.fitness > hawks[best].fitness {
            best = i;
        }
    }
    best
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
