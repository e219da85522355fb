//! Experiment orchestration: seed selection per method, the four sweeps
//! (final infected scale, LIE, activation probability, timing) and the
//! Friedman/Holm comparison of their results.

mod config;
mod record;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{
    degree_rank, enc_rank, h_index_rank, pagerank, top_k, DEFAULT_DAMPING, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};
use crate::community::{
    allocate_budgets, default_significance_threshold, louvain, prune_intercommunity_edges, select_significant,
    BudgetPlan, CommunityPartition,
};
use crate::diffusion::fis;
use crate::error::{Error, Result};
use crate::graph::{load_edge_list_file, Graph};
use crate::hho::{optimize, HhoConfig, Optimized};
use crate::influence::{lie, EstimatorParams, LieFitness};
use crate::seeds::SeedSet;
use crate::stats::{friedman_report, FriedmanReport, ResultMatrix};

pub use config::{
    seed_budget, ExperimentConfig, Method, DEFAULT_P, LARGE_FRACTIONS, PROB_SWEEP_FRACTION, PROB_SWEEP_PS,
    SMALL_FRACTIONS, SMALL_GRAPH_LIMIT,
};
pub use record::{read_records, write_records, ExperimentRecord, RECORD_HEADER};

/// A named graph.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub graph: Graph,
}

impl Dataset {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        Self {
            name: name.into(),
            graph,
        }
    }

    /// Loads an edge list; the dataset name is the file stem.
    pub fn load(path: &Path, directed_input: bool) -> Result<Self> {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "graph".into());
        Ok(Self::new(name, load_edge_list_file(path, directed_input)?))
    }
}

/// Estimator probability used during selection. LIE needs `p > 0`; a zero
/// probability cell falls back to the default.
fn estimator_params(p: f64) -> EstimatorParams {
    EstimatorParams::new(p).unwrap_or_else(|_| EstimatorParams::new(DEFAULT_P).expect("valid default"))
}

/// Everything the community stage produced for one selection.
#[derive(Debug, Clone)]
pub struct CommunityStage {
    pub partition: CommunityPartition,
    pub pruned: Graph,
    pub plan: BudgetPlan,
}

/// Louvain, pruning, significance filter and budget allocation. If the
/// significant communities cannot hold `k` candidates, every community is
/// admitted instead.
pub fn community_stage(g: &Graph, k: usize, cfg: &ExperimentConfig) -> Result<CommunityStage> {
    let partition = louvain(g, cfg.seed);
    let pruned = prune_intercommunity_edges(g, &partition);
    let threshold = cfg
        .sig_threshold
        .unwrap_or_else(|| default_significance_threshold(g.node_count(), k));
    let significant = select_significant(&partition, threshold);
    let plan = match allocate_budgets(&pruned, &partition, &significant, k) {
        Err(Error::InfeasibleBudget { .. }) => {
            allocate_budgets(&pruned, &partition, &select_significant(&partition, 1), k)?
        }
        other => other?,
    };
    Ok(CommunityStage {
        partition,
        pruned,
        plan,
    })
}

/// Full DHHO pipeline: community stage, then the optimizer maximizing LIE on
/// the pruned graph.
pub fn run_dhho(g: &Graph, k: usize, p: f64, cfg: &ExperimentConfig) -> Result<Optimized> {
    let stage = community_stage(g, k, cfg)?;
    let hcfg = HhoConfig {
        k,
        population: cfg.population,
        iterations: cfg.iterations,
        scout_threshold: cfg.scout_threshold,
        beta: cfg.beta,
        bounds: Default::default(),
        seed: cfg.seed,
    };
    let mut fitness = LieFitness::new(&stage.pruned, estimator_params(p));
    optimize(&stage.pruned, &stage.plan, &hcfg, &mut fitness)
}

/// Selects `k` seeds on `g` with `method`.
pub fn select_seeds(method: Method, g: &Graph, k: usize, p: f64, cfg: &ExperimentConfig) -> Result<SeedSet> {
    match method {
        Method::Dhho => Ok(run_dhho(g, k, p, cfg)?.seeds),
        Method::Degree => top_k(&degree_rank(g), k),
        Method::PageRank => top_k(&pagerank(g, DEFAULT_DAMPING, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)?, k),
        Method::HIndex => top_k(&h_index_rank(g), k),
        Method::Enc => top_k(&enc_rank(g), k),
    }
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    method: Method,
    fraction: f64,
    p: f64,
}

fn run_cell(ds: &Dataset, cell: Cell, cfg: &ExperimentConfig, simulate: bool) -> Result<ExperimentRecord> {
    let g = &ds.graph;
    let k = seed_budget(cell.fraction, g.node_count());
    let start = Instant::now();
    let seeds = select_seeds(cell.method, g, k, cell.p, cfg)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let lie_value = lie(g, seeds.nodes(), estimator_params(cell.p))?;
    let (fis_mean, fis_std) = if simulate {
        let r = fis(g, seeds.nodes(), cell.p, cfg.runs, cfg.seed)?;
        (r.fis, r.fis_std)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(ExperimentRecord {
        dataset: ds.name.clone(),
        method: cell.method.name().to_owned(),
        fraction: cell.fraction,
        p: cell.p,
        k,
        fis_mean,
        fis_std,
        lie: lie_value,
        log_lie: lie_value.ln(),
        wall_ms,
        seed: cfg.seed,
    })
}

fn run_grid(
    ds: &Dataset,
    cfg: &ExperimentConfig,
    fractions: &[f64],
    ps: &[f64],
    simulate: bool,
    parallel: bool,
) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let cells: Vec<Cell> = cfg
        .methods
        .iter()
        .flat_map(|&method| {
            fractions
                .iter()
                .flat_map(move |&fraction| ps.iter().map(move |&p| Cell { method, fraction, p }))
        })
        .collect();
    // collect() keeps input order, so output order is independent of scheduling
    if parallel {
        cells.par_iter().map(|&c| run_cell(ds, c, cfg, simulate)).collect()
    } else {
        cells.iter().map(|&c| run_cell(ds, c, cfg, simulate)).collect()
    }
}

/// Final infected scale per (method, fraction) at the primary probability.
pub fn fis_sweep(ds: &Dataset, cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let fractions = cfg.fractions_for(ds.graph.node_count());
    run_grid(ds, cfg, &fractions, &[cfg.primary_p()], true, true)
}

/// LIE and ln(LIE) of every method's seeds per fraction; no simulation.
pub fn lie_sweep(ds: &Dataset, cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let fractions = cfg.fractions_for(ds.graph.node_count());
    run_grid(ds, cfg, &fractions, &[cfg.primary_p()], false, true)
}

/// Final infected scale against activation probability at a 10 % spreader
/// fraction (or the first configured fraction).
pub fn prob_sweep(ds: &Dataset, cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let fraction = cfg.fractions.first().copied().unwrap_or(PROB_SWEEP_FRACTION);
    run_grid(ds, cfg, &[fraction], &cfg.sweep_ps(), true, true)
}

/// Selection wall time per (method, fraction). Cells run one at a time so
/// timings do not compete for cores.
pub fn timing_sweep(ds: &Dataset, cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let fractions = cfg.fractions_for(ds.graph.node_count());
    run_grid(ds, cfg, &fractions, &[cfg.primary_p()], false, false)
}

/// Which sweep to run over the configured graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    Fis,
    Lie,
    Prob,
    Timing,
}

impl Sweep {
    pub fn file_name(&self) -> &'static str {
        match self {
            Sweep::Fis => "fis_sweep.csv",
            Sweep::Lie => "lie_sweep.csv",
            Sweep::Prob => "prob_sweep.csv",
            Sweep::Timing => "timing.csv",
        }
    }
}

/// Runs `sweep` over every graph of `cfg`, sorting records by dataset,
/// method, fraction and p.
pub fn run_sweep(sweep: Sweep, cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    if cfg.graphs.is_empty() {
        return Err(Error::InvalidArgument("no --graph given".into()));
    }
    let mut all = Vec::new();
    for path in &cfg.graphs {
        let ds = Dataset::load(path, cfg.directed_input)?;
        let records = match sweep {
            Sweep::Fis => fis_sweep(&ds, cfg)?,
            Sweep::Lie => lie_sweep(&ds, cfg)?,
            Sweep::Prob => prob_sweep(&ds, cfg)?,
            Sweep::Timing => timing_sweep(&ds, cfg)?,
        };
        all.extend(records);
    }
    all.sort_by(|a, b| {
        (a.dataset.as_str(), a.method.as_str())
            .cmp(&(b.dataset.as_str(), b.method.as_str()))
            .then(a.fraction.total_cmp(&b.fraction))
            .then(a.p.total_cmp(&b.p))
    });
    Ok(all)
}

/// Which record column a comparison ranks on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Fis,
    Lie,
    WallMs,
}

impl Metric {
    /// FIS when every record carries one, LIE otherwise.
    pub fn for_records(records: &[ExperimentRecord]) -> Metric {
        if !records.is_empty() && records.iter().all(|r| r.fis_mean.is_finite()) {
            Metric::Fis
        } else {
            Metric::Lie
        }
    }

    pub fn higher_is_better(&self) -> bool {
        !matches!(self, Metric::WallMs)
    }

    fn value(&self, r: &ExperimentRecord) -> f64 {
        match self {
            Metric::Fis => r.fis_mean,
            Metric::Lie => r.lie,
            Metric::WallMs => r.wall_ms,
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "fis" => Ok(Metric::Fis),
            "lie" => Ok(Metric::Lie),
            "wall_ms" | "wall-ms" | "time" => Ok(Metric::WallMs),
            other => Err(Error::InvalidArgument(format!("unknown metric {other:?}"))),
        }
    }
}

/// Builds the problems × methods matrix of `metric`: one row per
/// (dataset, fraction, p).
pub fn result_matrix(records: &[ExperimentRecord], metric: Metric) -> Result<ResultMatrix> {
    let mut methods: Vec<String> = Vec::new();
    for r in records {
        if !methods.contains(&r.method) {
            methods.push(r.method.clone());
        }
    }
    let mut cells: BTreeMap<(String, u64, u64), BTreeMap<String, f64>> = BTreeMap::new();
    for r in records {
        let value = metric.value(r);
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "record {}/{}/{} has no {metric:?} value",
                r.dataset, r.method, r.fraction
            )));
        }
        // non-negative floats order like their bit patterns
        let key = (r.dataset.clone(), r.fraction.to_bits(), r.p.to_bits());
        cells.entry(key).or_default().insert(r.method.clone(), value);
    }
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for ((dataset, fraction, p), by_method) in cells {
        let row = methods
            .iter()
            .map(|m| {
                by_method
                    .get(m)
                    .copied()
                    .ok_or_else(|| Error::InvalidArgument(format!("missing {m} at {dataset} fraction {fraction}")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let (fraction, p) = (f64::from_bits(fraction), f64::from_bits(p));
        rows.push(format!("{dataset}@{fraction}@p={p}"));
        values.push(row);
    }
    ResultMatrix::new(rows, methods, values, metric.higher_is_better())
}

/// Friedman/Holm report over sweep records, ranked on `metric`.
pub fn compare_by(records: &[ExperimentRecord], metric: Metric) -> Result<FriedmanReport> {
    let m = result_matrix(records, metric)?;
    if m.k() < 2 {
        return Err(Error::InvalidArgument("comparison needs at least two methods".into()));
    }
    friedman_report(&m)
}

/// [`compare_by`] with the metric picked by [`Metric::for_records`].
pub fn compare(records: &[ExperimentRecord]) -> Result<FriedmanReport> {
    compare_by(records, Metric::for_records(records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::planted_partition;

    fn small_dataset() -> Dataset {
        Dataset::new("pp", planted_partition(4, 25, 0.3, 0.02, 11))
    }

    fn quick_cfg() -> ExperimentConfig {
        ExperimentConfig {
            population: 6,
            iterations: 5,
            runs: 20,
            ..Default::default()
        }
    }

    #[test]
    fn zero_probability_fis_equals_fraction() {
        let ds = small_dataset();
        let mut cfg = quick_cfg();
        cfg.probabilities = Some(vec![0.0]);
        for r in fis_sweep(&ds, &cfg).unwrap() {
            assert_eq!(r.fis_mean, r.k as f64 / 100.0);
            assert!((r.fis_mean - r.fraction).abs() < 1e-12);
        }
    }

    #[test]
    fn one_method_table_shape() {
        let ds = small_dataset();
        let mut cfg = quick_cfg();
        cfg.methods = vec![Method::Degree];
        assert_eq!(fis_sweep(&ds, &cfg).unwrap().len(), SMALL_FRACTIONS.len());
    }

    #[test]
    fn lie_floor_and_log() {
        let ds = small_dataset();
        for r in lie_sweep(&ds, &quick_cfg()).unwrap() {
            assert!(r.lie >= r.k as f64);
            assert!((r.log_lie - r.lie.ln()).abs() < 1e-12);
            assert!(r.fis_mean.is_nan());
        }
    }

    #[test]
    fn compare_rejects_single_method() {
        let ds = small_dataset();
        let mut cfg = quick_cfg();
        cfg.methods = vec![Method::Degree];
        let recs = fis_sweep(&ds, &cfg).unwrap();
        assert!(compare(&recs).is_err());
    }

    #[test]
    fn lie_sweep_compares_on_lie() {
        let ds = small_dataset();
        let recs = lie_sweep(&ds, &quick_cfg()).unwrap();
        assert_eq!(Metric::for_records(&recs), Metric::Lie);
        let r = compare(&recs).unwrap();
        assert_eq!(r.k, Method::ALL.len());
        assert!(compare_by(&recs, Metric::Fis).is_err());
        let t = compare_by(&recs, Metric::WallMs).unwrap();
        assert_eq!(t.n, SMALL_FRACTIONS.len());
    }

    #[test]
    fn identical_methods_tie() {
        let recs: Vec<ExperimentRecord> = [0.02, 0.03, 0.04]
            .iter()
            .flat_map(|&f| {
                ["A", "B"].into_iter().map(move |m| ExperimentRecord {
                    dataset: "d".into(),
                    method: m.into(),
                    fraction: f,
                    p: 0.1,
                    k: 1,
                    fis_mean: f * 3.0,
                    fis_std: 0.0,
                    lie: 1.0,
                    log_lie: 0.0,
                    wall_ms: 0.0,
                    seed: 0,
                })
            })
            .collect();
        let r = compare(&recs).unwrap();
        assert_eq!(r.average_ranks, vec![1.5, 1.5]);
        assert_eq!(r.chi2, 0.0);
    }

    #[test]
    fn community_stage_budget_sums_to_k() {
        let ds = small_dataset();
        let cfg = quick_cfg();
        for k in [1, 2, 5, 9] {
            let stage = community_stage(&ds.graph, k, &cfg).unwrap();
            assert_eq!(stage.plan.k(), k);
        }
    }
}
