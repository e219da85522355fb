use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use seedhawk::community::{default_significance_threshold, louvain, select_significant};
use seedhawk::harness::{self, read_records, write_records, Dataset, ExperimentConfig, Metric, Sweep};
use seedhawk::stats::{friedman_report, FriedmanReport, ResultMatrix};

#[derive(Parser)]
#[command(name = "seedhawk", version, about = "Influence maximization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Final infected scale vs spreader fraction
    FisSweep(Common),
    /// LIE and ln(LIE) vs spreader fraction
    LieSweep(Common),
    /// Final infected scale vs activation probability
    ProbSweep(Common),
    /// Seed selection wall time vs spreader fraction
    Timing(Common),
    /// Friedman / Iman-Davenport / Holm report over sweep or matrix CSVs
    Compare {
        #[arg(long = "input", required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(long, default_value = "results")]
        out: PathBuf,
        /// Treat a plain matrix CSV as lower-is-better
        #[arg(long)]
        lower_is_better: bool,
        /// Column of sweep tables to rank on: fis, lie or wall_ms (default: fis if present, else lie)
        #[arg(long)]
        metric: Option<String>,
    },
    /// Louvain partition dump (node_label,community_id)
    Communities(Common),
}

#[derive(Args, Default)]
struct Common {
    /// Flat key=value config file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    graph: Vec<String>,
    /// Treat edge lists as directed (edges are symmetrized either way)
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    methods: Option<String>,
    #[arg(long)]
    fractions: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    runs: Option<String>,
    #[arg(long)]
    pop: Option<String>,
    #[arg(long)]
    iters: Option<String>,
    #[arg(long = "scout-threshold")]
    scout_threshold: Option<String>,
    #[arg(long = "sig-threshold")]
    sig_threshold: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

impl Common {
    fn config(&self) -> seedhawk::Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_text(&fs::read_to_string(path)?)?;
        }
        if !self.graph.is_empty() {
            cfg.set("graph", &self.graph.join(","))?;
        }
        if self.directed {
            cfg.directed_input = true;
        }
        let flags = [
            ("methods", &self.methods),
            ("fractions", &self.fractions),
            ("p", &self.p),
            ("runs", &self.runs),
            ("pop", &self.pop),
            ("iters", &self.iters),
            ("scout-threshold", &self.scout_threshold),
            ("sig-threshold", &self.sig_threshold),
            ("beta", &self.beta),
            ("seed", &self.seed),
            ("out", &self.out),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn sweep(kind: Sweep, common: &Common) -> seedhawk::Result<()> {
    let cfg = common.config()?;
    let records = harness::run_sweep(kind, &cfg)?;
    fs::create_dir_all(&cfg.out_dir)?;
    let path = cfg.out_dir.join(kind.file_name());
    write_records(&records, BufWriter::new(File::create(&path)?))?;
    for r in &records {
        println!(
            "{:<12} {:<7} f={:<6} p={:<6} k={:<4} fis={:.4} lie={:.3} {:.1} ms",
            r.dataset, r.method, r.fraction, r.p, r.k, r.fis_mean, r.lie, r.wall_ms
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn load_report(inputs: &[PathBuf], lower_is_better: bool, metric: Option<&str>) -> seedhawk::Result<FriedmanReport> {
    let mut records = Vec::new();
    for path in inputs {
        let text = fs::read_to_string(path)?;
        if text.starts_with("dataset,method,") {
            records.extend(read_records(text.as_bytes())?);
        } else if inputs.len() == 1 {
            let m = ResultMatrix::from_csv(text.as_bytes(), !lower_is_better)?;
            return friedman_report(&m);
        } else {
            return Err(seedhawk::Error::InvalidArgument(format!(
                "{} is not a sweep table; matrix CSVs must be passed alone",
                path.display()
            )));
        }
    }
    let metric = match metric {
        Some(m) => m.parse()?,
        None => Metric::for_records(&records),
    };
    harness::compare_by(&records, metric)
}

fn compare(inputs: &[PathBuf], out: &Path, lower_is_better: bool, metric: Option<&str>) -> seedhawk::Result<()> {
    let report = load_report(inputs, lower_is_better, metric)?;
    fs::create_dir_all(out)?;
    let path = out.join("compare_report.csv");
    report.write_csv(BufWriter::new(File::create(&path)?))?;
    println!("n = {}, k = {}", report.n, report.k);
    for (m, r) in report.methods.iter().zip(&report.average_ranks) {
        println!("  {m:<8} average rank {r:.3}");
    }
    println!("Friedman chi2 = {:.4} (p = {:.3e})", report.chi2, report.chi2_p);
    println!(
        "Iman-Davenport F = {:.4} (p = {:.3e})",
        report.iman_davenport, report.iman_davenport_p
    );
    println!("Holm, control = {}", report.control);
    for row in &report.holm {
        println!(
            "  {:<8} z = {:>7.3}  p = {:.3e}  APV = {:.3e}",
            row.method, row.z, row.p_value, row.adjusted
        );
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn communities(common: &Common) -> seedhawk::Result<()> {
    let cfg = common.config()?;
    fs::create_dir_all(&cfg.out_dir)?;
    for path in &cfg.graphs {
        let ds = Dataset::load(path, cfg.directed_input)?;
        let g = &ds.graph;
        let partition = louvain(g, cfg.seed);
        let threshold = cfg
            .sig_threshold
            .unwrap_or_else(|| default_significance_threshold(g.node_count(), 1));
        let significant = select_significant(&partition, threshold);
        let out = cfg.out_dir.join(format!("{}_communities.csv", ds.name));
        partition.write_csv(g, BufWriter::new(File::create(&out)?))?;
        println!(
            "{}: n = {}, m = {}, communities = {}, modularity = {:.4}, significant (>= {}) = {}",
            ds.name,
            g.node_count(),
            g.edge_count(),
            partition.len(),
            partition.modularity(),
            threshold,
            significant.len()
        );
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::FisSweep(c) => sweep(Sweep::Fis, c),
        Command::LieSweep(c) => sweep(Sweep::Lie, c),
        Command::ProbSweep(c) => sweep(Sweep::Prob, c),
        Command::Timing(c) => sweep(Sweep::Timing, c),
        Command::Compare {
            inputs,
            out,
            lower_is_better,
            metric,
        } => compare(inputs, out, *lower_is_better, metric.as_deref()),
        Command::Communities(c) => communities(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
