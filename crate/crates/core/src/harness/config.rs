use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Seed selection methods the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Dhho,
    Degree,
    PageRank,
    HIndex,
    Enc,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Dhho,
        Method::Degree,
        Method::PageRank,
        Method::HIndex,
        Method::Enc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Dhho => "DHHO",
            Method::Degree => "DEGREE",
            Method::PageRank => "PR",
            Method::HIndex => "HI",
            Method::Enc => "ENC",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dhho" => Ok(Method::Dhho),
            "degree" | "deg" => Ok(Method::Degree),
            "pagerank" | "pr" => Ok(Method::PageRank),
            "hindex" | "h-index" | "hi" => Ok(Method::HIndex),
            "enc" => Ok(Method::Enc),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// Spreader fractions for graphs below 2000 nodes.
pub const SMALL_FRACTIONS: [f64; 5] = [0.02, 0.03, 0.04, 0.05, 0.06];
/// Spreader fractions for graphs with 2000 nodes or more.
pub const LARGE_FRACTIONS: [f64; 8] = [0.005, 0.01, 0.015, 0.02, 0.025, 0.03, 0.035, 0.04];
pub const SMALL_GRAPH_LIMIT: usize = 2000;
pub const DEFAULT_P: f64 = 0.1;
pub const PROB_SWEEP_PS: [f64; 9] = [0.05, 0.075, 0.1, 0.125, 0.15, 0.175, 0.2, 0.225, 0.25];
pub const PROB_SWEEP_FRACTION: f64 = 0.10;

/// Settings shared by all sweeps. Empty `fractions` / `None` probabilities
/// mean "use the sweep's default".
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graphs: Vec<PathBuf>,
    pub directed_input: bool,
    pub methods: Vec<Method>,
    pub fractions: Vec<f64>,
    pub probabilities: Option<Vec<f64>>,
    pub runs: usize,
    pub population: usize,
    pub iterations: usize,
    pub scout_threshold: Option<usize>,
    pub beta: f64,
    pub sig_threshold: Option<usize>,
    pub seed: u64,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            graphs: Vec::new(),
            directed_input: false,
            methods: Method::ALL.to_vec(),
            fractions: Vec::new(),
            probabilities: None,
            runs: 50,
            population: 20,
            iterations: 50,
            scout_threshold: None,
            beta: 1.5,
            sig_threshold: None,
            seed: 42,
            out_dir: PathBuf::from("results"),
        }
    }
}

fn parse_list<T: FromStr>(value: &str, key: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>()
                .map_err(|_| Error::InvalidArgument(format!("{key}: cannot parse {s:?}")))
        })
        .collect()
}

fn parse_one<T: FromStr>(value: &str, key: &str) -> Result<T> {
    value
        .trim()
        .parse::<T>()
        .map_err(|_| Error::InvalidArgument(format!("{key}: cannot parse {value:?}")))
}

impl ExperimentConfig {
    /// Applies one `key=value` setting. Keys mirror the CLI flags without the
    /// leading dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "graph" => self.graphs = value.split(',').map(|s| PathBuf::from(s.trim())).collect(),
            "directed" => self.directed_input = parse_one(value, key)?,
            "methods" => {
                self.methods = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(Method::from_str)
                    .collect::<Result<_>>()?
            }
            "fractions" => self.fractions = parse_list(value, key)?,
            "p" => self.probabilities = Some(parse_list(value, key)?),
            "runs" => self.runs = parse_one(value, key)?,
            "pop" => self.population = parse_one(value, key)?,
            "iters" => self.iterations = parse_one(value, key)?,
            "scout-threshold" => self.scout_threshold = Some(parse_one(value, key)?),
            "beta" => self.beta = parse_one(value, key)?,
            "sig-threshold" => self.sig_threshold = Some(parse_one(value, key)?),
            "seed" => self.seed = parse_one(value, key)?,
            "out" => self.out_dir = PathBuf::from(value.trim()),
            other => return Err(Error::InvalidArgument(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key=value` text, one setting per line; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("config line {}: expected key=value", i + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(f) = self.fractions.iter().find(|f| !(**f > 0.0 && **f < 1.0)) {
            return Err(Error::InvalidArgument(format!("fraction {f} outside (0, 1)")));
        }
        if let Some(ps) = &self.probabilities {
            if let Some(&p) = ps.iter().find(|p| !(0.0..=1.0).contains(*p)) {
                return Err(Error::InvalidProbability(p));
            }
        }
        if self.runs == 0 {
            return Err(Error::InvalidArgument("runs must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidArgument("no methods selected".into()));
        }
        Ok(())
    }

    /// Fractions to sweep for a graph with `n` nodes.
    pub fn fractions_for(&self, n: usize) -> Vec<f64> {
        if !self.fractions.is_empty() {
            self.fractions.clone()
        } else if n < SMALL_GRAPH_LIMIT {
            SMALL_FRACTIONS.to_vec()
        } else {
            LARGE_FRACTIONS.to_vec()
        }
    }

    /// First configured probability, or the default 0.1.
    pub fn primary_p(&self) -> f64 {
        self.probabilities
            .as_ref()
            .and_then(|ps| ps.first().copied())
            .unwrap_or(DEFAULT_P)
    }

    /// Probabilities for the probability sweep.
    pub fn sweep_ps(&self) -> Vec<f64> {
        self.probabilities.clone().unwrap_or_else(|| PROB_SWEEP_PS.to_vec())
    }
}

/// Seed budget for a spreader fraction: `max(1, round(fraction·n))`.
pub fn seed_budget(fraction: f64, n: usize) -> usize {
    ((fraction * n as f64).round() as usize).max(1)
}
