//! Closed-form spread estimators used as optimizer fitness.
//!
//! Both work on the one-hop frontier `N1 = N(S) \ S`. The expected number of
//! frontier activations is `σ1 = Σ_{i∈N1} 1 − (1−p)^{r(i)}` with `r(i)` the
//! number of edges from `i` into `S`.
//!
//! * EDV is `k + σ1`.
//! * LIE adds a second-hop term: `k + (1 + Σ_{u∈N2} p·d(u) / |N1|) · σ1`, where
//!   `N2` are the nodes at distance exactly two from `S` and `d(u)` counts
//!   edges from `u` into `N1 ∪ N2`.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Uniform activation probability, `0 < p ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimatorParams {
    p: f64,
}

impl EstimatorParams {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p <= 1.0 {
            Ok(Self { p })
        } else {
            Err(Error::InvalidProbability(p))
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Anything that scores a seed set; higher is better.
pub trait SeedFitness {
    fn evaluate(&mut self, seeds: &[NodeId]) -> f64;
}

const UNSEEN: u8 = 0;
const SEED: u8 = 1;
const HOP1: u8 = 2;
const HOP2: u8 = 3;

/// Reusable scratch space so repeated evaluations on one graph do not allocate.
#[derive(Debug, Clone)]
struct Frontier {
    state: Vec<u8>,
    hits: Vec<u32>,
    hop1: Vec<NodeId>,
    hop2: Vec<NodeId>,
    seeds: Vec<NodeId>,
}

impl Frontier {
    fn new(n: usize) -> Self {
        Self {
            state: vec![UNSEEN; n],
            hits: vec![0; n],
            hop1: Vec::new(),
            hop2: Vec::new(),
            seeds: Vec::new(),
        }
    }

    /// Marks seeds and the one-hop frontier, returning `σ1`.
    fn one_hop(&mut self, g: &Graph, seeds: &[NodeId], p: f64) -> f64 {
        self.seeds.clear();
        for &s in seeds {
            if self.state[s] != SEED {
                self.state[s] = SEED;
                self.seeds.push(s);
            }
        }
        for &s in &self.seeds {
            for &u in g.neighbors(s) {
                match self.state[u] {
                    UNSEEN => {
                        self.state[u] = HOP1;
                        self.hits[u] = 1;
                        self.hop1.push(u);
                    }
                    HOP1 => self.hits[u] += 1,
                    _ => {}
                }
            }
        }
        let miss = 1.0 - p;
        self.hop1.iter().map(|&i| 1.0 - miss.powi(self.hits[i] as i32)).sum()
    }

    /// `Σ_{u∈N2} d(u)` after [`Frontier::one_hop`].
    fn two_hop_degree_sum(&mut self, g: &Graph) -> usize {
        for &i in &self.hop1 {
            for &u in g.neighbors(i) {
                if self.state[u] == UNSEEN {
                    self.state[u] = HOP2;
                    self.hop2.push(u);
                }
            }
        }
        self.hop2
            .iter()
            .map(|&u| {
                g.neighbors(u)
                    .iter()
                    .filter(|&&w| matches!(self.state[w], HOP1 | HOP2))
                    .count()
            })
            .sum()
    }

    fn reset(&mut self) {
        for &v in self.seeds.iter().chain(&self.hop1).chain(&self.hop2) {
            self.state[v] = UNSEEN;
            self.hits[v] = 0;
        }
        self.seeds.clear();
        self.hop1.clear();
        self.hop2.clear();
    }
}

fn check_seeds(g: &Graph, seeds: &[NodeId]) -> Result<()> {
    if seeds.is_empty() {
        return Err(Error::EmptySeedSet);
    }
    let n = g.node_count();
    match seeds.iter().find(|&&s| s >= n) {
        Some(&id) => Err(Error::NodeOutOfRange { id, n }),
        None => Ok(()),
    }
}

/// LIE evaluator bound to one graph.
#[derive(Debug, Clone)]
pub struct LieFitness<'g> {
    graph: &'g Graph,
    p: f64,
    frontier: Frontier,
}

impl<'g> LieFitness<'g> {
    pub fn new(graph: &'g Graph, params: EstimatorParams) -> Self {
        Self {
            graph,
            p: params.p(),
            frontier: Frontier::new(graph.node_count()),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// Unchecked evaluation; seeds must be in range and non-empty.
    fn value(&mut self, seeds: &[NodeId]) -> f64 {
        let sigma1 = self.frontier.one_hop(self.graph, seeds, self.p);
        let k = self.frontier.seeds.len() as f64;
        let frontier_len = self.frontier.hop1.len();
        let value = if frontier_len == 0 {
            k
        } else {
            let d_sum = self.frontier.two_hop_degree_sum(self.graph) as f64;
            k + (1.0 + self.p * d_sum / frontier_len as f64) * sigma1
        };
        self.frontier.reset();
        value
    }

    pub fn lie(&mut self, seeds: &[NodeId]) -> Result<f64> {
        check_seeds(self.graph, seeds)?;
        Ok(self.value(seeds))
    }
}

impl SeedFitness for LieFitness<'_> {
    fn evaluate(&mut self, seeds: &[NodeId]) -> f64 {
        self.value(seeds)
    }
}

/// EDV evaluator bound to one graph.
#[derive(Debug, Clone)]
pub struct EdvFitness<'g> {
    graph: &'g Graph,
    p: f64,
    frontier: Frontier,
}

impl<'g> EdvFitness<'g> {
    pub fn new(graph: &'g Graph, params: EstimatorParams) -> Self {
        Self {
            graph,
            p: params.p(),
            frontier: Frontier::new(graph.node_count()),
        }
    }

    fn value(&mut self, seeds: &[NodeId]) -> f64 {
        let sigma1 = self.frontier.one_hop(self.graph, seeds, self.p);
        let k = self.frontier.seeds.len() as f64;
        self.frontier.reset();
        k + sigma1
    }

    pub fn edv(&mut self, seeds: &[NodeId]) -> Result<f64> {
        check_seeds(self.graph, seeds)?;
        Ok(self.value(seeds))
    }
}

impl SeedFitness for EdvFitness<'_> {
    fn evaluate(&mut self, seeds: &[NodeId]) -> f64 {
        self.value(seeds)
    }
}

/// Local Influence Estimator of `seeds` on `g`.
pub fn lie(g: &Graph, seeds: &[NodeId], params: EstimatorParams) -> Result<f64> {
    LieFitness::new(g, params).lie(seeds)
}

/// Expected Diffusion Value of `seeds` on `g`.
pub fn edv(g: &Graph, seeds: &[NodeId], params: EstimatorParams) -> Result<f64> {
    EdvFitness::new(g, params).edv(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: f64) -> EstimatorParams {
        EstimatorParams::new(v).unwrap()
    }

    fn star() -> Graph {
        Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    #[test]
    fn isolated_seed() {
        let g = Graph::from_edges(3, [(1, 2)]).unwrap();
        assert_eq!(lie(&g, &[0], p(0.3)).unwrap(), 1.0);
        assert_eq!(edv(&g, &[0], p(0.3)).unwrap(), 1.0);
    }

    #[test]
    fn path_lie() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!((lie(&g, &[0], p(0.1)).unwrap() - 1.11).abs() < 1e-12);
        assert!((lie(&g, &[1], p(0.1)).unwrap() - 1.2).abs() < 1e-12);
    }

    #[test]
    fn star_values() {
        let g = star();
        assert!((lie(&g, &[0], p(0.1)).unwrap() - 1.4).abs() < 1e-12);
        assert!((edv(&g, &[0], p(0.1)).unwrap() - 1.4).abs() < 1e-12);
    }

    #[test]
    fn triangle_edv() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!((edv(&g, &[0, 1], p(0.5)).unwrap() - 2.75).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let g = star();
        assert!(matches!(lie(&g, &[], p(0.1)), Err(Error::EmptySeedSet)));
        assert!(matches!(edv(&g, &[], p(0.1)), Err(Error::EmptySeedSet)));
        assert!(matches!(lie(&g, &[9], p(0.1)), Err(Error::NodeOutOfRange { .. })));
        assert!(EstimatorParams::new(0.0).is_err());
        assert!(EstimatorParams::new(1.5).is_err());
        assert!(EstimatorParams::new(1.0).is_ok());
    }

    #[test]
    fn duplicate_seeds_count_once() {
        let g = star();
        assert_eq!(lie(&g, &[0, 0], p(0.1)).unwrap(), lie(&g, &[0], p(0.1)).unwrap());
    }

    #[test]
    fn evaluator_reuse_is_stateless() {
        let g = crate::graph::gnp(30, 0.2, 5);
        let mut f = LieFitness::new(&g, p(0.2));
        let first = f.evaluate(&[1, 2, 3]);
        f.evaluate(&[4, 9]);
        assert_eq!(f.evaluate(&[1, 2, 3]), first);
    }
}
