//! Centrality rankings used as heuristic seed selectors.

use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::seeds::SeedSet;

/// Scores for every node plus the induced order (score descending, lower id
/// first on ties).
#[derive(Debug, Clone, PartialEq)]
pub struct NodeRanking {
    method: String,
    scores: Vec<f64>,
    order: Vec<NodeId>,
}

impl NodeRanking {
    pub fn from_scores(method: impl Into<String>, scores: Vec<f64>) -> Self {
        let mut order: Vec<NodeId> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
        Self {
            method: method.into(),
            scores,
            order,
        }
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    /// CSV dump `node_label,score,rank` in rank order, ranks starting at 1.
    pub fn write_csv<W: Write>(&self, g: &Graph, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node_label", "score", "rank"])?;
        for (rank, &v) in self.order.iter().enumerate() {
            w.write_record([g.label(v), &self.scores[v].to_string(), &(rank + 1).to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// First `k` nodes of `ranking`.
pub fn top_k(ranking: &NodeRanking, k: usize) -> Result<SeedSet> {
    if k == 0 || k > ranking.order.len() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} outside 1..={}",
            ranking.order.len()
        )));
    }
    Ok(SeedSet::new(
        ranking.order[..k].to_vec(),
        ranking.method.clone(),
        format!("k={k}"),
    ))
}

pub fn degree_rank(g: &Graph) -> NodeRanking {
    let scores = (0..g.node_count()).map(|v| g.degree(v) as f64).collect();
    NodeRanking::from_scores("DEGREE", scores)
}

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 200;

/// PageRank by power iteration on the random walk of the undirected graph.
/// Mass on degree-0 nodes is spread uniformly. Stops when the L1 change
/// drops below `tol`.
pub fn pagerank(g: &Graph, damping: f64, tol: f64, max_iter: usize) -> Result<NodeRanking> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidArgument(format!("damping {damping} outside (0, 1)")));
    }
    let n = g.node_count();
    if n == 0 {
        return Ok(NodeRanking::from_scores("PAGERANK", Vec::new()));
    }
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let dangling: f64 = (0..n).filter(|&v| g.degree(v) == 0).map(|v| rank[v]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        for (v, slot) in next.iter_mut().enumerate() {
            let inflow: f64 = g.neighbors(v).iter().map(|&u| rank[u] / g.degree(u) as f64).sum();
            *slot = base + damping * inflow;
        }
        residual = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if residual < tol {
            return Ok(NodeRanking::from_scores("PAGERANK", rank));
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

/// H-index of each node: the largest `h` such that at least `h` neighbors
/// have degree ≥ `h`.
pub fn h_index_rank(g: &Graph) -> NodeRanking {
    let scores = (0..g.node_count())
        .map(|v| {
            let mut degs: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
            degs.sort_unstable_by(|a, b| b.cmp(a));
            degs.iter().enumerate().take_while(|&(i, &d)| d > i).count() as f64
        })
        .collect();
    NodeRanking::from_scores("HINDEX", scores)
}

/// K-shell index of every node by repeated minimum-degree peeling
/// (bucket-based, linear time).
pub fn kshell(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // nodes sorted by degree with bucket starts
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[degree[v]];
        vert[pos[v]] = v;
        bin[degree[v]] += 1;
    }
    for d in (1..=max_deg + 1).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in g.neighbors(v) {
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

/// Extended neighborhood coreness: `Σ_{u∈N(v)} Cnc(u)` with
/// `Cnc(u) = Σ_{w∈N(u)} ks(w)`.
pub fn enc_rank(g: &Graph) -> NodeRanking {
    let ks = kshell(g);
    let cnc: Vec<f64> = (0..g.node_count())
        .map(|v| g.neighbors(v).iter().map(|&u| ks[u] as f64).sum())
        .collect();
    let scores = (0..g.node_count())
        .map(|v| g.neighbors(v).iter().map(|&u| cnc[u]).sum())
        .collect();
    NodeRanking::from_scores("ENC", scores)
}
