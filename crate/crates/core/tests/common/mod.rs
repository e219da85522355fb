#![allow(dead_code)]

use seedhawk::{Graph, NodeId};

/// All-pairs hop distances by repeated relaxation over an adjacency matrix.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

fn seed_distance(d: &[Vec<usize>], seeds: &[NodeId], v: NodeId) -> usize {
    seeds.iter().map(|&s| d[s][v]).min().unwrap()
}

fn adjacent(g: &Graph, u: NodeId, v: NodeId) -> bool {
    g.edges().any(|(a, b)| (a, b) == (u.min(v), u.max(v)))
}

/// Brute-force one-hop term: for every node at distance 1, count seed edges.
fn sigma1(g: &Graph, d: &[Vec<usize>], seeds: &[NodeId], p: f64) -> (f64, Vec<NodeId>) {
    let n = g.node_count();
    let hop1: Vec<NodeId> = (0..n).filter(|&v| seed_distance(d, seeds, v) == 1).collect();
    let s: f64 = hop1
        .iter()
        .map(|&i| {
            let r = seeds.iter().filter(|&&s| adjacent(g, s, i)).count();
            1.0 - (1.0 - p).powi(r as i32)
        })
        .sum();
    (s, hop1)
}

pub fn oracle_edv(g: &Graph, seeds: &[NodeId], p: f64) -> f64 {
    let d = distance_matrix(g);
    let (s1, _) = sigma1(g, &d, seeds, p);
    seeds.len() as f64 + s1
}

pub fn oracle_lie(g: &Graph, seeds: &[NodeId], p: f64) -> f64 {
    let n = g.node_count();
    let d = distance_matrix(g);
    let (s1, hop1) = sigma1(g, &d, seeds, p);
    let k = seeds.len() as f64;
    if hop1.is_empty() {
        return k;
    }
    let hop2: Vec<NodeId> = (0..n).filter(|&v| seed_distance(&d, seeds, v) == 2).collect();
    let ring = |w: NodeId| {
        let dist = seed_distance(&d, seeds, w);
        dist == 1 || dist == 2
    };
    let mut d_sum = 0usize;
    for &u in &hop2 {
        for w in 0..n {
            if w != u && ring(w) && adjacent(g, u, w) {
                d_sum += 1;
            }
        }
    }
    k + (1.0 + p * d_sum as f64 / hop1.len() as f64) * s1
}

/// Expected number of nodes reached from `seed` when each edge is live with
/// probability `p`, by enumerating every liveness pattern.
pub fn exhaustive_ic_spread(g: &Graph, seed: NodeId, p: f64) -> f64 {
    let edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    let m = edges.len();
    assert!(m <= 20);
    let n = g.node_count();
    let mut expected = 0.0;
    for mask in 0u32..(1 << m) {
        let live = mask.count_ones() as i32;
        let weight = p.powi(live) * (1.0 - p).powi(m as i32 - live);
        let mut reached = vec![false; n];
        reached[seed] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &(u, v)) in edges.iter().enumerate() {
                if mask & (1 << e) != 0 && reached[u] != reached[v] {
                    reached[u] = true;
                    reached[v] = true;
                    changed = true;
                }
            }
        }
        expected += weight * reached.iter().filter(|&&r| r).count() as f64;
    }
    expected
}

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Sample excess-free kurtosis `m4 / m2²`.
pub fn kurtosis(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    m4 / (m2 * m2)
}
