//! Undirected simple graphs loaded from edge-list text.
//!
//! Node labels from the file are mapped to dense ids `0..n` in first-seen
//! order. Directed inputs are symmetrized, self-loops are dropped and
//! parallel edges collapsed, so every [`Graph`] is simple and undirected.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Dense internal node id.
pub type NodeId = usize;

/// Immutable undirected simple graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    labels: Vec<String>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` nodes labelled `"0".."n-1"` from an edge iterator.
    /// Self-loops and duplicates are discarded.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(labels, edges)
    }

    /// Builds a graph whose node `i` carries `labels[i]`.
    pub fn with_labels<I>(labels: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { id, n });
                }
            }
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        Ok(Self::from_raw_adjacency(adjacency, labels))
    }

    /// Sorts and deduplicates adjacency lists; caller guarantees symmetry and range.
    pub(crate) fn from_raw_adjacency(mut adjacency: Vec<Vec<NodeId>>, labels: Vec<String>) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Self {
            adjacency,
            labels,
            edge_count,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor ids of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    /// Degree of `v`. Panics if `v` is out of range; see [`Graph::checked_degree`].
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn checked_degree(&self, v: NodeId) -> Result<usize> {
        self.adjacency.get(v).map(Vec::len).ok_or(Error::NodeOutOfRange {
            id: v,
            n: self.node_count(),
        })
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn mean_degree(&self) -> f64 {
        if self.node_count() == 0 {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / self.node_count() as f64
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Id of the node carrying `label`, by linear scan.
    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// All nodes within shortest-path distance `hops` of any node in `sources`,
    /// the sources included. Returned sorted ascending.
    pub fn khop_neighborhood(&self, sources: &[NodeId], hops: usize) -> Result<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut frontier = Vec::with_capacity(sources.len());
        for &s in sources {
            if s >= n {
                return Err(Error::NodeOutOfRange { id: s, n });
            }
            if !seen[s] {
                seen[s] = true;
                frontier.push(s);
            }
        }
        let mut reached = frontier.clone();
        for _ in 0..hops {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            reached.extend_from_slice(&next);
            frontier = next;
        }
        reached.sort_unstable();
        Ok(reached)
    }

    /// Writes one `label label` line per undirected edge, preceded by a
    /// comment header. Degree-0 nodes are not representable and are lost.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# nodes {} edges {}", self.node_count(), self.edge_count())?;
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }
}

/// Parses an edge list: two whitespace-separated labels per line, `#` and
/// `%` start comment lines, blank lines are skipped.
///
/// Edges are always stored undirected. `directed_input` only records that the
/// source was directed; both directions collapse onto one undirected edge.
pub fn load_edge_list<R: BufRead>(source: R, directed_input: bool) -> Result<Graph> {
    let _ = directed_input;
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();

    let mut intern = |label: &str, labels: &mut Vec<String>| -> NodeId {
        if let Some(&id) = ids.get(label) {
            return id;
        }
        let id = labels.len();
        ids.insert(label.to_owned(), id);
        labels.push(label.to_owned());
        id
    };

    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                found: tokens.len(),
            });
        }
        let u = intern(tokens[0], &mut labels);
        let v = intern(tokens[1], &mut labels);
        edges.push((u, v));
    }

    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    Graph::with_labels(labels, edges)
}

/// Loads an edge-list file from disk.
pub fn load_edge_list_file(path: impl AsRef<std::path::Path>, directed_input: bool) -> Result<Graph> {
    let file = std::fs::File::open(path)?;
    load_edge_list(std::io::BufReader::new(file), directed_input)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated ids are in range")
}

/// Planted partition graph: `groups` blocks of `group_size` nodes, intra-block
/// edge probability `p_in`, inter-block probability `p_out`.
pub fn planted_partition(groups: usize, group_size: usize, p_in: f64, p_out: f64, seed: u64) -> Graph {
    let n = groups * group_size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let p = if u / group_size == v / group_size { p_in } else { p_out };
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated ids are in range")
}
