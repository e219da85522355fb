//! Louvain community detection and the community-restricted candidate pool.
//!
//! The pipeline is: detect communities, drop every edge that crosses a
//! community boundary, keep only communities above a size threshold, and
//! split the seed budget `k` across them in proportion to their total degree.

use std::collections::HashMap;
use std::io::Write;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Gains closer than this are treated as equal.
const GAIN_EPS: f64 = 1e-12;
const MAX_LOCAL_PASSES: usize = 1_000;

/// Disjoint cover of the node set by communities.
///
/// Community ids are dense and numbered by their smallest member.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityPartition {
    assignment: Vec<usize>,
    communities: Vec<Vec<NodeId>>,
    modularity: f64,
}

impl CommunityPartition {
    /// Builds a partition from a node→label assignment. Labels are arbitrary
    /// and get renumbered.
    pub fn from_assignment(g: &Graph, labels: &[usize]) -> Result<Self> {
        if labels.len() != g.node_count() {
            return Err(Error::InvalidArgument(format!(
                "assignment covers {} nodes, graph has {}",
                labels.len(),
                g.node_count()
            )));
        }
        let mut remap = HashMap::new();
        let mut assignment = Vec::with_capacity(labels.len());
        let mut communities: Vec<Vec<NodeId>> = Vec::new();
        for (v, &label) in labels.iter().enumerate() {
            let next = remap.len();
            let c = *remap.entry(label).or_insert(next);
            if c == communities.len() {
                communities.push(Vec::new());
            }
            communities[c].push(v);
            assignment.push(c);
        }
        let modularity = modularity(g, &assignment);
        Ok(Self {
            assignment,
            communities,
            modularity,
        })
    }

    pub fn community_of(&self, v: NodeId) -> usize {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn communities(&self) -> &[Vec<NodeId>] {
        &self.communities
    }

    pub fn members(&self, c: usize) -> &[NodeId] {
        &self.communities[c]
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn modularity(&self) -> f64 {
        self.modularity
    }

    /// CSV dump with header `node_label,community_id`.
    pub fn write_csv<W: Write>(&self, g: &Graph, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node_label", "community_id"])?;
        for v in 0..g.node_count() {
            w.write_record([g.label(v), &self.assignment[v].to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Newman modularity `Q = Σ_c (e_c / m − (d_c / 2m)²)` of an assignment.
/// Zero for a graph without edges.
pub fn modularity(g: &Graph, assignment: &[usize]) -> f64 {
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let communities = assignment.iter().copied().max().map_or(0, |c| c + 1);
    let mut internal = vec![0.0; communities];
    let mut total_degree = vec![0.0; communities];
    for v in 0..g.node_count() {
        total_degree[assignment[v]] += g.degree(v) as f64;
    }
    for (u, v) in g.edges() {
        if assignment[u] == assignment[v] {
            internal[assignment[u]] += 1.0;
        }
    }
    internal
        .iter()
        .zip(&total_degree)
        .map(|(&e, &d)| e / m - (d / (2.0 * m)).powi(2))
        .sum()
}

/// Weighted graph of one Louvain level. `internal[i]` is the weight of edges
/// collapsed inside super-node `i`, counted once.
struct Level {
    adjacency: Vec<Vec<(usize, f64)>>,
    internal: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let adjacency = (0..g.node_count())
            .map(|v| g.neighbors(v).iter().map(|&u| (u, 1.0)).collect())
            .collect();
        Self {
            adjacency,
            internal: vec![0.0; g.node_count()],
        }
    }

    fn len(&self) -> usize {
        self.adjacency.len()
    }

    fn strength(&self, v: usize) -> f64 {
        self.adjacency[v].iter().map(|&(_, w)| w).sum::<f64>() + 2.0 * self.internal[v]
    }

    /// Local moving phase. Returns the community of each super-node (dense ids)
    /// and whether any node changed community.
    fn local_moving(&self, two_m: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
        let n = self.len();
        let strength: Vec<f64> = (0..n).map(|v| self.strength(v)).collect();
        let mut community: Vec<usize> = (0..n).collect();
        let mut total = strength.clone();
        let mut link = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut any_move = false;

        for _ in 0..MAX_LOCAL_PASSES {
            let mut moved = false;
            for v in 0..n {
                let current = community[v];
                touched.clear();
                for &(u, w) in &self.adjacency[v] {
                    let c = community[u];
                    if link[c] == 0.0 {
                        touched.push(c);
                    }
                    link[c] += w;
                }
                total[current] -= strength[v];
                let ratio = strength[v] / two_m;
                let stay_gain = link[current] - total[current] * ratio;

                let mut best_gain = stay_gain;
                let mut best: Vec<usize> = Vec::new();
                for &c in &touched {
                    if c == current {
                        continue;
                    }
                    let gain = link[c] - total[c] * ratio;
                    if gain > best_gain + GAIN_EPS {
                        best_gain = gain;
                        best.clear();
                        best.push(c);
                    } else if !best.is_empty() && (gain - best_gain).abs() <= GAIN_EPS {
                        best.push(c);
                    }
                }
                let target = if best.is_empty() {
                    current
                } else {
                    best.sort_unstable();
                    *best.choose(rng).expect("non-empty")
                };
                total[target] += strength[v];
                community[v] = target;
                if target != current {
                    moved = true;
                }
                for &c in &touched {
                    link[c] = 0.0;
                }
            }
            if !moved {
                break;
            }
            any_move = true;
        }

        let mut remap = vec![usize::MAX; n];
        let mut next = 0;
        for c in community.iter_mut() {
            if remap[*c] == usize::MAX {
                remap[*c] = next;
                next += 1;
            }
            *c = remap[*c];
        }
        (community, any_move)
    }

    fn aggregate(&self, community: &[usize]) -> Level {
        let count = community.iter().copied().max().map_or(0, |c| c + 1);
        let mut internal = vec![0.0; count];
        let mut maps: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); count];
        for v in 0..self.len() {
            let cv = community[v];
            internal[cv] += self.internal[v];
            for &(u, w) in &self.adjacency[v] {
                let cu = community[u];
                if cu == cv {
                    // each intra edge is seen from both endpoints
                    internal[cv] += w / 2.0;
                } else {
                    *maps[cv].entry(cu).or_insert(0.0) += w;
                }
            }
        }
        Level {
            adjacency: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
            internal,
        }
    }
}

/// Two-phase Louvain (local moving then aggregation, repeated until a level
/// produces no move) at resolution 1.
///
/// Nodes are visited in ascending id order; `seed` only breaks ties between
/// equally good target communities, so a fixed seed gives a fixed partition.
pub fn louvain(g: &Graph, seed: u64) -> CommunityPartition {
    let n = g.node_count();
    let two_m = 2.0 * g.edge_count() as f64;
    let mut membership: Vec<usize> = (0..n).collect();
    if two_m > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut level = Level::from_graph(g);
        loop {
            let (community, moved) = level.local_moving(two_m, &mut rng);
            if !moved {
                break;
            }
            for m in membership.iter_mut() {
                *m = community[*m];
            }
            level = level.aggregate(&community);
        }
    }
    CommunityPartition::from_assignment(g, &membership).expect("membership covers graph")
}

/// Copy of `g` keeping only edges whose endpoints share a community.
pub fn prune_intercommunity_edges(g: &Graph, p: &CommunityPartition) -> Graph {
    let adjacency = (0..g.node_count())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| p.community_of(u) == p.community_of(v))
                .collect()
        })
        .collect();
    Graph::from_raw_adjacency(adjacency, g.labels().to_vec())
}

/// Default significance threshold `max(k, ⌈0.01·n⌉)`.
pub fn default_significance_threshold(n: usize, k: usize) -> usize {
    k.max((n as f64 * 0.01).ceil() as usize).max(1)
}

/// Communities with at least `threshold` members, largest first (ties by
/// lower id). Falls back to the single largest community when none qualify.
pub fn select_significant(p: &CommunityPartition, threshold: usize) -> Vec<usize> {
    let mut by_size: Vec<usize> = (0..p.len()).collect();
    by_size.sort_by(|&a, &b| p.members(b).len().cmp(&p.members(a).len()).then(a.cmp(&b)));
    let significant: Vec<usize> = by_size
        .iter()
        .copied()
        .filter(|&c| p.members(c).len() >= threshold)
        .collect();
    if significant.is_empty() {
        by_size.into_iter().take(1).collect()
    } else {
        significant
    }
}

/// Seed budget and candidates of one significant community.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityBudget {
    pub community: usize,
    pub budget: usize,
    /// Indices into [`BudgetPlan::pool`].
    pub candidates: Vec<usize>,
}

/// `(community id, budget, candidates as (node, degree))`.
pub type GroupDef = (usize, usize, Vec<(NodeId, usize)>);

/// Where the optimizer may place seeds and how many per community.
#[derive(Debug, Clone, PartialEq)]
pub struct BudgetPlan {
    groups: Vec<CommunityBudget>,
    pool: Vec<NodeId>,
    pool_degree: Vec<usize>,
    pool_group: Vec<usize>,
    pool_lookup: HashMap<NodeId, usize>,
}

impl BudgetPlan {
    /// Assembles a plan from explicit groups, each a community id, a budget
    /// and its candidate nodes. Candidate nodes must be distinct across groups.
    pub fn from_groups(groups: Vec<GroupDef>) -> Result<Self> {
        let mut pool = Vec::new();
        let mut pool_degree = Vec::new();
        let mut pool_group = Vec::new();
        let mut out = Vec::with_capacity(groups.len());
        let mut pool_lookup = HashMap::new();
        for (gi, (community, budget, nodes)) in groups.into_iter().enumerate() {
            if budget > nodes.len() {
                return Err(Error::InfeasibleBudget {
                    k: budget,
                    pool: nodes.len(),
                });
            }
            let mut candidates = Vec::with_capacity(nodes.len());
            for (node, degree) in nodes {
                if pool_lookup.insert(node, pool.len()).is_some() {
                    return Err(Error::InvalidArgument(format!("node {node} listed twice")));
                }
                candidates.push(pool.len());
                pool.push(node);
                pool_degree.push(degree);
                pool_group.push(gi);
            }
            out.push(CommunityBudget {
                community,
                budget,
                candidates,
            });
        }
        Ok(Self {
            groups: out,
            pool,
            pool_degree,
            pool_group,
            pool_lookup,
        })
    }

    /// Single-group plan over every node of degree > 1, ignoring communities.
    pub fn whole_graph(g: &Graph, k: usize) -> Result<Self> {
        let nodes: Vec<(NodeId, usize)> = (0..g.node_count())
            .filter(|&v| g.degree(v) > 1)
            .map(|v| (v, g.degree(v)))
            .collect();
        if k == 0 || k > nodes.len() {
            return Err(Error::InfeasibleBudget { k, pool: nodes.len() });
        }
        Self::from_groups(vec![(0, k, nodes)])
    }

    pub fn groups(&self) -> &[CommunityBudget] {
        &self.groups
    }

    pub fn significant(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.community).collect()
    }

    pub fn budget_of(&self, community: usize) -> Option<usize> {
        self.groups.iter().find(|g| g.community == community).map(|g| g.budget)
    }

    /// Total seed budget `k`.
    pub fn k(&self) -> usize {
        self.groups.iter().map(|g| g.budget).sum()
    }

    /// Candidate nodes; position vectors are indexed like this slice.
    pub fn pool(&self) -> &[NodeId] {
        &self.pool
    }

    pub fn pool_degree(&self, idx: usize) -> usize {
        self.pool_degree[idx]
    }

    /// Group index (into [`BudgetPlan::groups`]) of pool entry `idx`.
    pub fn pool_group(&self, idx: usize) -> usize {
        self.pool_group[idx]
    }

    /// Pool index of `node`, if it is a candidate.
    pub fn pool_index(&self, node: NodeId) -> Option<usize> {
        self.pool_lookup.get(&node).copied()
    }
}

/// Largest-remainder apportionment of `k` over `weights`. Remainder ties go to
/// the entry with larger `size`, then lower index.
pub fn apportion(weights: &[f64], sizes: &[usize], k: usize) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    if weights.is_empty() {
        return Vec::new();
    }
    let weights: Vec<f64> = if total > 0.0 {
        weights.to_vec()
    } else {
        vec![1.0; weights.len()]
    };
    let total: f64 = weights.iter().sum();
    let quotas: Vec<f64> = weights.iter().map(|w| k as f64 * w / total).collect();
    let mut shares: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let assigned: usize = shares.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&a, &b| {
        let ra = quotas[a] - quotas[a].floor();
        let rb = quotas[b] - quotas[b].floor();
        rb.partial_cmp(&ra)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(sizes[b].cmp(&sizes[a]))
            .then(a.cmp(&b))
    });
    for &i in order.iter().cycle().take(k.saturating_sub(assigned)) {
        shares[i] += 1;
    }
    shares
}

/// Splits `k` seeds over the `significant` communities of `p`, weighting each
/// by its total degree in `g` (normally the pruned graph). Candidates are the
/// degree > 1 nodes of each community. A community with fewer candidates than
/// its share passes the excess to the next community in size order.
pub fn allocate_budgets(g: &Graph, p: &CommunityPartition, significant: &[usize], k: usize) -> Result<BudgetPlan> {
    if k == 0 {
        return Err(Error::InvalidArgument("seed budget k must be at least 1".into()));
    }
    if significant.is_empty() {
        return Err(Error::InvalidArgument("no significant community".into()));
    }
    let candidates: Vec<Vec<(NodeId, usize)>> = significant
        .iter()
        .map(|&c| {
            p.members(c)
                .iter()
                .copied()
                .filter(|&v| g.degree(v) > 1)
                .map(|v| (v, g.degree(v)))
                .collect()
        })
        .collect();
    let pool: usize = candidates.iter().map(Vec::len).sum();
    if k > pool {
        return Err(Error::InfeasibleBudget { k, pool });
    }

    let weights: Vec<f64> = significant
        .iter()
        .map(|&c| p.members(c).iter().map(|&v| g.degree(v) as f64).sum())
        .collect();
    let sizes: Vec<usize> = significant.iter().map(|&c| p.members(c).len()).collect();
    let mut budgets = apportion(&weights, &sizes, k);

    // Donation walks communities in descending size, wrapping around.
    let mut order: Vec<usize> = (0..significant.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(significant[a].cmp(&significant[b])));
    for pos in 0..order.len() {
        let donor = order[pos];
        let mut excess = budgets[donor].saturating_sub(candidates[donor].len());
        budgets[donor] -= excess;
        let mut step = 1;
        while excess > 0 && step < order.len() {
            let receiver = order[(pos + step) % order.len()];
            let room = candidates[receiver].len().saturating_sub(budgets[receiver]);
            let moved = room.min(excess);
            budgets[receiver] += moved;
            excess -= moved;
            step += 1;
        }
        debug_assert_eq!(excess, 0, "pool size was checked against k");
    }

    BudgetPlan::from_groups(
        significant
            .iter()
            .zip(budgets)
            .zip(candidates)
            .map(|((&c, b), nodes)| (c, b, nodes))
            .collect(),
    )
}
