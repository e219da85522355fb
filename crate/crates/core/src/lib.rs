//! Influence maximization by community-restricted discrete Harris' hawks
//! optimization.
//!
//! The crate selects `k` seed nodes of a social network that maximize the
//! two-hop Local Influence Estimator (LIE), searching only inside the
//! significant Louvain communities, and validates selections with
//! Independent Cascade simulation against centrality baselines.
//!
//! Modules, bottom-up:
//!
//! * [`graph`]: edge-list loading and neighborhood queries.
//! * [`community`]: Louvain, edge pruning, seed budgets per community.
//! * [`influence`]: LIE and EDV estimators.
//! * [`hho`]: the optimizer (position decoding, update rules, Lévy flight,
//!   neighbor scout).
//! * [`diffusion`]: Independent Cascade Monte-Carlo.
//! * [`baselines`]: degree, PageRank, H-index, ENC rankings.
//! * [`stats`]: Friedman, Iman–Davenport and Holm.
//! * [`harness`]: sweeps and comparison used by the `seedhawk` binary.

pub mod baselines;
pub mod community;
pub mod diffusion;
pub mod error;
pub mod graph;
pub mod harness;
pub mod hho;
pub mod influence;
pub mod seeds;
pub mod stats;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use seeds::SeedSet;
