//! Node ranking for weighted directed networks with a near-tree ("quasi-hierarchical")
//! structure.
//!
//! The crate provides:
//!
//! - [`graph`]: a weighted digraph with dense `1..=n` node ids, adjacency export and
//!   the gram products `LᵀL` / `LLᵀ`.
//! - [`hits`]: basic HITS and weight-exponent HITS, where each edge contributes
//!   `weight^alpha` instead of its raw weight.
//! - [`pagerank`]: PageRank baseline.
//! - [`combine`]: F-measure (harmonic mean) of auth and hub, and deterministic orderings.
//! - [`compare`]: Kendall tau, exact position matches and top-k overlap against a
//!   reference ranking.
//! - [`netgen`]: seeded generator of synthetic quasi-hierarchical networks.
//! - [`io`]: tab-separated edge lists, ranking files and score reports.
//! - [`cli`]: the `qhrank` command-line front end.

pub mod cli;
pub mod combine;
pub mod compare;
pub mod error;
pub mod graph;
pub mod hits;
pub mod io;
pub mod netgen;
pub mod pagerank;

pub use combine::{f_measure, rank_nodes, RankKey, RankScores, RankingResult};
pub use compare::{compare_orders, compare_rankings, kendall_tau, ComparisonReport, ReferenceRanking};
pub use error::{Error, Result};
pub use graph::{build_graph, DenseMatrix, Edge, NodeId, WeightedDigraph};
pub use hits::{hits_rank, hits_step, HitsConfig, HitsResult, Normalization};
pub use netgen::{generate, GeneratorConfig, GroundTruth, WeightRange};
pub use pagerank::{pagerank, BaseConstant, Dangling, PageRankConfig, PageRankResult};
