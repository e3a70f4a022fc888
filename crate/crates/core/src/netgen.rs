//! Seeded generator of synthetic quasi-hierarchical networks.
//!
//! A complete tree of the given depth and branching factor is built with node 1 as the
//! root and ids assigned breadth-first. Every manager/subordinate pair is linked in both
//! directions: the downward edge (manager to subordinate) draws its weight from
//! `down_weight_range`, the upward report from `up_weight_range`, and every downward
//! weight exceeds every upward one. A small number of extra links between otherwise
//! unconnected pairs then breaks the strict hierarchy.
//!
//! The edge count is `2·(n − 1) + extra_links`, linear in the node count.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compare::ReferenceRanking;
use crate::error::{Error, Result};
use crate::graph::{build_graph, NodeId, WeightedDigraph};

const MAX_NODES: usize = 1 << 22;

/// Inclusive real interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightRange {
    pub min: f64,
    pub max: f64,
}

impl WeightRange {
    pub const fn new(min: f64, max: f64) -> Self {
        WeightRange { min, max }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if !(self.min > 0.0 && self.min <= self.max && self.max.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "{name} must satisfy 0 < min <= max, got {self}"
            )));
        }
        Ok(())
    }

    fn sample(&self, rng: &mut impl Rng) -> f64 {
        if self.min == self.max {
            self.min
        } else {
            rng.gen_range(self.min..=self.max)
        }
    }
}

impl fmt::Display for WeightRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.min, self.max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    /// Levels below the root.
    pub depth: usize,
    /// Subordinates per manager.
    pub branching: usize,
    /// Non-hierarchical edges added on top of the tree.
    pub extra_links: usize,
    pub down_weight_range: WeightRange,
    pub up_weight_range: WeightRange,
    pub extra_weight_range: WeightRange,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            depth: 3,
            branching: 3,
            extra_links: 0,
            down_weight_range: WeightRange::new(5.0, 10.0),
            up_weight_range: WeightRange::new(1.0, 4.0),
            extra_weight_range: WeightRange::new(1.0, 2.0),
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    /// Node count of the complete tree, `None` on overflow.
    pub fn node_count(&self) -> Option<usize> {
        let mut total: usize = 1;
        let mut level: usize = 1;
        for _ in 0..self.depth {
            level = level.checked_mul(self.branching)?;
            total = total.checked_add(level)?;
        }
        Some(total)
    }

    pub fn validate(&self) -> Result<usize> {
        if self.depth == 0 || self.branching == 0 {
            return Err(Error::InvalidConfig(
                "depth and branching must both be at least 1".into(),
            ));
        }
        let n = self
            .node_count()
            .filter(|&n| n <= MAX_NODES)
            .ok_or_else(|| {
                Error::InvalidConfig(format!("tree would exceed {MAX_NODES} nodes"))
            })?;
        self.down_weight_range.validate("down_weight_range")?;
        self.up_weight_range.validate("up_weight_range")?;
        self.extra_weight_range.validate("extra_weight_range")?;
        if !(self.up_weight_range.max < self.down_weight_range.min) {
            return Err(Error::InvalidConfig(format!(
                "upward weights {} must stay below downward weights {}",
                self.up_weight_range, self.down_weight_range
            )));
        }
        // Unordered pairs not joined by a tree edge.
        let free_pairs = n * (n - 1) / 2 - (n - 1);
        if self.extra_links > free_pairs {
            return Err(Error::InvalidConfig(format!(
                "{} extra links requested but only {free_pairs} unconnected pairs exist",
                self.extra_links
            )));
        }
        Ok(n)
    }

    /// Soft warnings that do not stop generation.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(n) = self.node_count() {
            if self.extra_links as f64 > 0.2 * n as f64 {
                out.push(format!(
                    "{} extra links on {n} nodes exceeds 0.2·n; the network is no longer quasi-hierarchical",
                    self.extra_links
                ));
            }
        }
        out
    }
}

/// The generating tree: level (0 = root) and parent of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruth {
    pub level: Vec<usize>,
    pub parent: Vec<Option<NodeId>>,
}

impl GroundTruth {
    pub fn node_count(&self) -> usize {
        self.level.len()
    }

    pub fn root(&self) -> NodeId {
        NodeId(1)
    }

    pub fn is_tree_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.parent[b.index()] == Some(a) || self.parent[a.index()] == Some(b)
    }

    /// Nodes by ascending level, ties by ascending id.
    pub fn reference_order(&self) -> ReferenceRanking {
        let mut ids: Vec<usize> = (1..=self.node_count()).collect();
        ids.sort_by_key(|&v| (self.level[v - 1], v));
        ReferenceRanking::from_ids(&ids).expect("levels cover every node")
    }
}

/// Builds a network and its ground truth. The same config always yields the same graph.
pub fn generate(config: &GeneratorConfig) -> Result<(WeightedDigraph, GroundTruth)> {
    let n = config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut level = vec![0usize; n];
    let mut parent = vec![None; n];
    let mut edges = Vec::with_capacity(2 * (n - 1) + config.extra_links);
    // Breadth-first ids: children of node v (1-based) are b·(v−1)+2 ..= b·v+1.
    for child in 2..=n {
        let manager = (child - 2) / config.branching + 1;
        level[child - 1] = level[manager - 1] + 1;
        parent[child - 1] = Some(NodeId(manager));
        edges.push((manager, child, config.down_weight_range.sample(&mut rng)));
        edges.push((child, manager, config.up_weight_range.sample(&mut rng)));
    }
    let truth = GroundTruth { level, parent };

    let mut taken = std::collections::HashSet::new();
    let max_attempts = 1000 + 100 * config.extra_links;
    let mut attempts = 0;
    while taken.len() < config.extra_links {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::InvalidConfig(format!(
                "could not place {} extra links after {max_attempts} attempts",
                config.extra_links
            )));
        }
        let src = rng.gen_range(1..=n);
        let dst = rng.gen_range(1..=n);
        if src == dst || truth.is_tree_edge(NodeId(src), NodeId(dst)) {
            continue;
        }
        if !taken.insert((src.min(dst), src.max(dst))) {
            continue;
        }
        edges.push((src, dst, config.extra_weight_range.sample(&mut rng)));
    }

    Ok((build_graph(n, edges)?, truth))
}
