//! PageRank baseline.
//!
//! Standard form:
//!
//! ```text
//! PR(A) = (1 - d)/n + d · Σ_{T -> A} PR(T) / C(T)
//! ```
//!
//! where `C(T)` is the out-degree of `T` (or, in weighted mode, each out-edge carries the
//! fraction `w(T, A) / Σ w(T, ·)`). A literal variant with additive constant `(1 + d)` is
//! available through [`BaseConstant::OnePlusDamping`]; it is renormalized after every sweep.

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::hits::ScoreVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseConstant {
    /// `(1 - d)/n` teleport term.
    #[default]
    Standard,
    /// `(1 + d)` added to every node, then L1 normalization.
    OnePlusDamping,
}

/// What happens to the rank mass of nodes with no out-edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dangling {
    /// Spread evenly over all nodes.
    #[default]
    RedistributeUniform,
    /// Kept by the dangling node, as if it had a self-loop.
    SelfAbsorb,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    pub max_iter: usize,
    pub tolerance: f64,
    pub base_constant: BaseConstant,
    pub dangling: Dangling,
    /// Split out-link mass by weight instead of evenly by out-degree.
    pub weighted: bool,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            damping: 0.85,
            max_iter: 1000,
            tolerance: 1e-12,
            base_constant: BaseConstant::Standard,
            dangling: Dangling::RedistributeUniform,
            weighted: false,
        }
    }
}

impl PageRankConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.damping > 0.0 && self.damping < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "damping must lie in (0, 1), got {}",
                self.damping
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PageRankResult {
    /// L1-normalized scores.
    pub scores: ScoreVector,
    pub iterations: usize,
    pub converged: bool,
}

/// Column-stochastic transition structure: `(src, dst, share)` plus dangling nodes.
struct Transitions {
    n: usize,
    links: Vec<(usize, usize, f64)>,
    dangling: Vec<usize>,
}

impl Transitions {
    fn new(graph: &WeightedDigraph, weighted: bool) -> Self {
        let n = graph.node_count();
        let mut links = Vec::with_capacity(graph.edge_count());
        let mut dangling = Vec::new();
        for node in graph.nodes() {
            let out = graph.out_edges(node).expect("node in range");
            if out.is_empty() {
                dangling.push(node.index());
                continue;
            }
            let total: f64 = if weighted {
                out.iter().map(|e| e.weight).sum()
            } else {
                out.len() as f64
            };
            for e in out {
                let share = if weighted { e.weight / total } else { 1.0 / total };
                links.push((e.src.index(), e.dst.index(), share));
            }
        }
        Transitions { n, links, dangling }
    }

    fn sweep(&self, pr: &[f64], config: &PageRankConfig) -> ScoreVector {
        let n = self.n as f64;
        let d = config.damping;
        let base = match config.base_constant {
            BaseConstant::Standard => (1.0 - d) / n,
            BaseConstant::OnePlusDamping => 1.0 + d,
        };
        let mut next = vec![base; self.n];
        for &(s, t, share) in &self.links {
            next[t] += d * pr[s] * share;
        }
        match config.dangling {
            Dangling::RedistributeUniform => {
                let mass: f64 = self.dangling.iter().map(|&i| pr[i]).sum();
                if mass > 0.0 {
                    let each = d * mass / n;
                    next.iter_mut().for_each(|x| *x += each);
                }
            }
            Dangling::SelfAbsorb => {
                for &i in &self.dangling {
                    next[i] += d * pr[i];
                }
            }
        }
        normalize(&mut next);
        next
    }
}

fn normalize(v: &mut [f64]) {
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        v.iter_mut().for_each(|x| *x /= sum);
    }
}

/// PageRank from the uniform start vector.
pub fn pagerank(graph: &WeightedDigraph, config: &PageRankConfig) -> Result<PageRankResult> {
    let n = graph.node_count();
    pagerank_from(graph, config, &vec![1.0; n])
}

/// PageRank from an arbitrary nonnegative start vector (normalized before use).
pub fn pagerank_from(
    graph: &WeightedDigraph,
    config: &PageRankConfig,
    start: &[f64],
) -> Result<PageRankResult> {
    config.validate()?;
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::InvalidConfig("graph has no nodes".into()));
    }
    if start.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: start.len(),
        });
    }
    if start.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) || start.iter().all(|&x| x == 0.0) {
        return Err(Error::InvalidConfig(
            "start vector must be nonnegative with positive mass".into(),
        ));
    }
    let transitions = Transitions::new(graph, config.weighted);
    let mut pr = start.to_vec();
    normalize(&mut pr);

    for k in 1..=config.max_iter {
        let next = transitions.sweep(&pr, config);
        let delta = pr
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        pr = next;
        if delta < config.tolerance {
            return Ok(PageRankResult {
                scores: pr,
                iterations: k,
                converged: true,
            });
        }
    }
    Ok(PageRankResult {
        scores: pr,
        iterations: config.max_iter,
        converged: false,
    })
}
