//! HITS hubs and authorities with an edge-weight exponent.
//!
//! Every edge `i -> j` with weight `w` enters the iteration as `w^alpha`:
//!
//! ```text
//! auth(k) = Wᵀ · hub(k-1)
//! hub(k)  = W  · auth(k)
//! ```
//!
//! `alpha = 1` is basic HITS on contact counts, `alpha = 0` ignores weights entirely
//! (binarized graph), and `0 < alpha < 1` damps heavy edges sub-linearly.
//!
//! Because the new `auth` feeds the `hub` update of the same iteration, `auth(k)` is
//! proportional to `(WᵀW) auth(k-1)` and `hub(k)` to `(WWᵀ) hub(k-1)`: the two vectors
//! converge to the dominant eigenvectors of the gram products independently.

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;

/// One nonnegative score per node, indexed by `NodeId::index()`.
pub type ScoreVector = Vec<f64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Rescale each vector to sum 1 after every iteration.
    #[default]
    L1,
    /// Keep raw products. Convergence is still judged on L1-normalized copies.
    /// Raw values grow geometrically, so long runs may overflow.
    None,
}

impl Normalization {
    pub fn name(self) -> &'static str {
        match self {
            Normalization::L1 => "l1",
            Normalization::None => "none",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HitsConfig {
    /// Exponent applied to every edge weight.
    pub alpha: f64,
    pub max_iter: usize,
    /// Threshold on the max-norm change of the normalized vectors.
    pub tolerance: f64,
    pub normalization: Normalization,
}

/// Exponent that best matched reference rankings on organisational networks.
pub const DEFAULT_ALPHA: f64 = 2.0 / 3.0;

impl Default for HitsConfig {
    fn default() -> Self {
        HitsConfig {
            alpha: DEFAULT_ALPHA,
            max_iter: 1000,
            tolerance: 1e-9,
            normalization: Normalization::L1,
        }
    }
}

impl HitsConfig {
    /// Basic HITS: raw weights (`alpha = 1`).
    pub fn basic() -> Self {
        HitsConfig {
            alpha: 1.0,
            ..Default::default()
        }
    }

    pub fn with_alpha(alpha: f64) -> Self {
        HitsConfig {
            alpha,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
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

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha >= 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "alpha must be a finite value >= 0, got {alpha}"
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HitsResult {
    pub auth: ScoreVector,
    pub hub: ScoreVector,
    pub iterations: usize,
    pub converged: bool,
}

/// `w^alpha`, with `alpha = 0` mapping every existing edge to 1.
fn scaled_weight(weight: f64, alpha: f64) -> f64 {
    if alpha == 0.0 {
        1.0
    } else {
        weight.powf(alpha)
    }
}

/// Edge list with exponentiated weights, computed once per ranking.
struct ScaledEdges {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl ScaledEdges {
    fn new(graph: &WeightedDigraph, alpha: f64) -> Self {
        ScaledEdges {
            n: graph.node_count(),
            edges: graph
                .edges()
                .iter()
                .map(|e| (e.src.index(), e.dst.index(), scaled_weight(e.weight, alpha)))
                .collect(),
        }
    }

    fn step(&self, hub_prev: &[f64]) -> (ScoreVector, ScoreVector) {
        let mut auth = vec![0.0; self.n];
        for &(s, d, w) in &self.edges {
            auth[d] += w * hub_prev[s];
        }
        let mut hub = vec![0.0; self.n];
        for &(s, d, w) in &self.edges {
            hub[s] += w * auth[d];
        }
        (auth, hub)
    }
}

/// One unnormalized HITS update.
///
/// `auth_next = Wᵀ·hub_prev`, then `hub_next = W·auth_next`. `auth_prev` does not enter
/// the update; it is taken for symmetry with the iteration state and length-checked.
pub fn hits_step(
    graph: &WeightedDigraph,
    auth_prev: &[f64],
    hub_prev: &[f64],
    alpha: f64,
) -> Result<(ScoreVector, ScoreVector)> {
    let n = graph.node_count();
    for len in [auth_prev.len(), hub_prev.len()] {
        if len != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: len,
            });
        }
    }
    check_alpha(alpha)?;
    Ok(ScaledEdges::new(graph, alpha).step(hub_prev))
}

fn l1_normalized(v: &[f64]) -> ScoreVector {
    let sum: f64 = v.iter().sum();
    if sum > 0.0 {
        v.iter().map(|x| x / sum).collect()
    } else {
        v.to_vec()
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Runs HITS from all-ones vectors until the normalized auth and hub both move less
/// than `config.tolerance` (max-norm) in one iteration, or `max_iter` is reached.
///
/// Graphs without edges short-circuit to all-zero scores after one iteration and report
/// convergence. Non-convergence is reported through [`HitsResult::converged`].
pub fn hits_rank(graph: &WeightedDigraph, config: &HitsConfig) -> Result<HitsResult> {
    config.validate()?;
    let n = graph.node_count();
    if n == 0 {
        return Err(Error::InvalidConfig("graph has no nodes".into()));
    }
    let scaled = ScaledEdges::new(graph, config.alpha);

    let mut auth = vec![1.0; n];
    let mut hub = vec![1.0; n];
    let mut auth_view = l1_normalized(&auth);
    let mut hub_view = l1_normalized(&hub);

    for k in 1..=config.max_iter {
        let (next_auth, next_hub) = scaled.step(&hub);
        if next_auth.iter().all(|&x| x == 0.0) || next_hub.iter().all(|&x| x == 0.0) {
            return Ok(HitsResult {
                auth: vec![0.0; n],
                hub: vec![0.0; n],
                iterations: k,
                converged: true,
            });
        }
        let next_auth_view = l1_normalized(&next_auth);
        let next_hub_view = l1_normalized(&next_hub);
        let delta = max_abs_diff(&auth_view, &next_auth_view)
            .max(max_abs_diff(&hub_view, &next_hub_view));

        match config.normalization {
            Normalization::L1 => {
                auth = next_auth_view.clone();
                hub = next_hub_view.clone();
            }
            Normalization::None => {
                auth = next_auth;
                hub = next_hub;
            }
        }
        auth_view = next_auth_view;
        hub_view = next_hub_view;

        if delta < config.tolerance {
            return Ok(HitsResult {
                auth,
                hub,
                iterations: k,
                converged: true,
            });
        }
    }
    Ok(HitsResult {
        auth,
        hub,
        iterations: config.max_iter,
        converged: false,
    })
}
