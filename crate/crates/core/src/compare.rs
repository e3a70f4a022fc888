//! Agreement between a computed ranking and a reference ranking.

use crate::combine::RankingResult;
use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Strict total order over nodes `1..=n`, best first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRanking {
    order: Vec<NodeId>,
}

impl ReferenceRanking {
    /// Validates that `order` names every node of `1..=order.len()` exactly once.
    pub fn new(order: Vec<NodeId>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &node in &order {
            if node.0 == 0 || node.0 > n {
                return Err(Error::NotAPermutation(format!(
                    "node {node} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[node.index()], true) {
                return Err(Error::NotAPermutation(format!("node {node} appears twice")));
            }
        }
        Ok(ReferenceRanking { order })
    }

    pub fn from_ids(ids: &[usize]) -> Result<Self> {
        Self::new(ids.iter().copied().map(NodeId).collect())
    }

    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (rank, node) in self.order.iter().enumerate() {
            pos[node.index()] = rank;
        }
        pos
    }
}

impl From<&RankingResult> for ReferenceRanking {
    fn from(r: &RankingResult) -> Self {
        ReferenceRanking {
            order: r.order.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub n: usize,
    pub kendall_tau: f64,
    /// Positions at which both orders name the same node.
    pub exact_matches: usize,
    /// `(k, |top_k(a) ∩ top_k(b)| / k)` in the order the `k`s were requested.
    pub top_k_overlap: Vec<(usize, f64)>,
}

fn check_same_size(a: &ReferenceRanking, b: &ReferenceRanking) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::NodeSetMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Kendall tau-a: `(concordant - discordant) / (n(n-1)/2)`.
///
/// With fewer than two nodes there are no pairs; the orders are trivially identical and
/// the result is 1.
pub fn kendall_tau(a: &ReferenceRanking, b: &ReferenceRanking) -> Result<f64> {
    check_same_size(a, b)?;
    let n = a.len();
    if n < 2 {
        return Ok(1.0);
    }
    let pb = b.positions();
    // Walk the nodes in a's order; a pair is concordant iff b keeps it in the same order.
    let in_b: Vec<usize> = a.order.iter().map(|v| pb[v.index()]).collect();
    let mut concordant: i64 = 0;
    let mut discordant: i64 = 0;
    for i in 0..n {
        for j in i + 1..n {
            if in_b[i] < in_b[j] {
                concordant += 1;
            } else {
                discordant += 1;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    Ok((concordant - discordant) as f64 / pairs)
}

/// Full report for two strict orders over the same node set.
pub fn compare_orders(
    computed: &ReferenceRanking,
    reference: &ReferenceRanking,
    ks: &[usize],
) -> Result<ComparisonReport> {
    check_same_size(computed, reference)?;
    let n = computed.len();
    for &k in ks {
        if k == 0 || k > n {
            return Err(Error::KOutOfRange { k, n });
        }
    }
    let kendall_tau = kendall_tau(computed, reference)?;
    let exact_matches = computed
        .order
        .iter()
        .zip(&reference.order)
        .filter(|(a, b)| a == b)
        .count();
    let top_k_overlap = ks
        .iter()
        .map(|&k| {
            let mut in_top = vec![false; n];
            for v in &reference.order[..k] {
                in_top[v.index()] = true;
            }
            let common = computed.order[..k].iter().filter(|v| in_top[v.index()]).count();
            (k, common as f64 / k as f64)
        })
        .collect();
    Ok(ComparisonReport {
        n,
        kendall_tau,
        exact_matches,
        top_k_overlap,
    })
}

pub fn compare_rankings(
    computed: &RankingResult,
    reference: &ReferenceRanking,
    ks: &[usize],
) -> Result<ComparisonReport> {
    compare_orders(&ReferenceRanking::from(computed), reference, ks)
}
