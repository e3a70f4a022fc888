//! F-measure fusion of authority and hub scores, and deterministic node orderings.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::hits::{HitsResult, ScoreVector};
use crate::pagerank::PageRankResult;

/// Harmonic mean `2 / (1/auth + 1/hub)`, defined as 0 when either score is 0.
pub fn f_measure(auth: f64, hub: f64) -> Result<f64> {
    for x in [auth, hub] {
        if x < 0.0 || x.is_nan() {
            return Err(Error::NegativeScore(x));
        }
    }
    if auth == 0.0 || hub == 0.0 {
        return Ok(0.0);
    }
    if auth == hub {
        return Ok(auth);
    }
    // Same value as 2/(1/a + 1/b) but stays finite for tiny inputs.
    Ok(2.0 * auth * hub / (auth + hub))
}

/// Nodes sorted by descending score; equal scores keep ascending node id.
pub fn rank_nodes(scores: &[f64]) -> Vec<NodeId> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order.into_iter().map(NodeId::from_index).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankKey {
    Auth,
    Hub,
    F,
    PageRank,
}

impl RankKey {
    pub fn name(self) -> &'static str {
        match self {
            RankKey::Auth => "auth",
            RankKey::Hub => "hub",
            RankKey::F => "f",
            RankKey::PageRank => "pr",
        }
    }
}

impl fmt::Display for RankKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RankKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auth" => Ok(RankKey::Auth),
            "hub" => Ok(RankKey::Hub),
            "f" => Ok(RankKey::F),
            "pr" | "pagerank" => Ok(RankKey::PageRank),
            other => Err(Error::InvalidConfig(format!("unknown ranking key '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RankScores {
    Hits {
        auth: ScoreVector,
        hub: ScoreVector,
        f: ScoreVector,
    },
    PageRank(ScoreVector),
}

/// Per-node scores plus a total order by the selected key.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingResult {
    pub key: RankKey,
    pub scores: RankScores,
    /// Best node first.
    pub order: Vec<NodeId>,
}

impl RankingResult {
    pub fn from_hits(result: &HitsResult, key: RankKey) -> Result<Self> {
        if key == RankKey::PageRank {
            return Err(Error::KeyMismatch {
                key: key.name(),
                algorithm: "HITS",
            });
        }
        let f = result
            .auth
            .iter()
            .zip(&result.hub)
            .map(|(&a, &h)| f_measure(a, h))
            .collect::<Result<Vec<_>>>()?;
        let scores = RankScores::Hits {
            auth: result.auth.clone(),
            hub: result.hub.clone(),
            f,
        };
        Ok(Self::with_scores(scores, key))
    }

    pub fn from_pagerank(result: &PageRankResult) -> Self {
        Self::with_scores(RankScores::PageRank(result.scores.clone()), RankKey::PageRank)
    }

    fn with_scores(scores: RankScores, key: RankKey) -> Self {
        let mut r = RankingResult {
            key,
            scores,
            order: Vec::new(),
        };
        r.order = rank_nodes(r.key_values());
        r
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Score vector the order was derived from.
    pub fn key_values(&self) -> &[f64] {
        match (&self.scores, self.key) {
            (RankScores::Hits { auth, .. }, RankKey::Auth) => auth,
            (RankScores::Hits { hub, .. }, RankKey::Hub) => hub,
            (RankScores::Hits { f, .. }, RankKey::F) => f,
            (RankScores::PageRank(pr), _) => pr,
            (RankScores::Hits { .. }, RankKey::PageRank) => unreachable!("rejected at construction"),
        }
    }

    /// 1-based rank of every node, indexed by `NodeId::index()`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (rank, node) in self.order.iter().enumerate() {
            pos[node.index()] = rank + 1;
        }
        pos
    }
}
