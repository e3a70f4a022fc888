//! Plain-text formats: edge lists, ranking files, score reports and comparison reports.
//!
//! All formats are UTF-8, LF-terminated and tab-separated. Lines starting with `#` are
//! comments, except the optional edge-list header `# nodes=<n>`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::BufRead;
use std::path::Path;

use crate::combine::{RankScores, RankingResult};
use crate::compare::{ComparisonReport, ReferenceRanking};
use crate::error::{Error, Result};
use crate::graph::{build_graph, NodeId, WeightedDigraph};
use crate::netgen::GroundTruth;

/// Bidirectional map between external node labels and dense ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeLabels {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl NodeLabels {
    /// Labels `"1"..="n"`.
    pub fn numeric(n: usize) -> Self {
        Self::from_names((1..=n).map(|i| i.to_string()).collect()).expect("distinct")
    }

    pub fn from_names(names: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), NodeId::from_index(i)).is_some() {
                return Err(Error::Data(format!("duplicate node label '{name}'")));
            }
        }
        Ok(NodeLabels { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A parsed edge-list file.
#[derive(Debug, Clone)]
pub struct EdgeListFile {
    pub graph: WeightedDigraph,
    pub labels: NodeLabels,
    /// Data lines merged into an earlier line with the same `(src, dst)`.
    pub duplicates: usize,
}

struct RawEdge<'a> {
    line: usize,
    src: &'a str,
    dst: &'a str,
    weight: f64,
}

fn parse_header(line: &str) -> Option<&str> {
    line.strip_prefix('#')?.trim().strip_prefix("nodes=")
}

/// Parses `src<TAB>dst<TAB>weight` lines.
///
/// When every endpoint is a positive integer the integers are the node ids and the node
/// count is the header value (or the largest id without a header). Otherwise endpoints
/// are labels, numbered in order of first appearance; a header must then match the
/// number of distinct labels.
pub fn parse_edge_list(text: &str) -> Result<EdgeListFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(value) = parse_header(line) {
                if header.is_some() {
                    return Err(Error::parse(line_no, "repeated '# nodes=' header"));
                }
                let n = value.trim().parse::<usize>().map_err(|_| {
                    Error::parse(line_no, format!("invalid node count '{}'", value.trim()))
                })?;
                header = Some((n, line_no));
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(
                line_no,
                format!(
                    "expected 3 tab-separated fields (src, dst, weight), found {}",
                    fields.len()
                ),
            ));
        }
        let (src, dst) = (fields[0].trim(), fields[1].trim());
        if src.is_empty() || dst.is_empty() {
            return Err(Error::parse(line_no, "empty node field"));
        }
        let weight: f64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("unparsable weight '{}'", fields[2])))?;
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(Error::parse(
                line_no,
                format!("weight must be positive and finite, got {weight}"),
            ));
        }
        raw.push(RawEdge {
            line: line_no,
            src,
            dst,
            weight,
        });
    }

    let numeric = raw.iter().all(|e| {
        [e.src, e.dst]
            .iter()
            .all(|t| t.parse::<usize>().is_ok_and(|v| v >= 1))
    });

    let (labels, ids): (NodeLabels, Vec<(usize, usize)>) = if numeric {
        let ids: Vec<(usize, usize)> = raw
            .iter()
            .map(|e| (e.src.parse().unwrap(), e.dst.parse().unwrap()))
            .collect();
        let max_id = ids.iter().map(|&(s, d)| s.max(d)).max().unwrap_or(0);
        let n = match header {
            Some((n, _)) => {
                if let Some((k, _)) = ids.iter().enumerate().find(|(_, &(s, d))| s.max(d) > n) {
                    return Err(Error::parse(
                        raw[k].line,
                        format!("node {} exceeds declared node count {n}", ids[k].0.max(ids[k].1)),
                    ));
                }
                n
            }
            None => max_id,
        };
        (NodeLabels::numeric(n), ids)
    } else {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut intern = |label| {
            *index.entry(label).or_insert_with(|| {
                names.push(label.to_string());
                names.len()
            })
        };
        let ids: Vec<(usize, usize)> = raw.iter().map(|e| (intern(e.src), intern(e.dst))).collect();
        if let Some((n, line)) = header {
            if n != names.len() {
                return Err(Error::parse(
                    line,
                    format!(
                        "header declares {n} nodes but the file names {} distinct labels",
                        names.len()
                    ),
                ));
            }
        }
        (NodeLabels::from_names(names)?, ids)
    };

    let distinct: std::collections::HashSet<(usize, usize)> = ids.iter().copied().collect();
    let duplicates = ids.len() - distinct.len();
    let graph = build_graph(
        labels.len(),
        ids.iter().zip(&raw).map(|(&(s, d), e)| (s, d, e.weight)),
    )?;
    Ok(EdgeListFile {
        graph,
        labels,
        duplicates,
    })
}

pub fn read_edge_list<R: BufRead>(mut reader: R) -> Result<EdgeListFile> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|source| Error::Io {
        path: "<stream>".into(),
        source,
    })?;
    parse_edge_list(&text)
}

pub fn read_edge_list_path(path: &Path) -> Result<EdgeListFile> {
    parse_edge_list(&read_file(path)?)
}

/// Serializes a graph as `# nodes=<n>` plus one line per edge in `(src, dst)` order.
///
/// Weights use the shortest representation that parses back to the same `f64`, so
/// reading the output reproduces the graph exactly. `preamble` lines are emitted as
/// `# ` comments before the header.
pub fn write_edge_list(graph: &WeightedDigraph, labels: &NodeLabels, preamble: &[String]) -> String {
    let mut out = String::new();
    for line in preamble {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "# nodes={}", graph.node_count());
    for e in graph.edges() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            labels.name(e.src),
            labels.name(e.dst),
            e.weight
        );
    }
    out
}

/// One label per line, best first.
pub fn write_ranking(order: &[NodeId], labels: &NodeLabels) -> String {
    let mut out = String::new();
    for &v in order {
        let _ = writeln!(out, "{}", labels.name(v));
    }
    out
}

/// Reads a ranking file against a known label set. Every label must appear exactly once.
pub fn parse_reference(text: &str, labels: &NodeLabels) -> Result<ReferenceRanking> {
    let mut order = Vec::with_capacity(labels.len());
    let mut seen = vec![false; labels.len()];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let id = labels
            .id(line)
            .ok_or_else(|| Error::parse(i + 1, format!("unknown node '{line}'")))?;
        if std::mem::replace(&mut seen[id.index()], true) {
            return Err(Error::parse(i + 1, format!("node '{line}' is listed twice")));
        }
        order.push(id);
    }
    let missing: Vec<&str> = seen
        .iter()
        .enumerate()
        .filter(|(_, &s)| !s)
        .map(|(i, _)| labels.name(NodeId::from_index(i)))
        .collect();
    if !missing.is_empty() {
        return Err(Error::Data(format!(
            "reference ranking is missing {} node(s): {}",
            missing.len(),
            missing.join(", ")
        )));
    }
    ReferenceRanking::new(order)
}

pub fn read_reference(path: &Path, labels: &NodeLabels) -> Result<ReferenceRanking> {
    parse_reference(&read_file(path)?, labels)
}

/// `node<TAB>level<TAB>parent` table, `-` for the root's parent.
pub fn write_ground_truth(truth: &GroundTruth) -> String {
    let mut out = String::from("node\tlevel\tparent\n");
    for (i, (level, parent)) in truth.level.iter().zip(&truth.parent).enumerate() {
        let parent = parent.map_or_else(|| "-".to_string(), |p| p.to_string());
        let _ = writeln!(out, "{}\t{level}\t{parent}", i + 1);
    }
    out
}

/// Decimal digits for printed scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Fixed(usize),
    /// Shortest round-trip representation.
    Full,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Fixed(6)
    }
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "full" {
            return Ok(Precision::Full);
        }
        match s.parse::<usize>() {
            Ok(p) if p <= 17 => Ok(Precision::Fixed(p)),
            _ => Err(format!("expected 0..=17 or 'full', got '{s}'")),
        }
    }
}

impl Precision {
    pub fn format(self, x: f64) -> String {
        match self {
            Precision::Fixed(p) => format!("{x:.p$}"),
            Precision::Full => format!("{x}"),
        }
    }
}

/// Ordered `key=value` metadata written as `# key=value` lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportMetadata {
    pub entries: Vec<(String, String)>,
}

impl ReportMetadata {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

/// Score table in rank order.
///
/// HITS results print `node auth hub f rank`; PageRank results print `node pr rank`.
pub fn write_report(
    result: &RankingResult,
    labels: &NodeLabels,
    metadata: &ReportMetadata,
    precision: Precision,
) -> String {
    let mut out = String::new();
    for (k, v) in &metadata.entries {
        let _ = writeln!(out, "# {k}={v}");
    }
    match &result.scores {
        RankScores::Hits { .. } => out.push_str("node\tauth\thub\tf\trank\n"),
        RankScores::PageRank(_) => out.push_str("node\tpr\trank\n"),
    }
    for (rank, &v) in result.order.iter().enumerate() {
        let i = v.index();
        let _ = write!(out, "{}\t", labels.name(v));
        match &result.scores {
            RankScores::Hits { auth, hub, f } => {
                for x in [auth[i], hub[i], f[i]] {
                    let _ = write!(out, "{}\t", precision.format(x));
                }
            }
            RankScores::PageRank(pr) => {
                let _ = write!(out, "{}\t", precision.format(pr[i]));
            }
        }
        let _ = writeln!(out, "{}", rank + 1);
    }
    out
}

/// What [`parse_report`] recovers from a score report.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedReport {
    pub metadata: ReportMetadata,
    /// Node labels, rank 1 first.
    pub order: Vec<String>,
}

impl ParsedReport {
    /// Label map in rank order, and the report's order expressed in it.
    pub fn ranking(&self) -> Result<(NodeLabels, ReferenceRanking)> {
        let labels = NodeLabels::from_names(self.order.clone())?;
        let order = (1..=self.order.len()).map(NodeId).collect();
        Ok((labels, ReferenceRanking::new(order)?))
    }
}

pub fn parse_report(text: &str) -> Result<ParsedReport> {
    let mut metadata = ReportMetadata::default();
    let mut columns: Option<(usize, usize, usize)> = None;
    let mut rows: Vec<(usize, usize, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((k, v)) = rest.trim().split_once('=') {
                metadata.push(k.trim(), v.trim());
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let Some((width, node_col, rank_col)) = columns else {
            let node_col = fields.iter().position(|&f| f == "node");
            let rank_col = fields.iter().position(|&f| f == "rank");
            match (node_col, rank_col) {
                (Some(a), Some(b)) => columns = Some((fields.len(), a, b)),
                _ => {
                    return Err(Error::parse(
                        line_no,
                        "report header must contain 'node' and 'rank' columns",
                    ))
                }
            }
            continue;
        };
        if fields.len() != width {
            return Err(Error::parse(
                line_no,
                format!("expected {width} fields, found {}", fields.len()),
            ));
        }
        let rank: usize = fields[rank_col]
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid rank '{}'", fields[rank_col])))?;
        rows.push((rank, line_no, fields[node_col].to_string()));
    }
    if columns.is_none() {
        return Err(Error::Data("report has no header line".into()));
    }
    rows.sort_by_key(|r| r.0);
    for (expected, (rank, line, _)) in rows.iter().enumerate() {
        if *rank != expected + 1 {
            return Err(Error::parse(
                *line,
                format!("ranks must be exactly 1..={}, found {rank}", rows.len()),
            ));
        }
    }
    let order: Vec<String> = rows.into_iter().map(|r| r.2).collect();
    NodeLabels::from_names(order.clone())?;
    Ok(ParsedReport { metadata, order })
}

pub fn format_comparison(report: &ComparisonReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n\t{}", report.n);
    let _ = writeln!(out, "kendall_tau\t{:.6}", report.kendall_tau);
    let _ = writeln!(out, "exact_matches\t{}", report.exact_matches);
    for (k, overlap) in &report.top_k_overlap {
        let _ = writeln!(out, "top_{k}_overlap\t{overlap:.6}");
    }
    out
}
