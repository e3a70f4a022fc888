//! `qhrank` command-line front end.
//!
//! Exit codes: 0 success (including non-convergence, which only warns), 1 input or data
//! error, 2 usage error. Data goes to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::combine::{RankKey, RankingResult};
use crate::compare::{compare_orders, compare_rankings, ComparisonReport};
use crate::error::Error;
use crate::hits::{hits_rank, HitsConfig, Normalization};
use crate::io::{
    format_comparison, parse_report, read_edge_list_path, read_file, read_reference,
    write_edge_list, write_file, write_ground_truth, write_ranking, write_report, Precision,
    ReportMetadata,
};
use crate::netgen::{generate, GeneratorConfig, WeightRange};
use crate::pagerank::{pagerank, BaseConstant, Dangling, PageRankConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qhrank", version, about = "Rank nodes of weighted quasi-hierarchical networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score and rank the nodes of an edge-list graph.
    Rank(RankArgs),
    /// Compare a score report against a reference ranking.
    Compare(CompareArgs),
    /// Generate a synthetic quasi-hierarchical network.
    Generate(GenerateArgs),
    /// Compare weighted-HITS rankings for several exponents against a reference.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Basic HITS on raw weights.
    Hits,
    /// HITS with every weight raised to --alpha.
    Whits,
    Pagerank,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KeyArg {
    Auth,
    Hub,
    F,
    Pr,
}

impl From<KeyArg> for RankKey {
    fn from(k: KeyArg) -> Self {
        match k {
            KeyArg::Auth => RankKey::Auth,
            KeyArg::Hub => RankKey::Hub,
            KeyArg::F => RankKey::F,
            KeyArg::Pr => RankKey::PageRank,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    L1,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    Standard,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DanglingArg {
    Uniform,
    Absorb,
}

#[derive(Debug, clap::Args)]
pub struct RankArgs {
    /// Tab-separated edge list.
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "whits")]
    pub algo: Algo,
    /// Weight exponent for whits; decimal or fraction such as 2/3 [default: 2/3].
    #[arg(long, value_parser = parse_alpha)]
    pub alpha: Option<f64>,
    /// PageRank damping factor [default: 0.85].
    #[arg(long)]
    pub damping: Option<f64>,
    /// Ranking key [default: auth for HITS, pr for PageRank].
    #[arg(long, value_enum)]
    pub key: Option<KeyArg>,
    /// Convergence tolerance [default: 1e-9 for HITS, 1e-12 for PageRank].
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
    /// HITS per-iteration normalization.
    #[arg(long, value_enum)]
    pub normalization: Option<NormArg>,
    /// PageRank constant term.
    #[arg(long, value_enum)]
    pub base: Option<BaseArg>,
    /// PageRank handling of nodes without out-links.
    #[arg(long, value_enum)]
    pub dangling: Option<DanglingArg>,
    /// PageRank: split out-link mass by weight.
    #[arg(long)]
    pub weighted: bool,
    /// Score digits, or "full".
    #[arg(long, default_value = "6")]
    pub precision: Precision,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct CompareArgs {
    /// Score report written by `rank`.
    pub report: PathBuf,
    /// Reference ranking, one node per line, best first.
    pub reference: PathBuf,
    /// Comma-separated top-k sizes.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
}

#[derive(Debug, clap::Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub depth: usize,
    #[arg(long)]
    pub branching: usize,
    /// Non-hierarchical links added on top of the tree.
    #[arg(long, default_value_t = 0)]
    pub extra: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Manager-to-subordinate weight range "min,max".
    #[arg(long, value_parser = parse_range, default_value = "5,10")]
    pub down: WeightRange,
    /// Subordinate-to-manager weight range "min,max".
    #[arg(long, value_parser = parse_range, default_value = "1,4")]
    pub up: WeightRange,
    /// Extra-link weight range "min,max".
    #[arg(long, value_parser = parse_range, default_value = "1,2")]
    pub extra_weight: WeightRange,
    /// Edge list destination [default: stdout].
    #[arg(long)]
    pub out_graph: Option<PathBuf>,
    /// Ground-truth tree (node, level, parent).
    #[arg(long)]
    pub out_truth: Option<PathBuf>,
    /// Reference ranking derived from the tree: by level, then id.
    #[arg(long)]
    pub out_reference: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct SweepArgs {
    pub graph: PathBuf,
    pub reference: PathBuf,
    /// Comma-separated exponents; fractions like 2/3 allowed.
    #[arg(long, required = true, value_delimiter = ',')]
    pub alphas: Vec<String>,
    #[arg(long, value_enum, default_value = "f")]
    pub key: KeyArg,
    /// Comma-separated top-k sizes.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 1000)]
    pub max_iter: usize,
}

/// Parses a nonnegative exponent given as a decimal or as `num/den`.
pub fn parse_alpha(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("invalid fraction '{s}'"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("invalid fraction '{s}'"))?;
            if den == 0.0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            num / den
        }
        None => s.parse().map_err(|_| format!("invalid number '{s}'"))?,
    };
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(format!("alpha must be finite and >= 0, got '{s}'"))
    }
}

fn parse_range(s: &str) -> Result<WeightRange, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected 'min,max', got '{s}'"))?;
    let min: f64 = a.trim().parse().map_err(|_| format!("invalid number '{a}'"))?;
    let max: f64 = b.trim().parse().map_err(|_| format!("invalid number '{b}'"))?;
    Ok(WeightRange::new(min, max))
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

type CmdResult = Result<(), Failure>;

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Output<'_> {
    fn data(&mut self, text: &str) -> CmdResult {
        self.out
            .write_all(text.as_bytes())
            .map_err(|source| Failure::Data(Error::Io {
                path: "<stdout>".into(),
                source,
            }))
    }

    fn warn(&mut self, msg: &str) {
        let _ = writeln!(self.err, "warning: {msg}");
    }
}

/// Parses `args` (including the program name) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut io = Output { out, err };
    let result = match &cli.command {
        Command::Rank(a) => cmd_rank(a, &mut io),
        Command::Compare(a) => cmd_compare(a, &mut io),
        Command::Generate(a) => cmd_generate(a, &mut io),
        Command::Sweep(a) => cmd_sweep(a, &mut io),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(e)) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_DATA
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn rank_usage_checks(a: &RankArgs) -> CmdResult {
    let is_pr = a.algo == Algo::Pagerank;
    if is_pr {
        if a.alpha.is_some() {
            return Err(usage("--alpha cannot be combined with --algo pagerank"));
        }
        if a.normalization.is_some() {
            return Err(usage("--normalization applies to HITS only"));
        }
        if matches!(a.key, Some(k) if k != KeyArg::Pr) {
            return Err(usage("--algo pagerank only supports --key pr"));
        }
    } else {
        if a.damping.is_some() || a.base.is_some() || a.dangling.is_some() || a.weighted {
            return Err(usage(
                "--damping, --base, --dangling and --weighted apply to --algo pagerank only",
            ));
        }
        if a.key == Some(KeyArg::Pr) {
            return Err(usage("--key pr requires --algo pagerank"));
        }
        if a.algo == Algo::Hits && a.alpha.is_some() {
            return Err(usage("--alpha requires --algo whits (basic HITS uses raw weights)"));
        }
    }
    Ok(())
}

fn cmd_rank(a: &RankArgs, io: &mut Output<'_>) -> CmdResult {
    rank_usage_checks(a)?;
    let file = read_edge_list_path(&a.graph)?;
    let graph = &file.graph;
    if graph.node_count() == 0 {
        return Err(Error::Data(format!("{}: graph has no nodes", a.graph.display())).into());
    }
    let mut meta = ReportMetadata::default();
    let algo_name = match a.algo {
        Algo::Hits => "hits",
        Algo::Whits => "whits",
        Algo::Pagerank => "pagerank",
    };
    meta.push("algorithm", algo_name);

    let (ranking, iterations, converged) = if a.algo == Algo::Pagerank {
        let config = PageRankConfig {
            damping: a.damping.unwrap_or(0.85),
            max_iter: a.max_iter,
            tolerance: a.tol.unwrap_or(1e-12),
            base_constant: match a.base {
                Some(BaseArg::Literal) => BaseConstant::OnePlusDamping,
                _ => BaseConstant::Standard,
            },
            dangling: match a.dangling {
                Some(DanglingArg::Absorb) => Dangling::SelfAbsorb,
                _ => Dangling::RedistributeUniform,
            },
            weighted: a.weighted,
        };
        config.validate().map_err(|e| usage(e.to_string()))?;
        meta.push("damping", config.damping)
            .push(
                "base",
                match config.base_constant {
                    BaseConstant::Standard => "standard",
                    BaseConstant::OnePlusDamping => "literal",
                },
            )
            .push(
                "dangling",
                match config.dangling {
                    Dangling::RedistributeUniform => "uniform",
                    Dangling::SelfAbsorb => "absorb",
                },
            )
            .push("weighted", config.weighted)
            .push("normalization", "l1")
            .push("tolerance", config.tolerance)
            .push("max_iter", config.max_iter);
        let r = pagerank(graph, &config)?;
        (RankingResult::from_pagerank(&r), r.iterations, r.converged)
    } else {
        let alpha = match a.algo {
            Algo::Hits => 1.0,
            _ => a.alpha.unwrap_or(crate::hits::DEFAULT_ALPHA),
        };
        let config = HitsConfig {
            alpha,
            max_iter: a.max_iter,
            tolerance: a.tol.unwrap_or(1e-9),
            normalization: match a.normalization {
                Some(NormArg::None) => Normalization::None,
                _ => Normalization::L1,
            },
        };
        config.validate().map_err(|e| usage(e.to_string()))?;
        meta.push("alpha", config.alpha)
            .push("normalization", config.normalization.name())
            .push("tolerance", config.tolerance)
            .push("max_iter", config.max_iter);
        let key = a.key.map_or(RankKey::Auth, RankKey::from);
        let r = hits_rank(graph, &config)?;
        (RankingResult::from_hits(&r, key)?, r.iterations, r.converged)
    };
    meta.push("key", ranking.key)
        .push("nodes", graph.node_count())
        .push("edges", graph.edge_count())
        .push("duplicates", file.duplicates)
        .push("iterations", iterations)
        .push("converged", converged);
    if !converged {
        io.warn(&format!("{algo_name} did not converge after {iterations} iterations"));
    }
    let report = write_report(&ranking, &file.labels, &meta, a.precision);
    match &a.out {
        Some(path) => write_file(path, &report)?,
        None => io.data(&report)?,
    }
    Ok(())
}

fn cmd_compare(a: &CompareArgs, io: &mut Output<'_>) -> CmdResult {
    let parsed = parse_report(&read_file(&a.report)?).map_err(|e| with_path(&a.report, e))?;
    let (labels, computed) = parsed.ranking()?;
    let reference = read_reference(&a.reference, &labels).map_err(|e| with_path(&a.reference, e))?;
    let report = compare_orders(&computed, &reference, &a.k)?;
    io.data(&format_comparison(&report))
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Io { .. } => e,
        other => Error::Data(format!("{}: {other}", path.display())),
    }
}

fn cmd_generate(a: &GenerateArgs, io: &mut Output<'_>) -> CmdResult {
    let config = GeneratorConfig {
        depth: a.depth,
        branching: a.branching,
        extra_links: a.extra,
        down_weight_range: a.down,
        up_weight_range: a.up,
        extra_weight_range: a.extra_weight,
        seed: a.seed,
    };
    config.validate().map_err(|e| usage(e.to_string()))?;
    for w in config.warnings() {
        io.warn(&w);
    }
    let (graph, truth) = generate(&config)?;
    let labels = crate::io::NodeLabels::numeric(graph.node_count());
    let preamble = [
        format!(
            "generator depth={} branching={} extra={} seed={}",
            config.depth, config.branching, config.extra_links, config.seed
        ),
        format!(
            "weights down={} up={} extra={}",
            config.down_weight_range, config.up_weight_range, config.extra_weight_range
        ),
    ];
    let text = write_edge_list(&graph, &labels, &preamble);
    match &a.out_graph {
        Some(path) => write_file(path, &text)?,
        None => io.data(&text)?,
    }
    if let Some(path) = &a.out_truth {
        write_file(path, &write_ground_truth(&truth))?;
    }
    if let Some(path) = &a.out_reference {
        write_file(path, &write_ranking(truth.reference_order().order(), &labels))?;
    }
    Ok(())
}

struct SweepRow {
    alpha_text: String,
    report: ComparisonReport,
    iterations: usize,
    converged: bool,
}

fn cmd_sweep(a: &SweepArgs, io: &mut Output<'_>) -> CmdResult {
    if a.key == KeyArg::Pr {
        return Err(usage("sweep ranks with HITS; --key pr is not available"));
    }
    let mut alphas: Vec<(String, f64)> = Vec::new();
    for token in &a.alphas {
        let value = parse_alpha(token).map_err(usage)?;
        if alphas.iter().any(|&(_, v)| v == value) {
            io.warn(&format!("duplicate alpha '{}' ignored", token.trim()));
            continue;
        }
        alphas.push((token.trim().to_string(), value));
    }
    if alphas.is_empty() {
        return Err(usage("--alphas must list at least one value"));
    }
    let base = HitsConfig {
        tolerance: a.tol,
        max_iter: a.max_iter,
        ..Default::default()
    };
    base.validate().map_err(|e| usage(e.to_string()))?;

    let file = read_edge_list_path(&a.graph)?;
    if file.graph.node_count() == 0 {
        return Err(Error::Data(format!("{}: graph has no nodes", a.graph.display())).into());
    }
    let reference = read_reference(&a.reference, &file.labels).map_err(|e| with_path(&a.reference, e))?;
    let n = file.graph.node_count();
    if let Some(&k) = a.k.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::KOutOfRange { k, n }.into());
    }
    let key = RankKey::from(a.key);

    let rows: Vec<Result<SweepRow, Error>> = alphas
        .par_iter()
        .map(|(text, alpha)| {
            let config = HitsConfig {
                alpha: *alpha,
                ..base
            };
            let r = hits_rank(&file.graph, &config)?;
            let ranking = RankingResult::from_hits(&r, key)?;
            Ok(SweepRow {
                alpha_text: text.clone(),
                report: compare_rankings(&ranking, &reference, &a.k)?,
                iterations: r.iterations,
                converged: r.converged,
            })
        })
        .collect();

    let mut out = String::new();
    out.push_str(&format!(
        "# key={} normalization=l1 tolerance={} max_iter={} nodes={n}\n",
        key, a.tol, a.max_iter
    ));
    out.push_str("alpha\tkendall_tau\texact_matches");
    for k in &a.k {
        out.push_str(&format!("\ttop_{k}_overlap"));
    }
    out.push_str("\titerations\tconverged\n");
    for row in rows {
        let row = row?;
        if !row.converged {
            io.warn(&format!(
                "alpha {} did not converge after {} iterations",
                row.alpha_text, row.iterations
            ));
        }
        out.push_str(&format!(
            "{}\t{:.6}\t{}",
            row.alpha_text, row.report.kendall_tau, row.report.exact_matches
        ));
        for (_, overlap) in &row.report.top_k_overlap {
            out.push_str(&format!("\t{overlap:.6}"));
        }
        out.push_str(&format!("\t{}\t{}\n", row.iterations, row.converged));
    }
    io.data(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_parsing() {
        assert_eq!(parse_alpha("2/3").unwrap(), 2.0 / 3.0);
        assert_eq!(parse_alpha(" 0.4 ").unwrap(), 0.4);
        assert_eq!(parse_alpha("1").unwrap(), 1.0);
        assert!(parse_alpha("1/0").is_err());
        assert!(parse_alpha("-1").is_err());
        assert!(parse_alpha("abc").is_err());
        assert!(parse_alpha("").is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("5,10").unwrap(), WeightRange::new(5.0, 10.0));
        assert!(parse_range("5").is_err());
    }

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("qhrank").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn contradictory_flags_are_usage_errors() {
        // Rejected before the (nonexistent) file is touched.
        for args in [
            &["rank", "nope.tsv", "--algo", "pagerank", "--alpha", "0.5"][..],
            &["rank", "nope.tsv", "--algo", "hits", "--damping", "0.5"][..],
            &["rank", "nope.tsv", "--algo", "whits", "--key", "pr"][..],
            &["rank", "nope.tsv", "--algo", "pagerank", "--key", "f"][..],
            &["rank", "nope.tsv", "--algo", "nosuch"][..],
        ] {
            let (code, _, err) = run_args(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
        }
    }

    #[test]
    fn missing_file_is_data_error() {
        let (code, _, err) = run_args(&["rank", "missing.tsv"]);
        assert_eq!(code, EXIT_DATA);
        assert!(err.contains("missing.tsv"), "{err}");
    }

    #[test]
    fn generate_to_stdout() {
        let (code, out, _) = run_args(&["generate", "--depth", "1", "--branching", "3", "--extra", "1", "--seed", "1"]);
        assert_eq!(code, EXIT_OK);
        let f = crate::io::parse_edge_list(&out).unwrap();
        assert_eq!((f.graph.node_count(), f.graph.edge_count()), (4, 7));
        let (code, _, _) = run_args(&["generate", "--depth", "1", "--branching", "3", "--extra", "-1"]);
        assert_eq!(code, EXIT_USAGE);
    }
}
