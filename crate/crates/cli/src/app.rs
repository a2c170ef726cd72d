//! Command definitions and drivers.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use coreconn::metrics::{bound_vs_exact, coverage, pair_histogram};
use coreconn::validate::{validate, Violation};
use coreconn::{
    core_connected, core_decompose, extend_shell_one, membership_report, pair_lower_bound, CoreDecomposition, Graph,
    Membership, Mode,
};
use serde::Serialize;
use thiserror::Error;

use crate::input::{parse_edge_list, InputError, ParsedGraph};
use crate::pairs::{select_pairs, PairPolicy, PairSelection, DEFAULT_MAX_PAIRS};
use crate::svg::{render_svg, SvgOptions};

pub const DEFAULT_NODE_LIMIT: usize = 5_000;
/// Pairs checked by `validate` when no policy is given.
pub const DEFAULT_VALIDATE_SAMPLE: usize = 2_000;

#[derive(Debug, Parser)]
#[command(name = "coreconn", version, about = "k-core decomposition and certified edge-connectivity bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shell index and cluster of every node (shells.tsv).
    Decompose(CommonArgs),
    /// Core-connected membership and construction trace (membership.tsv, trace.tsv).
    Connect(AnalysisArgs),
    /// Certified per-pair lower bounds (pairs.tsv).
    Bounds(BoundsArgs),
    /// Coverage ratios, pair histogram and shell sizes (metrics.json).
    Metrics(AnalysisArgs),
    /// Checks bounds against exact max-flow (validation.tsv); exits 1 on violations.
    Validate(PairArgs),
    /// Radial shell drawing (graph.svg).
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Edge list: two node ids per line, '#' comments.
    pub input: PathBuf,
    /// Output directory.
    #[arg(short, long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Wide,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Wide => Mode::Wide,
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalysisArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(short, long, value_enum, default_value_t = ModeArg::Strict)]
    pub mode: ModeArg,
    /// Skip attaching shell-1 nodes to their certified neighbours.
    #[arg(long)]
    pub no_shell1: bool,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    /// all, none or sample:N.
    #[arg(short, long)]
    pub pairs: Option<PairPolicy>,
    /// Refuse the `all` policy above this many pairs.
    #[arg(long, default_value_t = DEFAULT_MAX_PAIRS)]
    pub max_pairs: u64,
    /// Seed for pair sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Refuse exact connectivity computations above this many nodes.
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    pub node_limit: usize,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Add exact and through-core max-flow columns.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub analysis: AnalysisArgs,
    /// Draw at most this many edges.
    #[arg(long, default_value_t = 5_000)]
    pub edge_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Decompose,
    Connect,
    Bounds,
    Metrics,
    Validate,
    Render,
}

/// Resolved settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub mode: Mode,
    pub shell1_extension: bool,
    /// `None` selects the size-dependent default.
    pub pairs: Option<PairPolicy>,
    pub max_pairs: u64,
    pub node_limit: usize,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub edge_cap: usize,
    pub exact: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            input: input.into(),
            mode: Mode::Strict,
            shell1_extension: true,
            pairs: None,
            max_pairs: DEFAULT_MAX_PAIRS,
            node_limit: DEFAULT_NODE_LIMIT,
            out_dir: out_dir.into(),
            seed: 0,
            edge_cap: SvgOptions::default().edge_cap,
            exact: false,
        }
    }

    fn apply_analysis(&mut self, a: &AnalysisArgs) {
        self.mode = a.mode.into();
        self.shell1_extension = !a.no_shell1;
    }

    fn apply_pairs(&mut self, p: &PairArgs) {
        self.apply_analysis(&p.analysis);
        self.pairs = p.pairs;
        self.max_pairs = p.max_pairs;
        self.seed = p.seed;
        self.node_limit = p.node_limit;
    }
}

impl Command {
    pub fn resolve(&self) -> (CommandKind, RunConfig) {
        match self {
            Command::Decompose(c) => (CommandKind::Decompose, RunConfig::new(&c.input, &c.out)),
            Command::Connect(a) | Command::Metrics(a) => {
                let kind = if matches!(self, Command::Connect(_)) {
                    CommandKind::Connect
                } else {
                    CommandKind::Metrics
                };
                let mut cfg = RunConfig::new(&a.common.input, &a.common.out);
                cfg.apply_analysis(a);
                (kind, cfg)
            }
            Command::Bounds(b) => {
                let c = &b.pair.analysis.common;
                let mut cfg = RunConfig::new(&c.input, &c.out);
                cfg.apply_pairs(&b.pair);
                cfg.exact = b.exact;
                (CommandKind::Bounds, cfg)
            }
            Command::Validate(p) => {
                let c = &p.analysis.common;
                let mut cfg = RunConfig::new(&c.input, &c.out);
                cfg.apply_pairs(p);
                (CommandKind::Validate, cfg)
            }
            Command::Render(r) => {
                let c = &r.analysis.common;
                let mut cfg = RunConfig::new(&c.input, &c.out);
                cfg.apply_analysis(&r.analysis);
                cfg.edge_cap = r.edge_cap;
                (CommandKind::Render, cfg)
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("pair policy `all` would emit {pairs} pairs (limit {limit}); use sample:N or raise --max-pairs")]
    TooManyPairs { pairs: u64, limit: u64 },
    #[error(transparent)]
    Analysis(#[from] coreconn::Error),
    #[error("{count} violation(s) found; see {path}")]
    Violations { count: usize, path: PathBuf },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Violations { .. } => 1,
            CliError::TooManyPairs { .. } => 3,
            CliError::Analysis(coreconn::Error::Guard { .. } | coreconn::Error::EnumerationLimit { .. }) => 3,
            _ => 2,
        }
    }
}

/// Text for standard output, one line per fact.
pub type Summary = Vec<String>;

pub fn run(kind: CommandKind, cfg: &RunConfig) -> Result<Summary, CliError> {
    let parsed = parse_edge_list(&cfg.input)?;
    let mut summary = vec![ingest_line(&parsed)];
    let g = &parsed.graph;
    let d = core_decompose(g);
    let out = |name: &str| cfg.out_dir.join(name);
    fs::create_dir_all(&cfg.out_dir).map_err(|source| CliError::Output {
        path: cfg.out_dir.clone(),
        source,
    })?;
    match kind {
        CommandKind::Decompose => {
            write_shells(&out("shells.tsv"), g, &d)?;
            summary.push(format!("k_max {}", d.k_max()));
        }
        CommandKind::Connect => {
            let m = membership(g, &d, cfg);
            write_membership(&out("membership.tsv"), g, &d, &m, cfg)?;
            write_trace(&out("trace.tsv"), &m)?;
            summary.push(class_line(&m));
        }
        CommandKind::Bounds => {
            let m = membership(g, &d, cfg);
            let policy = cfg.pairs.unwrap_or_else(|| PairPolicy::default_for(crate::pairs::non_isolated(g).len()));
            let sel = selection(g, policy, cfg)?;
            write_pairs(&out("pairs.tsv"), g, &d, &m, &sel, cfg)?;
            summary.push(format!("pairs {} (policy {policy})", sel.len()));
        }
        CommandKind::Metrics => {
            let m = membership(g, &d, cfg);
            let json = metrics_json(g, &d, &m, cfg)?;
            write_file(&out("metrics.json"), |w| writeln!(w, "{json}"))?;
            summary.push(class_line(&m));
        }
        CommandKind::Validate => {
            let m = membership(g, &d, cfg);
            let policy = cfg.pairs.unwrap_or(PairPolicy::Sample(DEFAULT_VALIDATE_SAMPLE));
            let pairs = selection(g, policy, cfg)?.to_vec();
            let report = validate(g, &d, &m, &pairs, cfg.node_limit)?;
            let path = out("validation.tsv");
            write_violations(&path, g, &report.violations)?;
            summary.push(format!(
                "checked {} pairs, {} violations",
                report.checked_pairs,
                report.violations.len()
            ));
            if !report.is_clean() {
                return Err(CliError::Violations {
                    count: report.violations.len(),
                    path,
                });
            }
        }
        CommandKind::Render => {
            let m = membership(g, &d, cfg);
            let opts = SvgOptions {
                edge_cap: cfg.edge_cap,
                ..SvgOptions::default()
            };
            let svg = render_svg(g, &d, &m, &opts)?;
            write_file(&out("graph.svg"), |w| w.write_all(svg.as_bytes()))?;
            summary.push(class_line(&m));
        }
    }
    Ok(summary)
}

fn ingest_line(p: &ParsedGraph) -> String {
    format!(
        "read {} nodes, {} edges ({} self-loops, {} duplicates dropped)",
        p.graph.node_count(),
        p.graph.edge_count(),
        p.stats.self_loops,
        p.stats.duplicates
    )
}

fn class_line(m: &Membership) -> String {
    use coreconn::Class;
    format!(
        "{}: C {}, D {}, white {}",
        m.mode(),
        m.count(Class::C),
        m.count(Class::D),
        m.count(Class::White)
    )
}

pub fn membership(g: &Graph, d: &CoreDecomposition, cfg: &RunConfig) -> Membership {
    let m = core_connected(g, d, cfg.mode);
    if cfg.shell1_extension {
        extend_shell_one(g, d, m)
    } else {
        m
    }
}

fn selection(g: &Graph, policy: PairPolicy, cfg: &RunConfig) -> Result<PairSelection, CliError> {
    select_pairs(g, policy, cfg.seed, cfg.max_pairs).map_err(|e| CliError::TooManyPairs {
        pairs: e.pairs,
        limit: e.limit,
    })
}

fn write_file<F>(path: &Path, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
{
    let wrap = |source| CliError::Output {
        path: path.to_path_buf(),
        source,
    };
    let mut w = BufWriter::new(File::create(path).map_err(wrap)?);
    body(&mut w).map_err(wrap)?;
    w.flush().map_err(wrap)
}

fn write_shells(path: &Path, g: &Graph, d: &CoreDecomposition) -> Result<(), CliError> {
    write_file(path, |w| {
        writeln!(w, "# nodes={} edges={} k_max={}", g.node_count(), g.edge_count(), d.k_max())?;
        writeln!(w, "# label\tshell_index\tcluster_id")?;
        for v in g.nodes() {
            let cluster = d.cluster_of(v).map_or_else(|| "-".to_string(), |c| c.to_string());
            writeln!(w, "{}\t{}\t{cluster}", g.label(v), d.shell_index(v))?;
        }
        Ok(())
    })
}

fn mode_header(cfg: &RunConfig) -> String {
    format!(
        "# mode={} shell1_extension={}",
        cfg.mode,
        if cfg.shell1_extension { "on" } else { "off" }
    )
}

fn write_membership(
    path: &Path,
    g: &Graph,
    d: &CoreDecomposition,
    m: &Membership,
    cfg: &RunConfig,
) -> Result<(), CliError> {
    write_file(path, |w| {
        writeln!(w, "{}", mode_header(cfg))?;
        writeln!(w, "# label\tshell\tclass\tguarantee")?;
        for r in membership_report(g, d, m) {
            writeln!(w, "{}\t{}\t{}\t{}", r.label, r.shell, r.class, r.guarantee)?;
        }
        Ok(())
    })
}

fn write_trace(path: &Path, m: &Membership) -> Result<(), CliError> {
    write_file(path, |w| {
        writeln!(w, "# mode={}", m.mode())?;
        writeln!(w, "# cluster\taction\tk\treason")?;
        for t in m.trace() {
            writeln!(w, "{}\t{}\t{}\t{}", t.cluster, t.action, t.k, t.reason)?;
        }
        Ok(())
    })
}

fn write_pairs(
    path: &Path,
    g: &Graph,
    d: &CoreDecomposition,
    m: &Membership,
    sel: &PairSelection,
    cfg: &RunConfig,
) -> Result<(), CliError> {
    if cfg.exact {
        let report = bound_vs_exact(g, d, m, &sel.to_vec(), cfg.node_limit)?;
        return write_file(path, |w| {
            writeln!(w, "{}", mode_header(cfg))?;
            writeln!(w, "# label_u\tlabel_v\tbound\texact\tthrough_core")?;
            for r in &report.records {
                let core = r.through_core.map_or_else(|| "-".to_string(), |x| x.to_string());
                writeln!(w, "{}\t{}\t{}\t{}\t{core}", g.label(r.u), g.label(r.v), r.bound, r.exact)?;
            }
            Ok(())
        });
    }
    write_file(path, |w| {
        writeln!(w, "{}", mode_header(cfg))?;
        writeln!(w, "# label_u\tlabel_v\tbound")?;
        for (u, v) in sel.iter() {
            let bound = pair_lower_bound(m, u, v).expect("selected pairs are distinct graph nodes");
            writeln!(w, "{}\t{}\t{bound}", g.label(u), g.label(v))?;
        }
        Ok(())
    })
}

#[derive(Serialize)]
struct MetricsJson {
    mode: String,
    shell1_extension: bool,
    nodes: usize,
    edges: usize,
    k_max: usize,
    c_size: usize,
    d_size: usize,
    rho: Vec<f64>,
    alpha: f64,
    beta: f64,
    gamma: f64,
    histogram: Vec<BinJson>,
    shell_sizes: Vec<usize>,
}

#[derive(Serialize)]
struct BinJson {
    k: usize,
    both_in_c: u64,
    other: u64,
}

fn metrics_json(g: &Graph, d: &CoreDecomposition, m: &Membership, cfg: &RunConfig) -> Result<String, CliError> {
    let cov = coverage(d, m)?;
    let doc = MetricsJson {
        mode: m.mode().to_string(),
        shell1_extension: cfg.shell1_extension,
        nodes: g.node_count(),
        edges: g.edge_count(),
        k_max: d.k_max(),
        c_size: cov.c_size,
        d_size: m.count(coreconn::Class::D),
        rho: cov.rho,
        alpha: cov.alpha,
        beta: cov.beta,
        gamma: cov.gamma,
        histogram: pair_histogram(d, m)
            .into_iter()
            .map(|b| BinJson {
                k: b.k,
                both_in_c: b.both_in_c,
                other: b.other,
            })
            .collect(),
        shell_sizes: cov.shell_sizes,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("metrics serialize"))
}

fn write_violations(path: &Path, g: &Graph, violations: &[Violation]) -> Result<(), CliError> {
    write_file(path, |w| {
        writeln!(w, "# violations={}", violations.len())?;
        writeln!(w, "# kind\tlabel_u\tlabel_v\texpected\tobserved")?;
        for v in violations {
            let (kind, u, x, expected, observed) = match *v {
                Violation::Guarantee { u, v, level, flow } => ("guarantee", u, v, level, flow),
                Violation::Bound { u, v, bound, exact } => ("bound", u, v, bound, exact),
                Violation::CoreAboveWhole {
                    u,
                    v,
                    through_core,
                    exact,
                } => ("core-above-whole", u, v, through_core, exact),
                Violation::Tree { u, v, tree, flow } => ("tree", u, v, tree, flow),
            };
            writeln!(w, "{kind}\t{}\t{}\t{expected}\t{observed}", g.label(u), g.label(x))?;
        }
        Ok(())
    })
}
