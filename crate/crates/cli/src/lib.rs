//! Command-line front end for the `sgkit` solvers.
//!
//! Exit codes: 0 on success, 2 for usage and input errors, 3 when a resource
//! budget is exhausted.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use sgkit::bipartite::classify::{classify_sg_eq_k, level_set, level_set_grid};
use sgkit::bipartite::quartic::{conjecture_scan, ConjectureError};
use sgkit::bipartite::{sg_bipartite, BipartiteError};
use sgkit::certificate::{verify_certificate, Certificate};
use sgkit::format::{parse_graph, serialize_graph_with_comments, ParseError};
use sgkit::graph::{build_complete_multipartite, Graph};
use sgkit::multipartite::{
    selection_certificate, sg_multipartite, MultipartiteBounds, MultipartiteError,
};
use sgkit::oracle::{strong_geodetic_number_exact, OracleError, OracleLimits};
use sgkit::partition::{Partition, PartitionError};
use sgkit::reduction::{reduce, verify_equivalence_report, ReductionError};

/// Environment variable overriding the oracle's node budget.
pub const BUDGET_ENV: &str = "SGKIT_BUDGET";

/// Certificates are only materialised up to this many vertices.
pub const MAX_CERTIFICATE_VERTICES: u64 = 2000;

#[derive(Debug, Parser)]
#[command(name = "sgkit", version, about = "Strong geodetic number solvers")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct GlobalArgs {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel scans.
    #[arg(long, global = true, value_name = "T")]
    pub threads: Option<usize>,
    /// Report wall time.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact sg(K_{n,m}).
    Bipartite {
        n: u64,
        m: u64,
        /// Emit and verify an explicit certificate.
        #[arg(long)]
        certificate: bool,
        /// Cross-check against the (n, m, k) characterisation.
        #[arg(long)]
        classify: bool,
    },
    /// Exact sg of a complete multipartite graph, e.g. `1 2 3` or `1^2,3`.
    Multipartite {
        #[arg(required = true, num_args = 1..)]
        parts: Vec<String>,
        /// Also report the relaxation lower bound and whole-parts upper bound.
        #[arg(long)]
        bounds: bool,
        #[arg(long)]
        certificate: bool,
    },
    /// Exact sg of a graph file by exhaustive search.
    Exact {
        file: PathBuf,
        /// Largest graph accepted.
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
    },
    /// Grid of sg(K_{n,m}) for 1 <= n, m <= MAX (rows m, columns n).
    Table {
        max: u64,
        #[arg(long)]
        csv: bool,
    },
    /// All (n, m) with sg(K_{n,m}) = k.
    Levelset {
        k: u64,
        /// Print an ASCII grid (rows m, columns n) instead of the list.
        #[arg(long)]
        grid: bool,
        /// Print only the number of pairs.
        #[arg(long)]
        count: bool,
    },
    /// Largest distance between sg(K_{n,m}) and a real solution of the
    /// defining system, over n <= m <= C(n, 2).
    Conjecture { n: u64 },
    /// Build the strong geodetic instance for a dominating-set instance on a
    /// bipartite graph.
    Reduce {
        file: PathBuf,
        k: usize,
        /// Check the equivalence by brute force on both sides.
        #[arg(long)]
        verify: bool,
        /// Largest k checked by --verify (default |V(G)|).
        #[arg(long)]
        k_max: Option<usize>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Io(_) => 2,
            Self::Budget(_) => 3,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        if e.is_resource_limit() {
            Self::Budget(e.to_string())
        } else {
            usage(e)
        }
    }
}

impl From<BipartiteError> for CliError {
    fn from(e: BipartiteError) -> Self {
        match e {
            BipartiteError::ScanTooLong { .. } => Self::Budget(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<MultipartiteError> for CliError {
    fn from(e: MultipartiteError) -> Self {
        match e {
            MultipartiteError::OverBudget(_) => Self::Budget(e.to_string()),
            _ => usage(e),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Oracle(o) => o.into(),
            _ => usage(e),
        }
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        usage(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        usage(e)
    }
}

impl From<ConjectureError> for CliError {
    fn from(e: ConjectureError) -> Self {
        match e {
            ConjectureError::Bipartite(b) => b.into(),
            _ => usage(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Scan,
    Classification,
    Multipartite,
    Oracle,
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    Bipartite { n: u64, m: u64 },
    Multipartite { parts: Vec<usize> },
    Graph { n: usize, edges: Vec<(usize, usize)> },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classification_agrees: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<f64>,
}

/// Machine-readable result of a solve. Vertex ids in certificates are
/// 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: Method,
    pub input: Input,
    pub k: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub selection: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bounds: Option<MultipartiteBounds>,
    pub meta: Meta,
}

impl SolveReport {
    /// `lp_lower <= k <= whole_parts_upper` whenever bounds are present.
    pub fn is_consistent(&self) -> bool {
        self.bounds
            .as_ref()
            .is_none_or(|b| b.lp_lower <= self.k && self.k <= b.whole_parts_upper)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: u64,
    pub max_e: f64,
    pub argmax_m: u64,
    pub rootless: Vec<u64>,
}

/// Parses arguments, runs, and maps the outcome to an exit code. Errors go
/// to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let budget = match std::env::var(BUDGET_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) if b > 0 => Some(b),
            _ => {
                let _ = writeln!(err, "error: {BUDGET_ENV} must be a positive integer");
                return 2;
            }
        },
        Err(_) => None,
    };
    match execute(&cli, budget, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command.
pub fn execute(
    cli: &Cli,
    budget: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let pool = match cli.global.threads {
        Some(0) => return Err(usage("--threads must be positive")),
        Some(t) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(usage)?,
        ),
        None => None,
    };
    let started = Instant::now();
    match pool {
        Some(p) => {
            let (mut o, mut e) = (Vec::new(), Vec::new());
            let result = p.install(|| dispatch(cli, budget, &mut o, &mut e, started));
            out.write_all(&o)?;
            err.write_all(&e)?;
            result
        }
        None => dispatch(cli, budget, out, err, started),
    }
}

fn dispatch(
    cli: &Cli,
    budget: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
    started: Instant,
) -> Result<(), CliError> {
    let g = &cli.global;
    let elapsed = || started.elapsed().as_secs_f64() * 1e3;
    let mut limits = OracleLimits::default();
    if let Some(b) = budget {
        limits.node_budget = b;
    }
    match &cli.command {
        Command::Bipartite {
            n,
            m,
            certificate,
            classify,
        } => {
            let mut report = cmd_bipartite(*n, *m, *certificate, *classify)?;
            finish(report_with_time(&mut report, g.timing, elapsed()), g, out, err)
        }
        Command::Multipartite {
            parts,
            bounds,
            certificate,
        } => {
            let p: Partition = parts.join(",").parse()?;
            let mut report = cmd_multipartite(&p, *bounds, *certificate)?;
            finish(report_with_time(&mut report, g.timing, elapsed()), g, out, err)
        }
        Command::Exact { file, max_vertices } => {
            let graph = read_graph(file, err)?;
            let mut report = cmd_exact(&graph, &limits.with_max_vertices(*max_vertices))?;
            finish(report_with_time(&mut report, g.timing, elapsed()), g, out, err)
        }
        Command::Table { max, csv } => {
            let grid = table_grid(*max)?;
            if g.json {
                writeln!(out, "{}", serde_json::to_string(&grid).expect("serialisable"))?;
            } else if *csv {
                out.write_all(render_csv(&grid).as_bytes())?;
            } else {
                out.write_all(render_table(&grid).as_bytes())?;
            }
            timing_line(g, err, elapsed())
        }
        Command::Levelset { k, grid, count } => {
            let pairs = level_set(*k)?;
            if *count {
                writeln!(out, "{}", pairs.len())?;
            } else if g.json {
                writeln!(out, "{}", serde_json::to_string(&pairs).expect("serialisable"))?;
            } else if *grid {
                out.write_all(level_set_grid(&pairs).as_bytes())?;
            } else {
                for (n, m) in &pairs {
                    writeln!(out, "{n} {m}")?;
                }
            }
            timing_line(g, err, elapsed())
        }
        Command::Conjecture { n } => {
            let scan = conjecture_scan::<f64>(*n)?;
            let report = ConjectureReport {
                n: scan.n,
                max_e: scan.max_e,
                argmax_m: scan.argmax_m,
                rootless: scan.rootless,
            };
            if g.json {
                writeln!(out, "{}", serde_json::to_string(&report).expect("serialisable"))?;
            } else {
                writeln!(out, "n = {}", report.n)?;
                writeln!(out, "max e = {:.3}", report.max_e)?;
                writeln!(out, "argmax m = {}", report.argmax_m)?;
                if !report.rootless.is_empty() {
                    writeln!(out, "no real solution for m in {:?}", report.rootless)?;
                }
            }
            timing_line(g, err, elapsed())
        }
        Command::Reduce {
            file,
            k,
            verify,
            k_max,
        } => {
            let graph = read_graph(file, err)?;
            let text = cmd_reduce(&graph, *k, verify.then(|| k_max.unwrap_or(graph.n())), &limits)?;
            out.write_all(text.as_bytes())?;
            timing_line(g, err, elapsed())
        }
    }
}

fn report_with_time(report: &mut SolveReport, timing: bool, ms: f64) -> &SolveReport {
    if timing {
        report.meta.wall_time_ms = Some(ms);
    }
    report
}

fn timing_line(g: &GlobalArgs, err: &mut dyn Write, ms: f64) -> Result<(), CliError> {
    if g.timing {
        writeln!(err, "time: {ms:.3} ms")?;
    }
    Ok(())
}

fn read_graph(path: &PathBuf, err: &mut dyn Write) -> Result<Graph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let parsed = parse_graph(&text)?;
    for w in &parsed.warnings {
        writeln!(err, "warning: {w}")?;
    }
    Ok(parsed.graph)
}

fn finish(
    report: &SolveReport,
    g: &GlobalArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    if g.json {
        writeln!(out, "{}", serde_json::to_string(report).expect("serialisable"))?;
        return Ok(());
    }
    out.write_all(render_report(report).as_bytes())?;
    if let Some(ms) = report.meta.wall_time_ms {
        writeln!(err, "time: {ms:.3} ms")?;
    }
    Ok(())
}

/// Human-readable report; certificate vertices are printed 1-based.
pub fn render_report(r: &SolveReport) -> String {
    let mut s = format!("k = {}\n", r.k);
    if let Some(sel) = &r.selection {
        match r.input {
            Input::Bipartite { .. } => s += &format!("s1 = {}, s2 = {}\n", sel[0], sel[1]),
            _ => {
                let parts: Vec<String> = sel.iter().map(u64::to_string).collect();
                s += &format!("selection = {}\n", parts.join(" "));
            }
        }
    }
    if let Some(b) = &r.bounds {
        s += &format!("lower bound = {}\nupper bound = {}\n", b.lp_lower, b.whole_parts_upper);
    }
    if let Some(agrees) = r.meta.classification_agrees {
        s += &format!("classification {}\n", if agrees { "agrees" } else { "DISAGREES" });
    }
    if let Some(c) = &r.certificate {
        let set: Vec<String> = c.set.iter().map(|v| (v + 1).to_string()).collect();
        s += &format!("set = {}\n", set.join(" "));
        for ((a, b), path) in &c.chosen {
            let p: Vec<String> = path.vertices().iter().map(|v| (v + 1).to_string()).collect();
            s += &format!("  {} {}: {}\n", a + 1, b + 1, p.join(" "));
        }
    }
    if let Some(ok) = r.meta.certificate_verified {
        s += &format!("certificate {}\n", if ok { "verified" } else { "REJECTED" });
    }
    s
}

pub fn cmd_bipartite(
    n: u64,
    m: u64,
    with_certificate: bool,
    classify: bool,
) -> Result<SolveReport, CliError> {
    let sol = sg_bipartite(n, m)?;
    let mut meta = Meta::default();
    if classify {
        meta.classification_agrees = Some(classify_sg_eq_k(n, m, sol.k));
    }
    let mut certificate = None;
    if with_certificate {
        if n + m > MAX_CERTIFICATE_VERTICES {
            return Err(CliError::Budget(format!(
                "certificates are limited to {MAX_CERTIFICATE_VERTICES} vertices"
            )));
        }
        let (graph, cert) = sol.certificate().expect("optimal selection is feasible");
        meta.certificate_verified = Some(verify_certificate(&graph, &cert).is_ok());
        certificate = Some(cert);
    }
    Ok(SolveReport {
        method: Method::Scan,
        input: Input::Bipartite { n, m },
        k: sol.k,
        selection: Some(vec![sol.s1, sol.s2]),
        certificate,
        bounds: None,
        meta,
    })
}

pub fn cmd_multipartite(
    p: &Partition,
    with_bounds: bool,
    with_certificate: bool,
) -> Result<SolveReport, CliError> {
    let (k, sel) = sg_multipartite(p)?;
    let k = k as u64;
    let mut meta = Meta::default();
    let mut certificate = None;
    if with_certificate {
        if p.total() as u64 > MAX_CERTIFICATE_VERTICES {
            return Err(CliError::Budget(format!(
                "certificates are limited to {MAX_CERTIFICATE_VERTICES} vertices"
            )));
        }
        let cert = selection_certificate(p.parts(), &sel.0).expect("optimal selection is feasible");
        let graph = build_complete_multipartite(p);
        meta.certificate_verified = Some(verify_certificate(&graph, &cert).is_ok());
        certificate = Some(cert);
    }
    Ok(SolveReport {
        method: Method::Multipartite,
        input: Input::Multipartite {
            parts: p.parts().to_vec(),
        },
        k,
        selection: Some(sel.0.iter().map(|&s| s as u64).collect()),
        certificate,
        bounds: with_bounds.then(|| MultipartiteBounds::compute(p, Some(k))),
        meta,
    })
}

pub fn cmd_exact(graph: &Graph, limits: &OracleLimits) -> Result<SolveReport, CliError> {
    let (k, cert) = strong_geodetic_number_exact(graph, limits)?;
    let verified = verify_certificate(graph, &cert).is_ok();
    Ok(SolveReport {
        method: Method::Oracle,
        input: Input::Graph {
            n: graph.n(),
            edges: graph.edges().collect(),
        },
        k: k as u64,
        selection: None,
        certificate: Some(cert),
        bounds: None,
        meta: Meta {
            certificate_verified: Some(verified),
            ..Meta::default()
        },
    })
}

/// `grid[m - 1][n - 1] = sg(K_{n,m})`.
pub fn table_grid(max: u64) -> Result<Vec<Vec<u64>>, CliError> {
    (1..=max)
        .map(|m| {
            (1..=max)
                .map(|n| Ok(sg_bipartite(n, m)?.k))
                .collect::<Result<Vec<_>, CliError>>()
        })
        .collect()
}

pub fn render_table(grid: &[Vec<u64>]) -> String {
    let width = grid
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1)
        .max(grid.len().to_string().len())
        + 1;
    let mut s = format!("{:>width$}", "m\\n");
    for n in 1..=grid.len() {
        s += &format!("{n:>width$}");
    }
    s.push('\n');
    for (i, row) in grid.iter().enumerate() {
        s += &format!("{:>width$}", i + 1);
        for v in row {
            s += &format!("{v:>width$}");
        }
        s.push('\n');
    }
    s
}

pub fn render_csv(grid: &[Vec<u64>]) -> String {
    let mut s = String::from("m\\n");
    for n in 1..=grid.len() {
        s += &format!(",{n}");
    }
    s.push('\n');
    for (i, row) in grid.iter().enumerate() {
        s += &(i + 1).to_string();
        for v in row {
            s += &format!(",{v}");
        }
        s.push('\n');
    }
    s
}

/// The target graph file, with the role map (and the verification outcome,
/// if requested) as comment lines.
pub fn cmd_reduce(
    graph: &Graph,
    k: usize,
    verify_up_to: Option<usize>,
    limits: &OracleLimits,
) -> Result<String, CliError> {
    let inst = reduce(graph, None, k)?;
    let mut comments = inst.role_comments();
    if let Some(k_max) = verify_up_to {
        let r = verify_equivalence_report(graph, Some(&inst.side), k_max, limits)?;
        comments.push(format!(
            "verify gamma={} sg'={} k_max={k_max} {}",
            r.gamma,
            r.sg_target,
            if r.holds() { "holds" } else { "FAILS" }
        ));
        if !r.holds() {
            comments.push(format!("mismatches at k = {:?}", r.mismatches));
        }
    }
    Ok(serialize_graph_with_comments(&inst.target, &comments))
}
