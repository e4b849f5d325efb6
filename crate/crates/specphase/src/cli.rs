//! Command-line driver.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical
//! non-convergence.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use specphase_core::eigen::FiedlerOptions;
use specphase_core::gen::{generate_sbm, GenParams, NoiseScope};
use specphase_core::partition::detect_communities;
use specphase_core::theory::sbm_bounds;

use crate::experiment::{self, AssessConfig};
use crate::io::{self, fmt_float, IdMap};
use crate::sweep::{self, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "specphase", version, about = "Spectral community detectability under noisy edge insertions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a two-community instance and write edges, labels and parameters.
    Generate(GenerateArgs),
    /// Split a graph in two with the Fiedler vector.
    Detect(DetectArgs),
    /// Monte Carlo sweep over the cross-community probability.
    Sweep(SweepArgs),
    /// Reliability assessment of a graph under increasing insertion noise.
    Assess(AssessArgs),
    /// Asymptotic critical-value bounds for Erdos-Renyi communities.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    All,
    Cross,
}

impl From<Scope> for NoiseScope {
    fn from(s: Scope) -> Self {
        match s {
            Scope::All => NoiseScope::All,
            Scope::Cross => NoiseScope::Cross,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Relative residual tolerance of the eigensolver.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Lanczos step limit (default 10 sqrt(n) + 200).
    #[arg(long)]
    pub max_iter: Option<usize>,
}

impl SolverArgs {
    fn options(&self) -> FiedlerOptions {
        FiedlerOptions {
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n1: usize,
    #[arg(long)]
    pub n2: usize,
    #[arg(long)]
    pub p1: f64,
    #[arg(long)]
    pub p2: f64,
    /// Cross-community probability.
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0)]
    pub q: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Scope::All)]
    pub noise_scope: Scope,
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    /// Edge list.
    #[arg(long)]
    pub graph: PathBuf,
    /// Partition CSV (`id,label`); printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub n1: usize,
    #[arg(long)]
    pub n2: usize,
    #[arg(long)]
    pub p1: f64,
    #[arg(long)]
    pub p2: f64,
    /// `start:stop:step` (inclusive) or a comma-separated list.
    #[arg(long)]
    pub p_grid: String,
    #[arg(long, default_value_t = 0.0)]
    pub q: f64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Scope::All)]
    pub noise_scope: Scope,
    /// Per-trial CSV.
    #[arg(long)]
    pub out: PathBuf,
    /// Per-p summary CSV (default: `<out stem>.summary.csv`).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, env = "SPECPHASE_THREADS")]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct AssessArgs {
    /// Edge list.
    #[arg(long)]
    pub graph: PathBuf,
    /// Optional `id,label` CSV used to score detections.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Label value that belongs to neither community (scored as misplaced).
    #[arg(long)]
    pub unscored_label: Option<String>,
    /// Comma-separated noise levels.
    #[arg(long, default_value = "0")]
    pub q_grid: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Per-q summary CSV (default: `<out stem>.summary.csv`).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, env = "SPECPHASE_THREADS")]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub p1: f64,
    #[arg(long)]
    pub p2: f64,
    /// Size ratio n1 / n2.
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub q: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        match e {
            io::Error::Graph(core) => core.into(),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<specphase_core::Error> for CliError {
    fn from(e: specphase_core::Error) -> Self {
        match e {
            specphase_core::Error::NotConverged { .. } => CliError::Numerical(e.to_string()),
            specphase_core::Error::InvalidProbability { .. }
            | specphase_core::Error::CommunityTooSmall { .. }
            | specphase_core::Error::InvalidRatio(_) => CliError::Usage(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate(a) => cmd_generate(&a),
        Command::Detect(a) => cmd_detect(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Assess(a) => cmd_assess(&a),
        Command::Bounds(a) => cmd_bounds(&a),
    }
}

pub fn cmd_generate(a: &GenerateArgs) -> Result<(), CliError> {
    let params = GenParams::new(a.n1, a.n2, a.p1, a.p2, a.p, a.q, a.seed).with_noise_scope(a.noise_scope.into());
    let inst = generate_sbm(&params)?;
    fs::create_dir_all(&a.out).map_err(|e| CliError::Data(format!("{}: {e}", a.out.display())))?;
    let ids = IdMap::numeric(inst.graph.node_count());
    io::write_file(&a.out.join("graph.edges"), |w| io::write_edge_list(&inst.graph, &ids, w))?;
    io::write_file(&a.out.join("labels.csv"), |w| io::write_labels(&ids, &inst.truth, w))?;
    let scope = match a.noise_scope {
        Scope::All => "all",
        Scope::Cross => "cross",
    };
    let manifest = [
        ("n1", a.n1.to_string()),
        ("n2", a.n2.to_string()),
        ("p1", fmt_float(a.p1)),
        ("p2", fmt_float(a.p2)),
        ("p", fmt_float(a.p)),
        ("q", fmt_float(a.q)),
        ("seed", a.seed.to_string()),
        ("noise_scope", scope.to_string()),
        ("nodes", inst.graph.node_count().to_string()),
        ("edges", inst.graph.edge_count().to_string()),
        ("signal_edges", inst.signal_graph.edge_count().to_string()),
    ];
    io::write_file(&a.out.join("params.txt"), |w| io::write_manifest(&manifest, w))?;
    Ok(())
}

pub fn cmd_detect(a: &DetectArgs) -> Result<(), CliError> {
    let (g, ids) = io::read_edge_list(&a.graph)?;
    let (part, spectral) = detect_communities(&g, &a.solver.options())?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let diag = [
        ("nodes", g.node_count().to_string()),
        ("edges", g.edge_count().to_string()),
        ("lambda2", fmt_float(spectral.lambda2)),
        ("iterations", spectral.iterations.to_string()),
        ("residual", fmt_float(spectral.residual)),
        ("size_0", part.sizes.0.to_string()),
        ("size_1", part.sizes.1.to_string()),
        ("split_value", fmt_float(part.split_value)),
    ];
    let write_err = |e: std::io::Error| CliError::Data(e.to_string());
    match &a.out {
        Some(path) => {
            io::write_file(path, |w| io::write_labels(&ids, &part.assignment, w))?;
            io::write_manifest(&diag, &mut out).map_err(write_err)?;
        }
        None => {
            for (k, v) in &diag {
                writeln!(out, "# {k}={v}").map_err(write_err)?;
            }
            io::write_labels(&ids, &part.assignment, &mut out).map_err(write_err)?;
        }
    }
    Ok(())
}

/// `start:stop:step` or `a,b,c`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |what: &str| CliError::Usage(format!("invalid grid `{spec}`: {what}"));
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [a, b, c] = parts[..] else {
            return Err(bad("expected start:stop:step"));
        };
        let num = |s: &str| s.trim().parse::<f64>().map_err(|e| bad(&e.to_string()));
        sweep::linear_grid(num(a)?, num(b)?, num(c)?).map_err(|e| bad(&e))
    } else {
        let values = spec
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| bad(&e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(bad("empty"));
        }
        Ok(values)
    }
}

fn summary_path(out: &Path, explicit: &Option<PathBuf>) -> PathBuf {
    explicit.clone().unwrap_or_else(|| {
        let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        out.with_file_name(format!("{stem}.summary.csv"))
    })
}

fn thread_pool(threads: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        builder = builder.num_threads(t);
    }
    builder.build().map_err(|e| CliError::Usage(e.to_string()))
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<(), CliError> {
    let cfg = SweepConfig {
        n1: a.n1,
        n2: a.n2,
        p1: a.p1,
        p2: a.p2,
        q: a.q,
        seed: a.seed,
        p_grid: parse_grid(&a.p_grid)?,
        trials: a.trials,
        noise_scope: a.noise_scope.into(),
        fiedler: a.solver.options(),
    };
    cfg.validate().map_err(CliError::Usage)?;
    let rows = thread_pool(a.threads)?.install(|| sweep::run_sweep(&cfg));
    io::write_table_file(&rows, &a.out)?;
    io::write_table_file(&sweep::summarize(&rows), &summary_path(&a.out, &a.summary))?;
    Ok(())
}

pub fn cmd_assess(a: &AssessArgs) -> Result<(), CliError> {
    let (g, ids) = io::read_edge_list(&a.graph)?;
    let truth = match &a.labels {
        Some(path) => {
            let labels = io::read_labels(path, &ids)?;
            Some(io::binarize_labels(&labels, a.unscored_label.as_deref())?)
        }
        None => None,
    };
    let cfg = AssessConfig {
        q_grid: parse_grid(&a.q_grid)?,
        trials: a.trials,
        seed: a.seed,
        fiedler: a.solver.options(),
    };
    if cfg.trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    if let Some(q) = cfg.q_grid.iter().find(|q| !(0.0..=1.0).contains(*q)) {
        return Err(CliError::Usage(format!("noise level {q} outside [0, 1]")));
    }
    let rows = thread_pool(a.threads)?.install(|| experiment::run_assess(&g, truth.as_deref(), &cfg));
    io::write_table_file(&rows, &a.out)?;
    io::write_table_file(&experiment::summarize(&rows), &summary_path(&a.out, &a.summary))?;
    Ok(())
}

pub fn cmd_bounds(a: &BoundsArgs) -> Result<(), CliError> {
    let (lb, ub) = sbm_bounds(a.p1, a.p2, a.c, a.q)?;
    println!("p_lb={}\np_ub={}", fmt_float(lb), fmt_float(ub));
    Ok(())
}
