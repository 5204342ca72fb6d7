//! Command-line front end. Every subcommand prints machine-readable output
//! (JSON or CSV) on stdout; diagnostics go to stderr. Exit status is 0 on
//! success, 2 on a usage error and 1 on a runtime failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::allocators::{
    hilbert_bf_allocate, mc1x1_select, mm_allocate_with, mm_inc_allocate, Algorithm, MedianMode,
    Mesh,
};
use crate::decimal;
use crate::error::{Error, Result};
use crate::geometry::{Allocation, PointMultiset};
use crate::instances;
use crate::optimal::{self, brute_force_opt_with_budget, exact_k3, unconstrained_optimal};
use crate::ptas::{self, ptas_factor, ptas_select_d_with_budget};
use crate::simulator::{decision_matrix_csv, event_log_csv, simulate_matrix, Trace};

#[derive(Parser, Debug)]
#[command(name = "meshalloc", version, about = "Processor allocation on mesh machines")]
struct Cli {
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Allocate k processors with one of the heuristics.
    Allocate(AllocateArgs),
    /// Exact optimum by exhaustive subset search.
    Oracle(OracleArgs),
    /// Approximation scheme with strip/cell enumeration.
    Ptas(PtasArgs),
    /// Fast exact solver for k = 3 in the plane.
    K3 {
        #[arg(long)]
        points: PathBuf,
    },
    /// Optimal unconstrained grid clusters for k = 1..=max-k.
    Shapes {
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..=optimal::MAX_SHAPE_K as i64))]
        max_k: u16,
        /// Search radius; defaults to k − 1, which covers every optimum.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Replay an SWF trace and print the situation/decision matrix.
    Simulate(SimulateArgs),
    /// Run an algorithm and the oracle and check the approximation bound.
    Ratio(RatioArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["mesh", "points"])))]
struct AllocateArgs {
    #[arg(long, value_parser = ["mm", "mm-inc", "mc1x1", "hilbert-bf"])]
    algo: String,
    #[arg(long)]
    mesh: Option<PathBuf>,
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// MM only: restrict candidate medians to input points.
    #[arg(long)]
    fast: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, default_value_t = optimal::DEFAULT_SUBSET_BUDGET as u64)]
    budget: u64,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("precision").required(true).args(["m", "auto_m"])))]
struct PtasArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    m: Option<u64>,
    /// Use the largest divisor of k that is at least 5.
    #[arg(long)]
    auto_m: bool,
    #[arg(long, default_value_t = ptas::DEFAULT_PTAS_BUDGET as u64)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Planar family where MM approaches ratio 7/4.
    Lower2d {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        scale: i64,
    },
    /// Cross-polytope family where MM approaches 2 − 1/(2d).
    Crosspoly {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        scale: i64,
    },
    /// Random mesh occupancy.
    Mesh {
        #[arg(long, value_delimiter = ',', required = true)]
        extents: Vec<usize>,
        #[arg(long)]
        occupancy: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random point multiset with coordinates in [0, span).
    Points {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 16)]
        span: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Synthetic SWF job trace.
    Trace {
        #[arg(long)]
        jobs: usize,
        #[arg(long, default_value_t = 64)]
        max_procs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    trace: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "16,16")]
    extents: Vec<usize>,
    /// Divide every job's processor count by this, rounding up.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    divisor: u64,
    #[arg(long, value_delimiter = ',', default_value = "mc1x1,mm,mm-inc,hilbert-bf")]
    situations: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "mc1x1,mm,mm-inc,hilbert-bf")]
    decisions: Vec<String>,
    /// Also write the per-event log CSV here.
    #[arg(long)]
    events: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RatioArgs {
    #[arg(long, value_parser = ["mm", "mm-inc", "mc1x1", "ptas"])]
    algo: String,
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// PTAS precision.
    #[arg(long, default_value_t = 5)]
    m: usize,
}

/// Parses `args` (including the program name) and runs the command,
/// printing to the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n as usize).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(CliError::Runtime(Error::invalid(e.to_string()))),
        },
        None => execute(cli.command),
    };
    match outcome {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Runtime(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

enum CliError {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Runtime(e)
    }
}

type CliResult = std::result::Result<String, CliError>;

fn read_points(path: &Path) -> Result<PointMultiset> {
    PointMultiset::from_json(&std::fs::read_to_string(path)?)
}

fn read_mesh(path: &Path) -> Result<Mesh> {
    Mesh::from_json(&std::fs::read_to_string(path)?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("results always serialize");
    s.push('\n');
    s
}

fn ratio_json(r: Ratio<u64>) -> Value {
    json!({
        "fraction": format!("{}/{}", r.numer(), r.denom()),
        "decimal": decimal::rounded(*r.numer() as u128, *r.denom() as u128, 4),
    })
}

fn execute(command: Command) -> CliResult {
    match command {
        Command::Allocate(a) => allocate(a),
        Command::Oracle(a) => {
            let pts = read_points(&a.points)?;
            Ok(to_json(&brute_force_opt_with_budget(&pts, a.k as usize, a.budget as u128)?))
        }
        Command::Ptas(a) => ptas_command(a),
        Command::K3 { points } => Ok(to_json(&exact_k3(&read_points(&points)?)?)),
        Command::Shapes { max_k, radius } => {
            let rows = (1..=max_k as usize)
                .map(|k| {
                    let shape = unconstrained_optimal(k, radius.unwrap_or(k.saturating_sub(1)))?;
                    Ok(json!({"k": k, "points": shape.points, "total": shape.total, "average": shape.average}))
                })
                .collect::<Result<Vec<Value>>>()?;
            Ok(to_json(&rows))
        }
        Command::Gen(g) => generate(g),
        Command::Simulate(a) => simulate_command(a),
        Command::Ratio(a) => ratio_command(a),
    }
}

fn allocate(a: AllocateArgs) -> CliResult {
    let k = a.k as usize;
    if a.fast && a.algo != "mm" {
        return Err(CliError::Usage("--fast applies to --algo mm only".into()));
    }
    let mode = if a.fast { MedianMode::Fast } else { MedianMode::Full };
    let mesh = a.mesh.as_deref().map(read_mesh).transpose()?;
    let free = match (&mesh, &a.points) {
        (Some(m), _) => m.free_points(),
        (None, Some(p)) => read_points(p)?,
        (None, None) => unreachable!("clap requires one input"),
    };
    let value = match a.algo.as_str() {
        "mm" => serde_json::to_value(mm_allocate_with(&free, k, mode)?),
        "mm-inc" => serde_json::to_value(mm_inc_allocate(&free, k)?),
        "mc1x1" => {
            let (alloc, cost) = mc1x1_select(&free, k)?;
            let mut v = serde_json::to_value(alloc).map_err(Error::from)?;
            v["sigma"] = json!(cost.sigma);
            Ok(v)
        }
        "hilbert-bf" => {
            let mesh = mesh.ok_or_else(|| CliError::Usage("hilbert-bf needs --mesh".into()))?;
            serde_json::to_value(hilbert_bf_allocate(&mesh, k)?)
        }
        other => unreachable!("clap restricts --algo, got {other}"),
    }
    .map_err(Error::from)?;
    Ok(to_json(&value))
}

fn ptas_command(a: PtasArgs) -> CliResult {
    let pts = read_points(&a.points)?;
    let k = a.k as usize;
    let m = match a.m {
        Some(m) => m as usize,
        None => ptas::auto_m(k)
            .ok_or_else(|| Error::invalid(format!("no divisor m ≥ 5 of k = {k}")))?,
    };
    let outcome = ptas_select_d_with_budget(&pts, k, m, a.budget as u128)?;
    let mut v = serde_json::to_value(&outcome).map_err(Error::from)?;
    v["m"] = json!(m);
    if pts.dim() == 2 && m >= 5 {
        v["factor"] = ratio_json(ptas_factor(m as u64)?);
    }
    Ok(to_json(&v))
}

fn generate(g: GenCommand) -> CliResult {
    Ok(match g {
        GenCommand::Lower2d { k, scale } => instances::gen_lower_bound_2d(k, scale)?.to_json() + "\n",
        GenCommand::Crosspoly { k, d, scale } => {
            instances::gen_lower_bound_crosspolytope(k, d, scale)?.to_json() + "\n"
        }
        GenCommand::Mesh { extents, occupancy, seed } => {
            instances::gen_random_mesh(extents, occupancy, seed)?.to_json() + "\n"
        }
        GenCommand::Points { n, dim, span, seed } => {
            instances::gen_random_points(n, dim, span, seed)?.to_json() + "\n"
        }
        GenCommand::Trace { jobs, max_procs, seed } => {
            if max_procs == 0 || max_procs > 1 << 32 {
                return Err(CliError::Usage("--max-procs must be in 1..=2^32".into()));
            }
            instances::gen_synthetic_swf(jobs, max_procs, seed)
        }
    })
}

fn parse_algos(names: &[String]) -> std::result::Result<Vec<Algorithm>, CliError> {
    names
        .iter()
        .map(|s| s.parse::<Algorithm>().map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn simulate_command(a: SimulateArgs) -> CliResult {
    let situations = parse_algos(&a.situations)?;
    let decisions = parse_algos(&a.decisions)?;
    let trace = Trace::from_file(&a.trace)?.scaled(a.divisor as usize)?;
    let result = simulate_matrix(&trace, &a.extents, &situations, &decisions)?;
    if let Some(path) = &a.events {
        std::fs::write(path, event_log_csv(&result)).map_err(Error::from)?;
    }
    Ok(decision_matrix_csv(&result))
}

/// Proven ratio bound of an algorithm on `dim`-dimensional input.
fn ratio_bound(algo: &str, dim: usize, k: usize, m: usize) -> Result<Ratio<u64>> {
    let d = dim as u64;
    let k = k as u64;
    match algo {
        "mm" | "mm-inc" if dim == 2 => Ok(Ratio::new(7, 4)),
        "mm" | "mm-inc" => Ok(Ratio::new(4 * d - 1, 2 * d)),
        // (2 − 2/k)·d
        "mc1x1" => Ok(Ratio::new((2 * k - 2) * d, k.max(1))),
        "ptas" if dim == 2 => ptas_factor(m as u64),
        "ptas" => Err(Error::invalid("no proven factor outside the plane")),
        other => Err(Error::invalid(format!("no bound for {other}"))),
    }
}

fn ratio_command(a: RatioArgs) -> CliResult {
    let pts = read_points(&a.instance)?;
    let k = a.k as usize;
    let alloc: Allocation = match a.algo.as_str() {
        "mm" => mm_allocate_with(&pts, k, MedianMode::Full)?,
        "mm-inc" => mm_inc_allocate(&pts, k)?,
        "mc1x1" => mc1x1_select(&pts, k)?.0,
        "ptas" => ptas_select_d_with_budget(&pts, k, a.m, ptas::DEFAULT_PTAS_BUDGET)?.allocation,
        other => unreachable!("clap restricts --algo, got {other}"),
    };
    let opt = optimal::brute_force_opt(&pts, k)?;
    let bound = ratio_bound(&a.algo, pts.dim(), k, a.m)?;
    let (total, best) = (alloc.total_distance as u128, opt.total_distance as u128);
    let pass = total * *bound.denom() as u128 <= best * *bound.numer() as u128;
    let ratio = if best == 0 {
        if total == 0 { "1.0000".to_string() } else { "inf".to_string() }
    } else {
        decimal::rounded(total, best, 4)
    };
    let v = json!({
        "algorithm": alloc.algorithm,
        "k": k,
        "dim": pts.dim(),
        "total": alloc.total_distance,
        "opt": opt.total_distance,
        "ratio": ratio,
        "bound": ratio_json(bound),
        "pass": pass,
        "verdict": if pass { "PASS" } else { "FAIL" },
    });
    Ok(to_json(&v))
}
