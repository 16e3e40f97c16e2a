//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
//! input-format error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::Directedness;
use crate::constructions::{ConstructionFamily, ConstructionSpec};
use crate::error::{Error, Result};
use crate::geometry::ConeSystem;
use crate::graph::{
    build_theta, build_yao, filter_incoming, half_theta, ConeGraph, Family, Parity,
};
use crate::io::{
    read_points, render_points, render_svg, run_suite, GraphReport, Suite, SvgOptions, VerifyParams,
};

pub const SEED_ENV: &str = "CONE_SPANNER_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "cone-spanner",
    version,
    about = "Cone-based proximity graphs and spanner checks"
)]
struct Cli {
    /// Worker threads for graph construction and analysis.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a point set.
    Gen(GenArgs),
    /// Build a cone graph from a point file.
    Build(BuildArgs),
    /// Attach stretch, degree and crossing diagnostics to a graph.
    Analyze(AnalyzeArgs),
    /// Draw a graph as SVG.
    Render(RenderArgs),
    /// Run a verification suite and print its outcome as JSON.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_parser = parse_with::<ConstructionFamily>)]
    family: ConstructionFamily,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long = "delta-frac")]
    delta_frac: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Defaults to $CONE_SPANNER_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_parser = parse_with::<Family>)]
    family: Family,
    #[arg(long, default_value_t = 6)]
    k: usize,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Measure distances along edge directions only.
    #[arg(long)]
    directed: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Overlay the cones of this vertex.
    #[arg(long = "cones-at")]
    cones_at: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_with::<Suite>)]
    suite: Suite,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seeds: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    /// Base seed for random fixtures; defaults to $CONE_SPANNER_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_with<T: std::str::FromStr<Err = Error>>(s: &str) -> std::result::Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn default_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{SEED_ENV}='{v}' is not a seed"))),
        Err(_) => Ok(0),
    }
}

fn emit(output: Option<&Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, content)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Parse { .. } | Error::Graph(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Builds the requested graph family from a point set.
pub fn build_family(
    points: &crate::geometry::PointSet,
    family: Family,
    k: usize,
) -> Result<ConeGraph> {
    let sys = ConeSystem::new(k)?;
    match family {
        Family::Yao => Ok(build_yao(points, &sys)),
        Family::Theta => Ok(build_theta(points, &sys)),
        Family::YaoYao => filter_incoming(&build_yao(points, &sys)),
        Family::ThetaTheta => filter_incoming(&build_theta(points, &sys)),
        Family::HalfThetaOdd => half_theta(&build_theta(points, &sys), Parity::Odd),
        Family::HalfThetaEven => half_theta(&build_theta(points, &sys), Parity::Even),
    }
}

fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Gen(a) => {
            let mut spec = ConstructionSpec::new(a.family);
            if let Some(n) = a.n {
                spec.n = n;
            }
            if let Some(alpha) = a.alpha {
                spec.alpha = alpha;
            }
            if let Some(f) = a.delta_frac {
                spec.delta_fraction = f;
            }
            if let Some(e) = a.epsilon {
                spec.epsilon = e;
            }
            spec.seed = default_seed(a.seed)?;
            let set = spec.generate()?;
            emit(a.output.as_deref(), &render_points(&set))?;
        }
        Command::Build(a) => {
            let set = read_points(&a.input)?;
            let g = build_family(&set.points, a.family, a.k)?;
            let report = GraphReport::from_graph(&g, &set.labels);
            emit(a.output.as_deref(), &report.to_json()?)?;
        }
        Command::Analyze(a) => {
            let mut report = GraphReport::read(&a.input)?;
            let dir = if a.directed {
                Directedness::Directed
            } else {
                Directedness::Undirected
            };
            report.analyze(dir)?;
            emit(a.output.as_deref(), &report.to_json()?)?;
        }
        Command::Render(a) => {
            let report = GraphReport::read(&a.input)?;
            let g = report.to_graph()?;
            if let Some(id) = a.cones_at {
                g.points().get(id)?;
            }
            let svg = render_svg(
                &g,
                &report.labels,
                &SvgOptions {
                    cones_at: a.cones_at,
                },
            );
            emit(a.output.as_deref(), &svg)?;
        }
        Command::Verify(a) => {
            let params = VerifyParams {
                n: a.n,
                seeds: a.seeds,
                trials: a.trials,
                seed: default_seed(a.seed)?,
            };
            let outcome = run_suite(a.suite, &params)?;
            emit(None, &outcome.to_json()?)?;
            if !outcome.passed {
                for c in outcome.failing() {
                    eprintln!(
                        "check {} failed: {} (measured {}, bound {}, tolerance {})",
                        c.id, c.claim, c.measured, c.bound, c.tolerance
                    );
                }
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `argv` (including the program name) and runs the command.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.threads {
        Some(0) => Err(Error::InvalidParameter("--threads must be positive".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))
            .and_then(|pool| pool.install(|| run(cli.command))),
        None => run(cli.command),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
