//! Thin command-line front end over the `hyperlab` library.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
//! 3 solver non-convergence.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use hyperlab::projection::eta;
use hyperlab::{hausdorff, CubePoint, FiniteSubset, MetricKind, ProjectionError, Suite, SuiteConfig, SuiteError};

#[derive(Parser)]
#[command(name = "hyperlab", version, about = "Finite-subset hyperspaces of the Hilbert cube")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hausdorff distance between two finite subsets given as JSON `{"A": .., "B": ..}`.
    Hausdorff {
        #[arg(long, default_value = "product")]
        metric: MetricKind,
        /// Input file; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Nearest point of `co(K)` to `p`, input JSON `{"p": [..], "K": [[..], ..]}`.
    Project {
        #[arg(long, default_value_t = hyperlab::projection::DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Factor-map checks.
    Factor {
        #[command(subcommand)]
        action: Action,
    },
    /// Wedge checks.
    Wedge {
        #[command(subcommand)]
        action: Action,
    },
}

#[derive(Subcommand)]
enum Action {
    Verify {
        #[command(flatten)]
        opts: VerifyOpts,
    },
}

#[derive(Args, Clone)]
struct VerifyOpts {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, env = "HYPERLAB_SEED", default_value_t = hyperlab::suite::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    tol: Option<f64>,
    /// Override the suite's pass bound.
    #[arg(long)]
    bound: Option<f64>,
    #[arg(long)]
    threads: Option<usize>,
    /// Also write the JSON lines to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl VerifyOpts {
    fn config(&self, suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            n: self.n,
            depth: self.depth,
            trials: self.trials,
            seed: self.seed,
            tol: self.tol,
            bound: self.bound,
            threads: self.threads,
        }
    }
}

#[derive(Deserialize)]
struct HausdorffInput {
    #[serde(rename = "A")]
    a: Vec<CubePoint>,
    #[serde(rename = "B")]
    b: Vec<CubePoint>,
}

#[derive(Deserialize)]
struct ProjectInput {
    p: CubePoint,
    #[serde(rename = "K")]
    k: Vec<CubePoint>,
}

enum Failure {
    Usage(String),
    Solver(String),
}

impl From<SuiteError> for Failure {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Solver(_) => Failure::Solver(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut buf = String::new();
    match path {
        Some(p) => buf = std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => {
            std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    Ok(buf)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("invalid input: {e}")))
}

/// Sets of arbitrary size: the cardinality bound is the set's own size.
fn subset(points: Vec<CubePoint>) -> Result<FiniteSubset<CubePoint>, Failure> {
    let n = points.len().max(1);
    FiniteSubset::new(points, n).map_err(|e| Failure::Usage(e.to_string()))
}

fn run_suites(suites: &[Suite], opts: &VerifyOpts) -> Result<bool, Failure> {
    let mut lines = String::new();
    let mut pass = true;
    if suites.len() == Suite::ALL.len() {
        let agg = hyperlab::run_all(&opts.config(Suite::MetricAxioms))?;
        for r in &agg.reports {
            eprintln!("{}", r.summary());
        }
        lines = agg.to_json_lines();
        pass = agg.pass;
    } else {
        for &suite in suites {
            let r = hyperlab::run_suite(&opts.config(suite))?;
            eprintln!("{}", r.summary());
            lines.push_str(&r.to_json_line());
            lines.push('\n');
            pass &= r.pass;
        }
    }
    print!("{lines}");
    if let Some(path) = &opts.out {
        std::fs::write(path, &lines).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(pass)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Hausdorff { metric, input } => {
            let req: HausdorffInput = parse(&read_input(input.as_ref())?)?;
            let d = hausdorff(&subset(req.a)?, &subset(req.b)?, metric);
            println!("{}", serde_json::json!({ "distance": d }));
            Ok(true)
        }
        Command::Project { tol, input } => {
            let req: ProjectInput = parse(&read_input(input.as_ref())?)?;
            let result = eta(&req.p, &subset(req.k)?, tol).map_err(|e| match e {
                ProjectionError::NonConvergence { .. } => Failure::Solver(e.to_string()),
                other => Failure::Usage(other.to_string()),
            })?;
            println!("{}", serde_json::to_string(&result).expect("result serializes"));
            Ok(true)
        }
        Command::Verify { suite, opts } => {
            if suite == "all" {
                run_suites(&Suite::ALL, &opts)
            } else {
                let suite = suite.parse::<Suite>()?;
                run_suites(&[suite], &opts)
            }
        }
        Command::Factor { action: Action::Verify { opts } } => {
            run_suites(&[Suite::FiberPreservation, Suite::Surjectivity], &opts)
        }
        Command::Wedge { action: Action::Verify { opts } } => {
            run_suites(&[Suite::ZpushWedge, Suite::WedgeDecomposition], &opts)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
