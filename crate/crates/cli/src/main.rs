//! `pentagram`: the pentagram map, its conserved collineation and the limit
//! point of convex polygons, from the command line.
//!
//! Every command reads one polygon (JSON or `x,y` lines, `-` for stdin) and
//! prints a JSON report. Exit codes: 0 success, 1 a check failed, 2 invalid
//! input, 3 no limit candidate could be selected, 4 the map degenerated
//! while iterating.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use pentagram_core::geom::DEFAULT_EPSILON;
use serde_json::json;

use pentagram_cli::commands::{self, CheckName, CliError, Method};
use pentagram_cli::input::{AnyPolygon, PolygonDocument};
use pentagram_cli::report::{InputSummary, ReportDocument, Timing};

#[derive(Parser, Debug)]
#[command(name = "pentagram", version, about = "Pentagram map iterates, L_A and limit points")]
struct Cli {
    /// Tolerance for float-mode degeneracy tests.
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Add wall-clock timing to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print L_A, its trace and characteristic polynomial.
    La {
        input: PathBuf,
        /// Print decimals instead of exact rationals.
        #[arg(long)]
        float: bool,
    },
    /// Limit point of a convex polygon, cross-checked against iteration
    /// unless `--method eigen` is given.
    Limit {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Diameter at which iteration stops.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Vertices of T^k(A).
    Iterate {
        input: PathBuf,
        #[arg(short, default_value_t = 1)]
        k: usize,
        /// Steps done exactly before switching to floats (default: all).
        #[arg(long)]
        exact_steps: Option<usize>,
    },
    /// Collapse point of an axis-aligned polygon.
    Collapse {
        input: PathBuf,
        /// Also check the incidence statement on T^(m-2)(A).
        #[arg(long)]
        verify: bool,
    },
    /// Run identity checks; exits 1 if any fails.
    Verify {
        input: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = CheckName::ALL)]
        checks: Vec<CheckName>,
        /// Seed for randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        corrupt_la: bool,
    },
    /// Draw A, T(A), ..., T^k(A) as SVG.
    Render {
        input: PathBuf,
        #[arg(short, default_value_t = 5)]
        k: usize,
        #[arg(short, long)]
        output: PathBuf,
        /// Mark the limit point.
        #[arg(long)]
        mark_limit: bool,
    },
}

impl Command {
    fn input(&self) -> &PathBuf {
        match self {
            Command::La { input, .. }
            | Command::Limit { input, .. }
            | Command::Iterate { input, .. }
            | Command::Collapse { input, .. }
            | Command::Verify { input, .. }
            | Command::Render { input, .. } => input,
        }
    }

    fn echo(&self, epsilon: f64) -> serde_json::Value {
        let (name, args) = match self {
            Command::La { input, float } => ("la", json!({ "input": input, "float": float })),
            Command::Limit { input, method, tol } => {
                ("limit", json!({ "input": input, "method": format!("{method:?}").to_lowercase(), "tol": tol }))
            }
            Command::Iterate { input, k, exact_steps } => {
                ("iterate", json!({ "input": input, "k": k, "exact_steps": exact_steps }))
            }
            Command::Collapse { input, verify } => ("collapse", json!({ "input": input, "verify": verify })),
            Command::Verify { input, checks, seed, .. } => {
                let checks: Vec<String> = checks.iter().map(|c| format!("{c:?}").to_lowercase()).collect();
                ("verify", json!({ "input": input, "checks": checks, "seed": seed }))
            }
            Command::Render { input, k, output, mark_limit } => {
                ("render", json!({ "input": input, "k": k, "output": output, "mark_limit": mark_limit }))
            }
        };
        json!({ "name": name, "args": args, "epsilon": epsilon })
    }
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, CliError> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| CliError::invalid(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read(path).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
    }
}

macro_rules! on_polygon {
    ($poly:expr, $f:path, $($arg:expr),*) => {
        match $poly {
            AnyPolygon::Exact(a) => $f(a, $($arg),*),
            AnyPolygon::Float(a) => $f(a, $($arg),*),
        }
    };
}

fn run(cli: &Cli) -> Result<ReportDocument, CliError> {
    let start = Instant::now();
    let raw = read_input(cli.command.input())?;
    let text = String::from_utf8(raw.clone()).map_err(|_| CliError::invalid("input is not UTF-8"))?;
    let doc = PolygonDocument::parse(&text)?;
    let poly = doc.polygon(cli.epsilon)?;
    let (n, mode) = match &poly {
        AnyPolygon::Exact(a) => (a.len(), "exact"),
        AnyPolygon::Float(a) => (a.len(), "float"),
    };

    let (results, checks) = match &cli.command {
        Command::La { float, .. } => on_polygon!(&poly, commands::la, *float)?,
        Command::Limit { method, tol, .. } => on_polygon!(&poly, commands::limit, *method, *tol)?,
        Command::Iterate { k, exact_steps, .. } => on_polygon!(&poly, commands::iterate_cmd, *k, *exact_steps)?,
        Command::Collapse { verify, .. } => on_polygon!(&poly, commands::collapse, *verify)?,
        Command::Verify { checks, seed, corrupt_la, .. } => {
            on_polygon!(&poly, commands::verify, checks, *seed, *corrupt_la)?
        }
        Command::Render { k, output, mark_limit, .. } => {
            let (svg, results) = on_polygon!(&poly, commands::render, *k, *mark_limit)?;
            std::fs::write(output, svg).map_err(|e| CliError {
                code: 2,
                message: format!("{}: {e}", output.display()),
            })?;
            (results, vec![])
        }
    };

    Ok(ReportDocument {
        command: cli.command.echo(cli.epsilon),
        input: InputSummary::new(&raw, doc.name.clone(), n, mode),
        results,
        checks,
        timing: cli.timing.then(|| Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 }),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{}", report.to_pretty());
            if report.failed() { ExitCode::from(1) } else { ExitCode::SUCCESS }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
