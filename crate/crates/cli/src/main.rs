use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use sllab::certificate::{delta, DeltaQuery};
use sllab::fdsolve::{solve, Grid2D, Problem2D, StencilSet};
use sllab::slop::operator;
use sllab::symmat::eigenvalues;
use sllab::verify::{verify_family, SweepConfig};
use sllab::{Error, Family, Phase, SymMatrix};

const THREADS_VAR: &str = "SLLAB_THREADS";

#[derive(Parser)]
#[command(
    name = "sllab",
    version,
    about = "Counterexamples, certificates and a monotone solver for F(D^2 w) = f"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the family checks and viscosity probes; prints a JSON report.
    Verify(VerifyArgs),
    /// Write the n = 2, k = 1 panels vfig.csv, ufig.csv, vsubufig.csv and
    /// phasefig.csv.
    Figure(FigureArgs),
    /// Tabulate the comparison gap delta(theta, tau) over eigenvalue caps.
    Delta(DeltaArgs),
    /// Solve a two-dimensional Dirichlet problem with the wide-stencil scheme.
    Solve(SolveArgs),
    /// Eigenvalues and F of a symmetric matrix read from CSV.
    Operator(OperatorArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1.5)]
    p: f64,
    #[arg(long, default_value_t = 41)]
    grid: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random quadratics per point and probe.
    #[arg(long, default_value_t = 64)]
    trials: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long, default_value_t = 33)]
    grid: usize,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct DeltaArgs {
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    /// Comma-separated eigenvalue caps.
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000,10000")]
    caps: Vec<f64>,
    #[arg(long, default_value_t = 2000)]
    resolution: usize,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// radial32, constant:<theta>, counterexample:<k> or affine:<a>,<b>,<c>.
    #[arg(long, allow_hyphen_values = true)]
    problem: String,
    #[arg(long, default_value_t = 33)]
    m: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 200_000)]
    max_iters: usize,
    /// Output directory for solution.csv and convergence.csv.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct OperatorArgs {
    /// CSV file with one matrix row per line.
    matrix: PathBuf,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_)
            | Error::IndexOutOfRange { .. }
            | Error::DimensionMismatch { .. }
            | Error::UnsupportedDimension(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Compute(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, contents),
        None => std::io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| Failure::Compute(e.to_string())),
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::Usage(format!("{THREADS_VAR}={raw:?} is not a positive integer"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Compute(e.to_string()))
}

/// Returns whether every check passed.
fn cmd_verify(args: &VerifyArgs) -> Result<bool, Failure> {
    if !(1..=3).contains(&args.n) {
        return Err(Failure::Usage(format!("--n {} must be 1, 2 or 3", args.n)));
    }
    if args.k > args.n {
        return Err(Failure::Usage(format!(
            "--k {} exceeds --n {}",
            args.k, args.n
        )));
    }
    let fam = Family::new(args.n, args.k, args.p)?;
    let cfg = SweepConfig {
        grid: args.grid,
        trials: args.trials,
        seed: args.seed,
        ..SweepConfig::default()
    };
    let report = verify_family(&fam, &cfg)?;
    let mut text =
        serde_json::to_string_pretty(&report).map_err(|e| Failure::Compute(e.to_string()))?;
    text.push('\n');
    emit(args.out.as_deref(), &text)?;
    Ok(report.passed())
}

fn cmd_figure(args: &FigureArgs) -> Result<(), Failure> {
    if args.grid < 17 || args.grid.is_multiple_of(2) {
        return Err(Failure::Usage(format!(
            "--grid {} must be odd and at least 17",
            args.grid
        )));
    }
    fs::create_dir_all(&args.out).map_err(|e| io_failure(&args.out, e))?;
    let fam = Family::standard(2, 1)?;
    type Panel<'a> = (&'a str, &'a dyn Fn(&[f64]) -> f64);
    let panels: [Panel; 4] = [
        ("vfig.csv", &|x| fam.v(x)),
        ("ufig.csv", &|x| fam.u(x)),
        ("vsubufig.csv", &|x| fam.diff(x)),
        ("phasefig.csv", &|x| fam.f_value(x)),
    ];
    for (name, field) in panels {
        let grid = Grid2D::from_fn(args.grid, |x, y| field(&[x, y]))?;
        write_file(&args.out.join(name), &grid.to_csv())?;
    }
    Ok(())
}

fn cmd_delta(args: &DeltaArgs) -> Result<(), Failure> {
    if args.caps.is_empty() {
        return Err(Failure::Usage("--caps must list at least one value".into()));
    }
    let theta = Phase::new(args.theta, args.n)?;
    let mut out = String::from("n,theta,tau,cap,resolution,delta,status\n");
    for &cap in &args.caps {
        let result = DeltaQuery::new(theta, args.tau, cap, args.resolution).and_then(|q| delta(&q));
        let (value, status) = match result {
            Ok(d) => (format!("{d:?}"), "ok".to_string()),
            Err(e) => (String::new(), e.to_string().replace(',', ";")),
        };
        writeln!(
            out,
            "{},{:?},{:?},{:?},{},{value},{status}",
            args.n, args.theta, args.tau, cap, args.resolution
        )
        .unwrap();
    }
    emit(args.out.as_deref(), &out)
}

fn parse_problem(spec: &str) -> Result<Problem2D, Failure> {
    let bad = || {
        Failure::Usage(format!(
            "unknown problem {spec:?}; expected radial32, constant:<theta>, counterexample:<k> or affine:<a>,<b>,<c>"
        ))
    };
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    match (name, arg) {
        ("radial32", "") => Ok(Problem2D::radial()),
        ("constant", a) => Ok(Problem2D::constant(a.parse().map_err(|_| bad())?)?),
        ("counterexample", a) => Ok(Problem2D::counterexample(a.parse().map_err(|_| bad())?)?),
        ("affine", a) => {
            let c: Vec<f64> = a
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            match c[..] {
                [a, b, c] => Ok(Problem2D::affine(a, b, c)),
                _ => Err(bad()),
            }
        }
        _ => Err(bad()),
    }
}

/// Returns whether the solve converged.
fn cmd_solve(args: &SolveArgs) -> Result<bool, Failure> {
    let prob = parse_problem(&args.problem)?;
    if args.m < 5 || args.m.is_multiple_of(2) {
        return Err(Failure::Usage(format!(
            "--m {} must be odd and at least 5",
            args.m
        )));
    }
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(Failure::Usage(format!(
            "--tol {} must be positive",
            args.tol
        )));
    }
    fs::create_dir_all(&args.out).map_err(|e| io_failure(&args.out, e))?;
    let s = solve(&prob, args.m, &StencilSet::wide(), args.tol, args.max_iters)?;
    write_file(&args.out.join("solution.csv"), &s.grid.to_csv())?;
    let mut log = String::from("iter,residual\n");
    for (i, r) in s.history.iter().enumerate() {
        writeln!(log, "{i},{r:?}").unwrap();
    }
    write_file(&args.out.join("convergence.csv"), &log)?;
    let error = prob.exact().map(|e| s.grid.sup_error(e));
    let summary = json!({
        "problem": args.problem,
        "m": args.m,
        "tol": args.tol,
        "iterations": s.iterations,
        "residual": s.residual,
        "converged": s.converged,
        "sup_error": error,
    });
    println!("{summary}");
    Ok(s.converged)
}

fn cmd_operator(args: &OperatorArgs) -> Result<(), Failure> {
    let text = fs::read_to_string(&args.matrix).map_err(|e| io_failure(&args.matrix, e))?;
    let x = SymMatrix::from_csv(&text)?;
    let spectrum = eigenvalues(&x)?;
    let phase = operator(&x)?;
    println!(
        "{}",
        json!({
            "n": x.n(),
            "eigenvalues": spectrum.values(),
            "phase": phase.value(),
        })
    );
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Figure(a) => cmd_figure(a).map(|_| true),
        Command::Delta(a) => cmd_delta(a).map(|_| true),
        Command::Solve(a) => cmd_solve(a),
        Command::Operator(a) => cmd_operator(a).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
