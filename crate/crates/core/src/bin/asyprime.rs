use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use asyprime::harness::{emit_report, exit_code, fixture_paths, load_fixture, run_experiment, Command, Format, Report, RunOptions};
use asyprime::par::ExecMode;
use asyprime::AlgebraError;

#[derive(Parser, Debug)]
#[command(name = "asyprime", version, about = "Ext over graded complete intersections: operators, associated primes, complexity")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Fixture file, or a directory of fixtures.
    #[arg(long, global = true)]
    fixture: Option<PathBuf>,
    #[arg(long, global = true)]
    imax: Option<usize>,
    #[arg(long, global = true)]
    nmax: Option<usize>,
    #[arg(long, global = true)]
    jmax: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for grid cells (1 runs sequentially).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized Gröbner self-check.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Gröbner bases of (f) and I + (f).
    Gb,
    /// Minimal resolution of M with its certificate.
    Resolve,
    /// Eisenbud operators, lift identity and commutation.
    Ops,
    /// Presentations of Ext^i(M, N).
    Ext,
    /// Associated primes over the (i, n) grid.
    AssScan,
    /// Complexity of M against N/I^j N.
    CxScan,
    /// Every check, compared with the fixture oracles.
    Verify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Gb => Command::Gb,
            Cmd::Resolve => Command::Resolve,
            Cmd::Ops => Command::Ops,
            Cmd::Ext => Command::Ext,
            Cmd::AssScan => Command::AssScan,
            Cmd::CxScan => Command::CxScan,
            Cmd::Verify => Command::Verify,
        }
    }
}

fn run(cli: &Cli) -> Result<Vec<Report>, (u8, AlgebraError)> {
    let path = cli.fixture.clone().ok_or((
        2,
        AlgebraError::Validation("--fixture is required".into()),
    ))?;
    let paths = fixture_paths(&path).map_err(|e| (2, e))?;
    let fixtures = paths
        .iter()
        .map(|p| load_fixture(p).map_err(|e| (2, AlgebraError::Validation(format!("{}: {e}", p.display())))))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = RunOptions {
        imax: cli.imax,
        nmax: cli.nmax,
        jmax: cli.jmax,
        seed: cli.seed,
        mode: if cli.threads == Some(1) {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        },
    };
    let command = Command::from(cli.command);
    fixtures
        .iter()
        .map(|fx| {
            run_experiment(fx, command, &opts).map_err(|e| {
                let code = if matches!(e, AlgebraError::LiftFailure(_)) { 1 } else { 2 };
                (code, e)
            })
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn with_threads(cli: &Cli) -> Result<Vec<Report>, (u8, AlgebraError)> {
    match cli.threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(cli)),
            Err(e) => Err((2, AlgebraError::Validation(format!("thread pool: {e}")))),
        },
        _ => run(cli),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_threads(cli: &Cli) -> Result<Vec<Report>, (u8, AlgebraError)> {
    run(cli)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_threads(&cli);
    match result {
        Ok(reports) => {
            let bytes = match emit_report(&reports, cli.format) {
                Ok(b) => b,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let mut out = std::io::stdout().lock();
            if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(exit_code(&reports) as u8)
        }
        Err((code, e)) => {
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
