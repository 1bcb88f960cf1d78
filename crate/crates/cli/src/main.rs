//! `tetragauge`: runs the verification suites and prints a JSON report.

mod checks;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use tetragauge::{make_field, DerivativeMode, FieldKind};

use report::Report;

/// Seed used when neither `--seed` nor `TETRAGAUGE_SEED` is given.
const DEFAULT_SEED: u64 = 20240601;

const FIELD_HELP: &str = "\
Field specs: name[:key=value[,key=value]*]
  minkowski              identity frame
  schwarzschild[:m=M]    static exterior frame, default m=1, points at r in [3m, 10m]
  conformal[:a=A]        (1 + A x^1) times the identity, default a=0.1; admissible, not vacuum

Exit codes: 0 all checks ok, 1 a check failed, 2 usage error.";

#[derive(Debug, Parser)]
#[command(name = "tetragauge", version, about = "Numerical checks for tetrad gravity as an SO(1,3) gauge theory", after_help = FIELD_HELP)]
struct Cli {
    /// Seed for all random draws.
    #[arg(long, global = true, env = "TETRAGAUGE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Number of random trials for randomized checks.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,

    /// Print only the summary line instead of the JSON report.
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exhaustive permutation-symbol, pair-index and structure-constant identities.
    Identities,
    /// Legendre regularity, immersion rank and Jacobian, H on the immersion,
    /// pull-back of the Hamiltonian form and Lorentz equivariance.
    Propositions,
    /// Admissibility and vacuum residuals of a catalog field at sampled points.
    #[command(after_help = FIELD_HELP)]
    CheckSolution {
        /// Field spec, e.g. `schwarzschild:m=1`.
        #[arg(long)]
        field: FieldKind,
        /// Number of sample points.
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        points: u64,
        /// Use five-point finite differences with this step instead of
        /// closed-form derivatives.
        #[arg(long, value_name = "H")]
        fd: Option<f64>,
        /// The vacuum checks are expected to fail (negative control).
        #[arg(long)]
        expect_fail: bool,
    },
    /// Legendre and inverse Legendre round trips, and the Hamiltonian gradient.
    LegendreRoundtrip,
    /// Closed-form Lagrangian against its Legendre evaluation and gradient.
    LagrangianConsistency,
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (name, trials, field, checks) = match cli.command {
        Command::Identities => ("identities", 0, None, checks::identities()),
        Command::Propositions => ("propositions", cli.trials, None, checks::propositions(cli.seed, cli.trials)),
        Command::LegendreRoundtrip => {
            ("legendre-roundtrip", cli.trials, None, checks::legendre_roundtrip(cli.seed, cli.trials))
        }
        Command::LagrangianConsistency => {
            ("lagrangian-consistency", cli.trials, None, checks::lagrangian_consistency(cli.seed, cli.trials))
        }
        Command::CheckSolution { field, points, fd, expect_fail } => {
            let mode = match fd {
                Some(step) => DerivativeMode::FiniteDifference { step },
                None => DerivativeMode::Analytic,
            };
            let f = match make_field(field, mode) {
                Ok(f) => f,
                Err(err) => return usage_error(err),
            };
            let checks = match checks::check_solution(&f, cli.seed, points, expect_fail) {
                Ok(c) => c,
                Err(err) => return usage_error(err),
            };
            ("check-solution", points, Some(field.to_string()), checks)
        }
    };
    let report = Report {
        command: name.to_string(),
        seed: cli.seed,
        trials,
        field,
        checks,
        runtime_ms: start.elapsed().as_millis() as u64,
    };
    if cli.quiet {
        println!("{}", report.summary());
    } else {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
