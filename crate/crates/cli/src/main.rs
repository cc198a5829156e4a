//! Command-line front end: seeded, thread-count-independent sweeps over the
//! simulator, emitting CSV and JSON artifacts.

mod commands;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use tfgkp::decoder::MapMode;
use tfgkp::grid::MarginalAxis;

use commands::{FeasibilityInputs, MapSpec, WignerArgs};
use parse::{parse_complex_list, parse_grid, Range};

/// Environment variable overriding the default worker-thread count.
const THREADS_ENV: &str = "TFGKP_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, malformed files, violated preconditions → exit 2.
    #[error("{0}")]
    Usage(String),
    /// Internal numeric failure → exit 3.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn numeric(msg: impl Into<String>) -> Self {
        CliError::Numeric(msg.into())
    }
}

impl From<tfgkp::Error> for CliError {
    fn from(e: tfgkp::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "tfgkp",
    version,
    about = "Time-frequency GKP qubit simulator",
    long_about = "Simulates comb-referenced time-frequency GKP logical qubits: \
failure-probability maps under Gaussian displacement noise, Monte Carlo \
estimates, Wigner functions of finite-energy grid states, repeated \
syndrome-correction cycles, and hardware feasibility arithmetic. All widths \
and displacements are dimensionless (units of the comb repetition period and \
its inverse); all randomness is seeded and reproducible at any thread count."
)]
struct Cli {
    /// Worker threads (default: TFGKP_THREADS or all cores). Results do not
    /// depend on this value.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the logical failure probability over channel-width axes (CSV).
    FailureMap(FailureMapCmd),
    /// Monte Carlo failure-probability estimate for one channel (JSON).
    McFailure(McFailureCmd),
    /// Evaluate a grid-state Wigner function or marginal on a grid (CSV).
    Wigner(WignerCmd),
    /// Simulate repeated syndrome-correction cycles (CSV).
    Cycles(CyclesCmd),
    /// Physical-unit lattice scales, noise mapping, and margin checks (JSON).
    Feasibility(FeasibilityCmd),
    /// Normalize driven-supermode coupling weights (JSON).
    Supermode(SupermodeCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Analytic,
    Mc,
}

#[derive(Args)]
struct FailureMapCmd {
    /// sigma_tau sweep, start:stop:count (dimensionless widths)
    #[arg(long, conflicts_with = "anisotropy")]
    sigma_tau: Option<String>,
    /// sigma_omega sweep, start:stop:count
    #[arg(long)]
    sigma_omega: String,
    /// sweep the line sigma_tau = FACTOR * sigma_omega instead of a 2-D map
    #[arg(long, value_name = "FACTOR")]
    anisotropy: Option<f64>,
    #[arg(long, value_enum, default_value = "analytic")]
    mode: Mode,
    /// Monte Carlo trials per cell (mc mode)
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct McFailureCmd {
    /// channel width along tau (dimensionless)
    #[arg(long)]
    sigma_tau: f64,
    /// channel width along omega (dimensionless)
    #[arg(long)]
    sigma_omega: f64,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// output JSON path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WignerCmd {
    /// logical basis state
    #[arg(long, default_value_t = 0)]
    state: u8,
    /// peak width in tau (dimensionless; default 0.2*sqrt(pi))
    #[arg(long)]
    sigma_tau: Option<f64>,
    /// peak width in omega (dimensionless; default 0.2*sqrt(pi))
    #[arg(long)]
    sigma_omega: Option<f64>,
    #[arg(long, default_value_t = tfgkp::grid::DEFAULT_N_PEAKS)]
    n_peaks: usize,
    /// evaluation grid tmin:tmax:n,omin:omax:n (for --marginal: min:max:n)
    #[arg(long, allow_hyphen_values = true)]
    grid: String,
    /// emit a 1-D marginal density instead of the 2-D Wigner grid
    #[arg(long, value_enum)]
    marginal: Option<MarginalFlag>,
    /// output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum MarginalFlag {
    Tau,
    Omega,
}

#[derive(Args)]
struct CyclesCmd {
    /// channel width along tau (dimensionless)
    #[arg(long)]
    sigma_tau: f64,
    /// channel width along omega (dimensionless)
    #[arg(long)]
    sigma_omega: f64,
    /// ancilla measurement width in tau (default: the channel width)
    #[arg(long)]
    anc_sigma_tau: Option<f64>,
    /// ancilla measurement width in omega (default: the channel width)
    #[arg(long)]
    anc_sigma_omega: Option<f64>,
    #[arg(long, default_value_t = 25)]
    cycles: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// also tabulate the uncorrected accumulation baseline
    #[arg(long)]
    uncorrected: bool,
    /// output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FeasibilityCmd {
    /// comb repetition rate in Hz
    #[arg(long)]
    frep_hz: f64,
    /// carrier-envelope offset frequency in Hz (provenance only)
    #[arg(long, default_value_t = 0.0)]
    fceo_hz: f64,
    /// lab noise-budget JSON file
    #[arg(long)]
    budget: Option<PathBuf>,
    /// control resolution along tau (dimensionless)
    #[arg(long)]
    res_tau: Option<f64>,
    /// control resolution along omega (dimensionless)
    #[arg(long)]
    res_omega: Option<f64>,
    /// margin factor for the resolution check
    #[arg(long, default_value_t = 10.0)]
    margin: f64,
    /// available control bandwidth in Hz
    #[arg(long)]
    f_ctrl_hz: Option<f64>,
    /// intended operation rate in Hz
    #[arg(long)]
    f_op_hz: Option<f64>,
    /// actuator model kind[:corner_hz:order]; repeatable (pzt, aom, eom)
    #[arg(long = "actuator")]
    actuators: Vec<String>,
    /// output JSON path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SupermodeCmd {
    /// comma-separated complex couplings, e.g. "3,4" or "1,i,0.5-0.25i"
    #[arg(long, allow_hyphen_values = true)]
    g: String,
    /// output JSON path (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn resolve_threads(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        if n == 0 {
            return Err(CliError::usage("--threads must be >= 1"));
        }
        return Ok(n);
    }
    match std::env::var(THREADS_ENV) {
        Ok(text) => {
            let n: usize = text.trim().parse().map_err(|_| {
                CliError::usage(format!(
                    "bad {THREADS_ENV} value '{text}' (want an integer >= 1)"
                ))
            })?;
            if n == 0 {
                return Err(CliError::usage(format!("{THREADS_ENV} must be >= 1")));
            }
            Ok(n)
        }
        Err(_) => Ok(std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::FailureMap(cmd) => {
            let mode = match cmd.mode {
                Mode::Analytic => MapMode::Analytic,
                Mode::Mc => MapMode::MonteCarlo {
                    trials: cmd.trials,
                    seed: cmd.seed,
                },
            };
            let omega = Range::parse(&cmd.sigma_omega)?;
            let spec = match cmd.anisotropy {
                Some(factor) => MapSpec::Anisotropy { omega, factor },
                None => {
                    let tau_text = cmd.sigma_tau.ok_or_else(|| {
                        CliError::usage("--sigma-tau is required without --anisotropy")
                    })?;
                    MapSpec::Axes {
                        tau: Range::parse(&tau_text)?,
                        omega,
                    }
                }
            };
            commands::cmd_failure_map(spec, mode, &cmd.out)
        }
        Command::McFailure(cmd) => commands::cmd_mc_failure(
            cmd.sigma_tau,
            cmd.sigma_omega,
            cmd.trials,
            cmd.seed,
            cmd.out.as_deref(),
        ),
        Command::Wigner(cmd) => {
            let args = WignerArgs {
                state: cmd.state,
                sigma_tau: cmd
                    .sigma_tau
                    .unwrap_or_else(tfgkp::grid::default_peak_width),
                sigma_omega: cmd
                    .sigma_omega
                    .unwrap_or_else(tfgkp::grid::default_peak_width),
                n_peaks: cmd.n_peaks,
            };
            match cmd.marginal {
                None => {
                    let (tau, omega) = parse_grid(&cmd.grid)?;
                    commands::cmd_wigner(&args, tau, omega, &cmd.out)
                }
                Some(flag) => {
                    let axis = match flag {
                        MarginalFlag::Tau => MarginalAxis::Tau,
                        MarginalFlag::Omega => MarginalAxis::Omega,
                    };
                    commands::cmd_wigner_marginal(&args, axis, Range::parse(&cmd.grid)?, &cmd.out)
                }
            }
        }
        Command::Cycles(cmd) => commands::cmd_cycles(
            cmd.sigma_tau,
            cmd.sigma_omega,
            cmd.anc_sigma_tau,
            cmd.anc_sigma_omega,
            cmd.cycles,
            cmd.trials,
            cmd.seed,
            cmd.uncorrected,
            &cmd.out,
        ),
        Command::Feasibility(cmd) => {
            let actuators = cmd
                .actuators
                .iter()
                .map(|text| commands::parse_actuator(text))
                .collect::<Result<Vec<_>, _>>()?;
            commands::cmd_feasibility(
                &FeasibilityInputs {
                    f_rep_hz: cmd.frep_hz,
                    f_ceo_hz: cmd.fceo_hz,
                    budget_path: cmd.budget,
                    res_tau: cmd.res_tau,
                    res_omega: cmd.res_omega,
                    margin: cmd.margin,
                    f_ctrl_hz: cmd.f_ctrl_hz,
                    f_op_hz: cmd.f_op_hz,
                    actuators,
                },
                cmd.out.as_deref(),
            )
        }
        Command::Supermode(cmd) => {
            commands::cmd_supermode(&parse_complex_list(&cmd.g)?, cmd.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = match resolve_threads(cli.threads) {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot build thread pool: {e}");
            return ExitCode::from(3);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
