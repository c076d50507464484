//! JSON front end for capacity computation, antenna selection, bound
//! verification, identity sweeps, and tightness probes.
//!
//! Results go to stdout as a single JSON document; progress and errors go to
//! stderr. Exit codes: 0 success (and all checks passed), 1 a bound or
//! identity was violated, 2 invalid input, 3 a work cap was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mimo_select::identity::{run_identity, IdentityConfig, KSpec};
use mimo_select::tight::{run_tight, TightCase, TightConfig};
use mimo_select::verify::{run_verify, VerifyConfig};
use mimo_select::{exit_code_for_error, EXIT_INVALID, EXIT_OK, EXIT_VIOLATION, SCHEMA_VERSION};
use mimo_select_core::io::load_channel;
use mimo_select_core::selection::{
    exhaustive_best, greedy_prune, theorem1_bound, theorem2_bound, BoundReport, Method, PruneOrder,
    SelectionResult, Theorem, DEFAULT_ENUMERATION_CAP,
};
use mimo_select_core::{CapacityReport, Error};

#[derive(Parser)]
#[command(
    name = "mimo-select",
    version,
    about = "MIMO antenna selection: capacity, subset search, and bound verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Capacity of a channel file at a given power.
    Capacity {
        /// Channel file (.json, or .csv for the CSV layout).
        #[arg(long)]
        channel: PathBuf,
        /// Transmit power; defaults to the file's power_hint.
        #[arg(long)]
        power: Option<f64>,
    },
    /// Best antenna subsets of the given sizes.
    Select {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        power: Option<f64>,
        /// Number of transmit antennas to keep.
        #[arg(long)]
        kt: usize,
        /// Number of receive antennas to keep.
        #[arg(long)]
        kr: usize,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Greedy pruning order.
        #[arg(long, value_enum, default_value_t = OrderArg::RxFirst)]
        order: OrderArg,
        /// Cap on exhaustive subset pairs.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
    /// Check a capacity bound over an ensemble of seeded random channels.
    Verify {
        /// Which bound: 1 (multiplicative) or 2 (additive gap).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long)]
        trials: u64,
        /// Largest channel dimension (inclusive).
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Comma-separated power values.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.01, 1.0, 100.0])]
        powers: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::Exhaustive)]
        method: MethodArg,
    },
    /// Check characteristic-polynomial identities on random Gram forms.
    Identity {
        /// Matrix dimension, 2 through 8.
        #[arg(long)]
        n: usize,
        /// Subset size, or 'all' for every valid k.
        #[arg(long, default_value = "all")]
        k: String,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relative tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Evaluate bound tightness on a structured channel.
    Tight {
        #[arg(long, value_enum)]
        case: CaseArg,
        /// Dimensions as <n_t>x<n_r>, e.g. 3x3.
        #[arg(long)]
        dims: String,
        #[arg(long)]
        kt: usize,
        #[arg(long)]
        kr: usize,
        #[arg(long)]
        power: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Greedy,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Exhaustive => Method::Exhaustive,
            MethodArg::Greedy => Method::Greedy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    RxFirst,
    TxFirst,
}

impl From<OrderArg> for PruneOrder {
    fn from(o: OrderArg) -> PruneOrder {
        match o {
            OrderArg::RxFirst => PruneOrder::RxFirst,
            OrderArg::TxFirst => PruneOrder::TxFirst,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    AllOnes,
    Parallel,
}

#[derive(Serialize)]
struct CapacityOutput {
    schema_version: u32,
    #[serde(flatten)]
    report: CapacityReport,
}

#[derive(Serialize)]
struct SelectOutput {
    schema_version: u32,
    #[serde(flatten)]
    result: SelectionResult,
    bounds: [BoundReport; 2],
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_thread_pool() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    match run(cli.command) {
        Ok((json, code)) => {
            println!("{json}");
            ExitCode::from(code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for_error(&err) as u8)
        }
    }
}

/// Honors MIMO_SELECT_THREADS as a cap on worker threads.
fn init_thread_pool() -> Result<(), String> {
    let Ok(raw) = std::env::var("MIMO_SELECT_THREADS") else {
        return Ok(());
    };
    let threads: usize =
        raw.parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
            format!("MIMO_SELECT_THREADS must be a positive integer, got '{raw}'")
        })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| format!("cannot configure thread pool: {e}"))
}

fn run(command: Command) -> Result<(String, i32), Error> {
    match command {
        Command::Capacity { channel, power } => {
            let loaded = load_channel(&channel)?;
            let power = resolve_power(power, loaded.power_hint)?;
            let report = loaded.channel.capacity(power)?;
            let out = CapacityOutput {
                schema_version: SCHEMA_VERSION,
                report,
            };
            Ok((to_json(&out)?, EXIT_OK))
        }
        Command::Select {
            channel,
            power,
            kt,
            kr,
            method,
            order,
            cap,
        } => {
            let loaded = load_channel(&channel)?;
            let power = resolve_power(power, loaded.power_hint)?;
            let result = match Method::from(method) {
                Method::Exhaustive => exhaustive_best(&loaded.channel, power, kt, kr, cap)?,
                Method::Greedy => greedy_prune(&loaded.channel, power, kt, kr, order.into())?,
            };
            let bounds = [
                theorem1_bound(&loaded.channel, power, kt, kr, result.capacity_bits)?,
                theorem2_bound(&loaded.channel, power, kt, kr, result.capacity_bits)?,
            ];
            let out = SelectOutput {
                schema_version: SCHEMA_VERSION,
                result,
                bounds,
            };
            Ok((to_json(&out)?, EXIT_OK))
        }
        Command::Verify {
            theorem,
            trials,
            max_n,
            powers,
            seed,
            method,
        } => {
            let cfg = VerifyConfig {
                theorem: match theorem {
                    1 => Theorem::One,
                    _ => Theorem::Two,
                },
                method: method.into(),
                trials,
                max_n,
                powers,
                seed,
            };
            let run = run_verify(&cfg)?;
            let code = if run.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            eprintln!(
                "verify: min slack {:.6e} bits, {} failure(s)",
                run.min_slack_bits,
                run.failures.len()
            );
            Ok((to_json(&run)?, code))
        }
        Command::Identity {
            n,
            k,
            trials,
            seed,
            tol,
        } => {
            let cfg = IdentityConfig {
                n,
                k: k.parse::<KSpec>()?,
                trials,
                seed,
                tolerance: tol,
            };
            let run = run_identity(&cfg)?;
            let code = if run.all_passed {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            };
            Ok((to_json(&run)?, code))
        }
        Command::Tight {
            case,
            dims,
            kt,
            kr,
            power,
        } => {
            let (n_t, n_r) = parse_dims(&dims)?;
            let cfg = TightConfig {
                case: match case {
                    CaseArg::AllOnes => TightCase::AllOnesLowSnr,
                    CaseArg::Parallel => TightCase::Parallel,
                },
                n_t,
                n_r,
                k_t: kt,
                k_r: kr,
                power,
            };
            Ok((to_json(&run_tight(&cfg)?)?, EXIT_OK))
        }
    }
}

fn resolve_power(cli_power: Option<f64>, hint: Option<f64>) -> Result<f64, Error> {
    cli_power.or(hint).ok_or_else(|| {
        Error::invalid("no power given: pass --power or store a power_hint in the channel file")
    })
}

fn parse_dims(dims: &str) -> Result<(usize, usize), Error> {
    let err = || {
        Error::invalid(format!(
            "dims must look like <n_t>x<n_r>, e.g. 3x3, got '{dims}'"
        ))
    };
    let (t, r) = dims.split_once(['x', 'X']).ok_or_else(err)?;
    let n_t: usize = t.trim().parse().map_err(|_| err())?;
    let n_r: usize = r.trim().parse().map_err(|_| err())?;
    Ok((n_t, n_r))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value)
        .map_err(|e| Error::invalid(format!("cannot serialize output: {e}")))
}
