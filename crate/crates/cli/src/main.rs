//! `rtau`: command-line access to the rings `R_tau`.
//!
//! Exit status is 0 on success, 1 when the computation itself fails (a
//! non-member argument, division by zero, ...) and 2 for usage and parse
//! errors, which are reported before anything is computed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rtau::{Error, RingContext, TauSpec};

use commands::Output;

#[derive(Parser, Debug)]
#[command(
    name = "rtau",
    version,
    about = "Exact arithmetic in the quasi-Euclidean subrings R_tau of Q[x]"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// tau as inline JSON, e.g. '{"kind":"constant","value":0}'
    #[arg(long, global = true, conflicts_with = "tau_file")]
    tau: Option<String>,
    /// File holding the tau JSON
    #[arg(long, global = true)]
    tau_file: Option<PathBuf>,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the default tau (a digit stream) when no tau is given
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is the element in R_tau?
    Member {
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// q = p r + s with 0 <= s < |r|
    Divmod {
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(allow_hyphen_values = true)]
        r: String,
    },
    /// gcd with Bezout coefficients
    Gcd {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Quasi-Euclidean chain with the norm of every pair
    Chain {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = rtau::rtau::DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Rewrite a chain to positive quotients, showing every T1/T2 step
    Normalize(ChainArgs),
    /// Compare a chain's remainders with the quasi-Euclidean chain
    Compare(ChainArgs),
    /// Adversarial pair for k-stage chains and its degree retention report
    Adversary {
        /// Chain length k to defeat
        k: usize,
        #[arg(allow_hyphen_values = true)]
        b: String,
        /// Run the descent b_0 = x, b_(j+1) = r_l for this many steps instead
        #[arg(long, value_name = "STEPS")]
        descent: Option<usize>,
        /// JSON object mapping elements to norms, used by --descent
        #[arg(long, requires = "descent")]
        norms: Option<PathBuf>,
    },
    /// Primes and precisions at which h(tau_p) vanishes
    Scan {
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 50)]
        pmax: u64,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
    },
    /// Descending divisibility chain showing R_tau is not a UFD
    Witness {
        #[arg(allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 50)]
        pmax: u64,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = Strategy::Auto)]
        strategy: Strategy,
    },
    /// Digits of tau_p for small primes
    Tau {
        #[arg(long, default_value_t = 30)]
        pmax: u64,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
    },
}

#[derive(Args, Debug)]
struct ChainArgs {
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: String,
    /// Quotients q_1, ..., q_k; options must come before them, since
    /// negative quotients such as -2 are taken literally
    #[arg(required = true, allow_hyphen_values = true)]
    quotients: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Strategy {
    Auto,
    PrimePower,
    DistinctPrimes,
}

impl From<Strategy> for rtau::WitnessStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Auto => Self::Auto,
            Strategy::PrimePower => Self::PrimePower,
            Strategy::DistinctPrimes => Self::DistinctPrimes,
        }
    }
}

/// Failures, split by exit status.
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidTau(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

fn load_tau(g: &Global) -> Result<TauSpec, Failure> {
    if let Some(path) = &g.tau_file {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        return Ok(TauSpec::from_json(&s)?);
    }
    Ok(match (&g.tau, g.seed) {
        (Some(s), _) => TauSpec::from_json(s)?,
        (None, Some(seed)) => TauSpec::stream(seed),
        (None, None) => TauSpec::zero(),
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ctx = RingContext::new(load_tau(&cli.global)?);
    commands::dispatch(&ctx, &cli.command)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.global.json;
    match run(&cli) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("output serializes")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (2, "usage", m),
                Failure::Domain(e) => (1, "domain", e.to_string()),
            };
            if json {
                println!("{}", serde_json::json!({ "error": msg, "kind": kind }));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
