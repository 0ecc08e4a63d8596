//! Command-line front end: argument types, command implementations and the
//! verification suites behind `riesz verify`.

mod commands;
pub mod suite;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use riesz_core::complex::parse_complex;
use riesz_core::energy::Method;
use riesz_core::PrecisionConfig;

pub use suite::{Suite, SuiteOptions};

#[derive(Debug, Parser)]
#[command(
    name = "riesz",
    version,
    about = "Riesz s-energy of the N-th roots of unity",
    after_help = "Complex values of s are written a, a+bi or a-bi with no spaces, e.g. 0.5+1.3i.\n\
                  Exit codes: 0 success, 1 verification failure, 2 parse error, 3 domain or configuration error."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Significant digits: 15 selects double precision, 50 or more the extended backend
    #[arg(long, global = true, env = "RIESZ_PRECISION", default_value_t = 15)]
    pub precision: u32,
    /// Expansion order
    #[arg(long, global = true)]
    pub p: Option<usize>,
    /// Largest coefficient index (series terms, table rows, audited indices)
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for the randomized checks; recorded in reports
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the payload here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate L_s(N)
    Energy {
        #[arg(long, value_parser = parse_s, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long = "N")]
        n: u64,
        /// Defaults to log for s = 0 and direct otherwise
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Exact alpha_n(s) table, or c_n(s) at a given s
    Coeffs {
        #[arg(long, value_parser = parse_s, allow_hyphen_values = true)]
        s: Option<Complex64>,
        /// At odd s = 2M+1, report the logarithmic term instead of failing at n = M
        #[arg(long)]
        exceptional: bool,
    },
    /// Run a verification suite and emit a JSON report
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, value_parser = parse_s, allow_hyphen_values = true)]
        s: Option<Complex64>,
        #[arg(long = "N")]
        n: Option<u64>,
        /// Perturbations per optimality case
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Direct vs asymptotic values over a grid of s and N (CSV by default)
    Table {
        #[arg(long, value_parser = parse_s, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        s: Vec<Complex64>,
        #[arg(long = "N", value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Series,
    Asymptotic,
    Log,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Series => Method::Series,
            MethodArg::Asymptotic => Method::Asymptotic,
            MethodArg::Log => Method::Log,
        }
    }
}

fn parse_s(text: &str) -> Result<Complex64, String> {
    parse_complex(text)
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(riesz_core::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) | CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<riesz_core::Error> for CliError {
    fn from(e: riesz_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Rendered payload and the exit code to finish with.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub payload: String,
    pub exit_code: u8,
}

impl Outcome {
    fn ok(payload: String) -> Self {
        Outcome { payload, exit_code: 0 }
    }

    pub fn emit(&self, out: Option<&Path>) -> std::io::Result<()> {
        match out {
            Some(path) => std::fs::write(path, &self.payload),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(self.payload.as_bytes())?;
                stdout.flush()
            }
        }
    }
}

/// Extended configuration for `digits`, or `None` for double precision.
pub fn precision_config(digits: u32) -> CliResult<Option<PrecisionConfig>> {
    if digits == riesz_core::config::DOUBLE_DIGITS {
        return Ok(None);
    }
    let cfg = PrecisionConfig::extended(digits);
    cfg.validate()?;
    Ok(Some(cfg))
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Energy { s, n, method } => {
            let method = method.map(Method::from).unwrap_or(if *s == Complex64::new(0.0, 0.0) {
                Method::Log
            } else {
                Method::Direct
            });
            commands::energy(g, *s, *n, method).map(Outcome::ok)
        }
        Command::Coeffs { s, exceptional } => commands::coeffs(g, *s, *exceptional).map(Outcome::ok),
        Command::Verify { suite, s, n, trials } => {
            let opts = SuiteOptions {
                precision: g.precision,
                seed: g.seed,
                s: *s,
                n: *n,
                p: g.p,
                n_max: g.n_max,
                trials: *trials,
            };
            let report = suite::run_suite(*suite, &opts)?;
            let payload = commands::render_report(&report, g.format.unwrap_or(Format::Json));
            Ok(Outcome { payload, exit_code: if report.all_passed() { 0 } else { 1 } })
        }
        Command::Table { s, n } => {
            if s.is_empty() || n.is_empty() {
                return Err(CliError::Usage("table needs at least one value of s and of N".into()));
            }
            commands::table(g, s, n).map(Outcome::ok)
        }
    }
}
