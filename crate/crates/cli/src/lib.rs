//! Command-line front end for `apclab-core`.
//!
//! Exit codes: 0 success or agreement, 1 mismatch (or a positivity witness
//! where nonpositivity was claimed), 2 usage or I/O error, 3 budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

pub mod commands;
pub mod json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Overrides the default worker count when `--threads` is not given.
pub const THREADS_ENV: &str = "APCLAB_THREADS";

#[derive(Parser, Debug, Clone, PartialEq, Eq)]
#[command(name = "apclab", version, about = "Almost-positive-curvature checks for cohomogeneity-two Eschenburg spaces")]
pub struct RunConfig {
    /// Write the report to this file instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, PartialEq, Eq)]
pub struct TripleArgs {
    #[arg(value_parser = parse_int, allow_negative_numbers = true)]
    pub p: BigInt,
    #[arg(value_parser = parse_int, allow_negative_numbers = true)]
    pub q1: BigInt,
    #[arg(value_parser = parse_int, allow_negative_numbers = true)]
    pub q2: BigInt,
}

impl TripleArgs {
    pub fn triple(&self) -> apclab_core::eschenburg::Triple {
        apclab_core::eschenburg::Triple { p: self.p.clone(), q1: self.q1.clone(), q2: self.q2.clone() }
    }
}

#[derive(Args, Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetArgs {
    /// Maximum subdivision depth of the sign decision.
    #[arg(long, default_value_t = 24, value_parser = clap::value_parser!(u32).range(1..=64))]
    pub budget: u32,
}

#[derive(Args, Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreadArgs {
    /// Worker threads (default: $APCLAB_THREADS, else available parallelism).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=1024))]
    pub threads: Option<u32>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Theorem,
    Poly,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Jsonl,
    Csv,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Classify one triple by the closed-form theorem, the polynomial criterion, or both.
    Classify {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Emit the sign certificate of f on the unit square as JSON.
    Certify {
        #[command(flatten)]
        triple: TripleArgs,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Compare both classifications on every admissible triple up to a bound.
    Scan {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(i64).range(1..=40))]
        bound: i64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        threads: ThreadArgs,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Dimension and the order of H^{2n} for the space of dimension 4n-1.
    Invariants {
        #[arg(value_parser = clap::value_parser!(u32).range(2..=100_000))]
        n: u32,
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        json: bool,
    },
    /// Strong-inhomogeneity certificate, or a bounded homogeneous search.
    Inhom {
        #[arg(value_parser = clap::value_parser!(u32).range(2..=100_000))]
        n: u32,
        #[command(flatten)]
        triple: TripleArgs,
        /// Search bound for homogeneous models when no obstruction applies.
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(0..=10_000))]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Triples (4k+1, 1, 1) whose ell is a prime congruent to 3 mod 4.
    InhomSearch {
        #[arg(long, value_parser = odd_dimension)]
        n: u32,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        count: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive search for free torus actions and their normal forms.
    TorusEnumerate {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(1..=12))]
        bound: i64,
        #[command(flatten)]
        threads: ThreadArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build zero-curvature planes on a grid and report their residuals.
    VerifyGeometry {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=200))]
        grid: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..=32))]
        n: u32,
        #[command(flatten)]
        threads: ThreadArgs,
        #[arg(long)]
        json: bool,
    },
    /// Re-solve the linear system at the quasi-positive frame A0.
    VerifyA0 {
        #[arg(long)]
        json: bool,
    },
    /// Print f and g for a triple.
    Poly {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long)]
        json: bool,
        /// Emit CSV samples of f on a (G+1) x (G+1) grid instead.
        #[arg(long, value_name = "G", value_parser = clap::value_parser!(u32).range(1..=2000))]
        dump_grid: Option<u32>,
    },
}

fn parse_int(s: &str) -> Result<BigInt, String> {
    s.parse::<BigInt>().map_err(|_| format!("{:?} is not an integer", s))
}

fn odd_dimension(s: &str) -> Result<u32, String> {
    let n: u32 = s.parse().map_err(|_| format!("{:?} is not a positive integer", s))?;
    if n < 3 || n % 2 == 0 || n > 100_001 {
        return Err(format!("n = {} must be odd and at least 3", n));
    }
    Ok(n)
}

/// Something that stops a command before it produces a report.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}", path = path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn code(&self) -> i32 {
        EXIT_USAGE
    }
}

/// What a command produced: the report body and its exit code. Notes go to
/// the diagnostic stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub code: i32,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn new(body: String, code: i32) -> Self {
        Outcome { body, code, notes: Vec::new() }
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

/// Worker count: the flag, then `$APCLAB_THREADS`, then available parallelism.
pub fn thread_count(flag: Option<u32>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return Ok(n as usize);
    }
    if let Ok(v) = std::env::var(THREADS_ENV) {
        return match v.trim().parse::<usize>() {
            Ok(n) if (1..=1024).contains(&n) => Ok(n),
            _ => Err(CliError::Usage(format!("{}={:?} is not a thread count in 1..=1024", THREADS_ENV, v))),
        };
    }
    Ok(std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn pool(threads: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {}", threads, e)))
}

/// Writes the report to `path`, or to `stdout` when no path is given.
pub fn emit_report(body: &str, path: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, body).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
        None => stdout
            .write_all(body.as_bytes())
            .and_then(|_| stdout.flush())
            .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source }),
    }
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    commands::dispatch(&cfg.command)
}

/// Parses `argv`, runs the command and writes its report. Returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let out = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "apclab: {}", e);
            return e.code();
        }
    };
    for n in &out.notes {
        let _ = writeln!(stderr, "{}", n);
    }
    if let Err(e) = emit_report(&out.body, cfg.output.as_deref(), stdout) {
        let _ = writeln!(stderr, "apclab: {}", e);
        return e.code();
    }
    out.code
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
