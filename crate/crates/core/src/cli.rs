//! The `qt` command-line front end.
//!
//! Exit codes: 0 success, 1 malformed arguments or input files, 2 a `verify`
//! invariant failed, 3 a register exceeded the size cap.

use crate::analysis::{cost_of, cost_table, CostRow};
use crate::cat::CatState;
use crate::error::{Error, Result};
use crate::io::{self, ProtocolReport};
use crate::protocols::{Protocol, ProtocolKind, ProtocolSpec};
use crate::register::DEFAULT_MAX_DIM;
use crate::verify::{run_suites, VerifyReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Parser)]
#[command(
    name = "qt",
    about = "Teleportation of multi-particle qudit cat states"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample one measurement outcome and report Bob's corrected state.
    Run(ProtocolArgs),
    /// List every measurement outcome with its branch and correction.
    Enumerate(ProtocolArgs),
    /// Run the invariant suites on random cats.
    Verify(VerifyArgs),
    /// Tabulate classical communication cost.
    Cost(CostArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for outcome enumeration (output is identical for any value).
    #[arg(long)]
    threads: Option<usize>,
    /// Cap on the amplitude count of the joint register.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
}

#[derive(Debug, Args)]
struct ProtocolArgs {
    #[arg(long, value_parser = parse_kind, default_value = "ghz")]
    protocol: ProtocolKind,
    /// Local dimension; taken from the coefficients file when omitted.
    #[arg(long)]
    d: Option<usize>,
    /// Number of cat particles; taken from the coefficients file when omitted.
    #[arg(long)]
    m: Option<usize>,
    /// Hybrid protocol parameter, 2 <= k <= M+1.
    #[arg(long)]
    k: Option<usize>,
    /// JSON file {"d": .., "m": .., "coeffs": [[re, im], ...]}; a random cat is used otherwise.
    #[arg(long)]
    coeffs_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    m: usize,
    /// Number of random cats (seeds 0..N).
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CostArgs {
    /// Local dimension or inclusive range `lo..hi`.
    #[arg(long)]
    d: IntRange,
    /// Particle count or inclusive range `lo..hi`.
    #[arg(long)]
    m: IntRange,
    /// Restrict to one protocol.
    #[arg(long, value_parser = parse_kind)]
    protocol: Option<ProtocolKind>,
    /// With --protocol hybrid, a single k.
    #[arg(long)]
    k: Option<usize>,
    /// Emit the hybrid family k = 2..M+1.
    #[arg(long)]
    hybrids: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct IntRange {
    lo: usize,
    hi: usize,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Self { lo, hi })
    }
}

fn parse_kind(s: &str) -> std::result::Result<ProtocolKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Violations(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Violations(msg)) => {
            eprintln!("{msg}");
            2
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            if e.is_size() {
                3
            } else {
                1
            }
        }
    }
}

fn execute(cli: Cli) -> std::result::Result<(), Failure> {
    let threads = match &cli.command {
        Command::Run(a) | Command::Enumerate(a) => a.common.threads,
        Command::Verify(a) => a.common.threads,
        Command::Cost(a) => a.common.threads,
    };
    match threads {
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            pool.install(|| dispatch(cli.command))
        }
        None => dispatch(cli.command),
    }
}

fn dispatch(command: Command) -> std::result::Result<(), Failure> {
    match command {
        Command::Run(a) => protocol_command(a, true),
        Command::Enumerate(a) => protocol_command(a, false),
        Command::Verify(a) => verify_command(a),
        Command::Cost(a) => cost_command(a),
    }
}

fn protocol_command(args: ProtocolArgs, sample: bool) -> std::result::Result<(), Failure> {
    let file_cat = args.coeffs_file.as_deref().map(io::load_cat).transpose()?;
    let (d, m) = match (&file_cat, args.d, args.m) {
        (Some(cat), d, m) => {
            if d.is_some_and(|d| d != cat.dim()) || m.is_some_and(|m| m != cat.particles()) {
                return Err(Failure::Usage(format!(
                    "--d/--m disagree with the coefficients file (d={}, m={})",
                    cat.dim(),
                    cat.particles()
                )));
            }
            (cat.dim(), cat.particles())
        }
        (None, Some(d), Some(m)) => (d, m),
        (None, _, _) => {
            return Err(Failure::Usage(
                "--d and --m are required without --coeffs-file".into(),
            ))
        }
    };
    let spec = ProtocolSpec::new(args.protocol, d, m, args.k)?.with_max_dim(args.common.max_dim);
    let cat = match file_cat {
        Some(cat) => cat,
        None => CatState::random(d, m, args.seed)?,
    };
    let protocol = Protocol::new(spec)?;
    let records = protocol.enumerate(&cat)?;
    let report = if sample {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(args.seed);
        let chosen = crate::protocols::sample(&records, &mut rng).clone();
        ProtocolReport::new(&spec, &cat, Some(args.seed), &[chosen], &records)
    } else {
        ProtocolReport::new(&spec, &cat, None, &records, &records)
    };
    let text = match args.common.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    emit(&text, &args.common)
}

fn verify_command(args: VerifyArgs) -> std::result::Result<(), Failure> {
    let report = run_suites(args.d, args.m, args.seeds, args.common.max_dim)?;
    let text = match args.common.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n",
        Format::Csv => verify_csv(&report)?,
    };
    emit(&text, &args.common)?;
    if report.passed {
        Ok(())
    } else {
        let failures = serde_json::to_string(&report.failures()).map_err(Error::from)?;
        Err(Failure::Violations(failures))
    }
}

fn verify_csv(report: &VerifyReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "passed", "checks", "worst", "tolerance"])?;
    for s in &report.suites {
        w.write_record([
            s.name.to_string(),
            s.passed.to_string(),
            s.checks.to_string(),
            s.worst.to_string(),
            s.tolerance.to_string(),
        ])?;
    }
    io::csv_string(w)
}

fn cost_command(args: CostArgs) -> std::result::Result<(), Failure> {
    let dims = args.d.lo..=args.d.hi;
    let particles = args.m.lo..=args.m.hi;
    let rows: Vec<CostRow> = match (args.protocol, args.hybrids) {
        (Some(kind), false) => {
            let mut rows = Vec::new();
            for d in dims {
                for m in particles.clone() {
                    let spec = ProtocolSpec::new(kind, d, m, args.k)?;
                    rows.push(cost_of(&spec));
                }
            }
            rows
        }
        (Some(ProtocolKind::Hybrid) | None, true) => cost_table(dims, particles, true)?
            .into_iter()
            .filter(|r| r.protocol == ProtocolKind::Hybrid)
            .collect(),
        (Some(_), true) => {
            return Err(Failure::Usage(
                "--hybrids cannot be combined with a non-hybrid --protocol".into(),
            ))
        }
        (None, false) => cost_table(dims, particles, false)?,
    };
    let text = match args.common.format.unwrap_or(Format::Csv) {
        Format::Json => io::cost_rows_json(&rows)?,
        Format::Csv => io::cost_rows_csv(&rows)?,
    };
    emit(&text, &args.common)
}

fn emit(text: &str, common: &Common) -> std::result::Result<(), Failure> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(Error::from)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(Error::from)?;
        }
    }
    Ok(())
}
