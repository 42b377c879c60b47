use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;

/// Nahm-type q-series: identity checks, asymptotic profiles and
/// modularity scans.
#[derive(Parser, Debug)]
#[command(name = "nahmsum", version, args_override_self = true, allow_negative_numbers = true)]
pub struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// TOML file of `flag = value` pairs; command-line flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "NAHMSUM_DIGITS", default_value_t = nahmsum::precision::DEFAULT_DIGITS)]
    digits: u32,
    /// Write results here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compare sum sides, product side and partition counts of corpus identities.
    #[command(args_override_self = true)]
    Verify(commands::VerifyArgs),
    /// Asymptotic constants of one sum.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Profile(commands::ProfileArgs),
    /// Search a grid of linear terms for modularity candidates.
    #[command(args_override_self = true, allow_negative_numbers = true)]
    Scan(commands::ScanArgs),
    /// Factor a sum side as ∏ (1 − q^n)^{−e_n} and look for a period.
    #[command(args_override_self = true)]
    Factor(commands::FactorArgs),
    /// Check one of the dilogarithm identities.
    #[command(args_override_self = true)]
    Dilog(commands::DilogArgs),
}

/// Failure classes mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(String),
}

impl From<nahmsum::Error> for Failure {
    fn from(e: nahmsum::Error) -> Self {
        use nahmsum::Error as E;
        match e {
            E::Precision { .. }
            | E::InvalidDatum(_)
            | E::InvalidProduct(_)
            | E::InvalidSearch(_)
            | E::UnknownEntry(_)
            | E::UnknownCondition(_)
            | E::Parse(_)
            | E::NotPositiveDefinite(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Where output goes, plus the selected format.
pub struct Sink {
    pub format: Format,
    pub out: Box<dyn Write>,
}

fn open_sink(g: &Global) -> Result<Sink, Failure> {
    let out: Box<dyn Write> = match &g.output {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    Ok(Sink { format: g.format, out })
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let ctx = nahmsum::precision::PrecisionContext::new(cli.global.digits)?;
    let mut sink = open_sink(&cli.global)?;
    let ok = match &cli.command {
        Command::Verify(a) => commands::verify(a, &mut sink)?,
        Command::Profile(a) => commands::profile(a, ctx, &mut sink)?,
        Command::Scan(a) => commands::scan(a, &cli.global, &mut sink)?,
        Command::Factor(a) => commands::factor(a, &mut sink)?,
        Command::Dilog(a) => commands::dilog(a, ctx, &mut sink)?,
    };
    sink.out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
