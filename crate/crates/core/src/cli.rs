//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 domain error (range, length,
//! capacity), 4 internal invariant violation or I/O failure.

use crate::bench::{self, BenchSettings};
use crate::combinadics::{Backend, IndexSelector, PascalTable, SelectorCaps};
use crate::combinadics::{DEFAULT_LUT_CAP, DEFAULT_TABLE_BUDGET_BYTES};
use crate::error::Error;
use crate::mapper::{demap_symbol, map_symbol, BitWord, MappedSymbol, OfdmImConfig};
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::io::{self, BufRead, Write};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "ofdm-im", version, about = "OFDM-IM mapper with a Pascal's-triangle index selector")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map bit words to symbols, one line per word.
    Map(MapArgs),
    /// Recover bit words from symbol lines.
    Demap(DemapArgs),
    /// Print rows of the Pascal's-triangle table.
    Table(TableArgs),
    /// Run a timing sweep with k = n/2 and print CSV.
    Bench(BenchArgs),
    /// Compare p1 with n - log2 sqrt(n) for k = n/2.
    Asymptotics(AsymptoticsArgs),
}

#[derive(Debug, Args)]
pub struct LayoutArgs {
    /// Subcarriers per symbol.
    #[arg(long)]
    pub n: usize,
    /// Active subcarriers.
    #[arg(long)]
    pub k: usize,
    /// Constellation order M.
    #[arg(long = "m-ary", default_value_t = 2)]
    pub m_ary: usize,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[command(flatten)]
    pub layout: LayoutArgs,
    #[arg(long, default_value = "pt", value_parser = parse_backend)]
    pub backend: Backend,
    /// Bit word, MSB first. Read one per line from stdin when absent.
    #[arg(long)]
    pub bits: Option<String>,
    #[arg(long = "lut-cap", default_value_t = DEFAULT_LUT_CAP)]
    pub lut_cap: u64,
}

#[derive(Debug, Args)]
pub struct DemapArgs {
    #[command(flatten)]
    pub layout: LayoutArgs,
    /// Symbol line as printed by `map`. Read one per line from stdin when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub symbol: Option<String>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Print only row c; all rows otherwise.
    #[arg(long)]
    pub row: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long = "n-list", value_delimiter = ',', default_value = "256,512,1024,2048")]
    pub n_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "baseline,pt,lut", value_parser = parse_backend)]
    pub backends: Vec<Backend>,
    #[arg(long = "m-ary-list", value_delimiter = ',', default_value = "2,4")]
    pub m_ary_list: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 10)]
    pub warmup: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest full look-up table to build, in entries.
    #[arg(long = "lut-cap", default_value_t = DEFAULT_LUT_CAP)]
    pub lut_cap: u64,
    /// Largest Pascal's-triangle table to build, in bytes.
    #[arg(long = "table-cap-bytes", default_value_t = DEFAULT_TABLE_BUDGET_BYTES)]
    pub table_cap_bytes: u64,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    #[arg(long = "n-list", value_delimiter = ',', default_value = "64,128,256,512,1024")]
    pub n_list: Vec<usize>,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_usage() => EXIT_USAGE,
            CliError::Lib(e) if e.is_internal() => EXIT_INTERNAL,
            CliError::Lib(_) => EXIT_DOMAIN,
            CliError::Io(_) => EXIT_INTERNAL,
        }
    }
}

/// Parses `args`, runs against the process's stdin/stdout, and returns the
/// exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let stdin = io::stdin();
    let stdout = io::stdout();
    match run(cli, stdin.lock(), stdout.lock()) {
        Ok(()) => 0,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<R: BufRead, W: Write>(cli: Cli, input: R, mut out: W) -> Result<(), CliError> {
    match cli.command {
        Command::Map(args) => run_map(args, input, &mut out),
        Command::Demap(args) => run_demap(args, input, &mut out),
        Command::Table(args) => run_table(args, &mut out),
        Command::Bench(args) => run_bench(args, &mut out),
        Command::Asymptotics(args) => {
            let rows = bench::asymptotics_report(&args.n_list)?;
            bench::write_asymptotics_csv(&mut out, &rows)?;
            Ok(())
        }
    }
}

fn layout(args: &LayoutArgs) -> Result<OfdmImConfig, Error> {
    OfdmImConfig::new(args.n, args.k, args.m_ary)
}

/// The flag value if given, otherwise every non-blank stdin line.
fn lines_from<R: BufRead>(flag: Option<String>, input: R) -> Result<Vec<String>, CliError> {
    match flag {
        Some(v) => Ok(vec![v]),
        None => Ok(input
            .lines()
            .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
            .collect::<io::Result<_>>()?),
    }
}

fn run_map<R: BufRead, W: Write>(args: MapArgs, input: R, out: &mut W) -> Result<(), CliError> {
    let cfg = layout(&args.layout)?;
    let words = lines_from(args.bits, input)?
        .iter()
        .map(|l| l.parse::<BitWord>())
        .collect::<Result<Vec<_>, _>>()?;
    for w in &words {
        if w.len() != cfg.total_bits() {
            return Err(Error::LengthMismatch {
                what: "bit word",
                expected: cfg.total_bits(),
                actual: w.len(),
            }
            .into());
        }
    }
    let caps = SelectorCaps {
        lut_entries: args.lut_cap,
        ..SelectorCaps::default()
    };
    let selector = IndexSelector::prepare(args.backend, cfg.n(), cfg.k(), caps)?;
    for w in &words {
        writeln!(out, "{}", map_symbol(w, &cfg, &selector)?)?;
    }
    Ok(())
}

fn run_demap<R: BufRead, W: Write>(args: DemapArgs, input: R, out: &mut W) -> Result<(), CliError> {
    let cfg = layout(&args.layout)?;
    for line in lines_from(args.symbol, input)? {
        let sym: MappedSymbol = line.parse()?;
        writeln!(out, "{}", demap_symbol(&sym, &cfg)?)?;
    }
    Ok(())
}

fn run_table<W: Write>(args: TableArgs, out: &mut W) -> Result<(), CliError> {
    if let Some(c) = args.row {
        if c >= args.n {
            return Err(Error::dims(format!("row {c} is outside 0..{}", args.n)).into());
        }
    }
    let table = PascalTable::build(args.n, args.k)?;
    let rows = match args.row {
        Some(c) => c..c + 1,
        None => 0..args.n,
    };
    for c in rows {
        let row = table.row(c).expect("row checked against n");
        let text: Vec<String> = row.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", text.join(","))?;
    }
    Ok(())
}

fn run_bench<W: Write>(args: BenchArgs, out: &mut W) -> Result<(), CliError> {
    let settings = BenchSettings {
        trials: args.trials,
        warmup: args.warmup,
        seed: args.seed,
        caps: SelectorCaps {
            lut_entries: args.lut_cap,
            table_bytes: args.table_cap_bytes,
        },
    };
    if settings.trials == 0 {
        return Err(Error::Parse("--trials must be at least 1".into()).into());
    }
    let records = bench::sweep(&args.n_list, &args.m_ary_list, &args.backends, &settings)?;
    bench::write_csv(out, &records)?;
    Ok(())
}
