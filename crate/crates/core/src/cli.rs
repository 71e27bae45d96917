//! Command-line front end.
//!
//! Pairs are read and written in the JSON pair format. A pair argument is
//! either `catalog:<id>`, a file path, or `-` for standard input.

use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::array::ArrayPair;
use crate::complex::DEFAULT_TOLERANCE;
use crate::construct::{
    construct_1d, construct_2d_full, construct_2d_horizontal, golay_mate, SignQuadruple,
};
use crate::correlation::{
    aacs, aperiodic_xcorr, aperiodic_xcorr_fft, periodic_xcorr, periodic_xcorr_fft,
    CorrelationTable,
};
use crate::error::Error;
use crate::seeds::{
    brute_force_search, catalog, catalog_entry, SearchOptions, DEFAULT_SEARCH_GUARD,
};
use crate::verify::{is_gcap_with_tolerance, measure_zones_with_tolerance, ZoneWidth};

#[derive(Debug, Parser)]
#[command(
    name = "golay-zcz",
    version,
    about = "Golay complementary pairs and arrays with zero-correlation zones"
)]
pub struct Cli {
    /// Zero-test tolerance for floating correlation values (scaled by array size).
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,

    /// Worker threads for parallel kernels (defaults to the number of CPUs).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quadruple a complementary sequence pair with the horizontal construction.
    #[command(name = "construct-1d")]
    Construct1d(SignedConstruct),
    /// Quadruple the columns of a complementary array pair.
    #[command(name = "construct-2d")]
    Construct2d(SignedConstruct),
    /// Tile a complementary array pair on the fixed 4x4 sign pattern.
    #[command(name = "construct-2d-full")]
    Construct2dFull(Construct),
    /// Print the mate (rev(conj B), -rev(conj A)) of a pair.
    Mate(Construct),
    /// Check complementarity and, optionally, a claimed zero-correlation zone.
    Verify(VerifyArgs),
    /// Measure the periodic zero-correlation zones of a pair.
    Measure(MeasureArgs),
    /// Exhaustively search complementary sequence pairs.
    Search(SearchArgs),
    /// Write a correlation table as CSV or JSON.
    Export(ExportArgs),
    /// List the built-in seed catalog.
    Catalog,
}

#[derive(Debug, Args)]
pub struct Construct {
    /// Seed pair: `catalog:<id>`, a JSON file, or `-`.
    #[arg(long)]
    pub seed: String,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SignedConstruct {
    #[command(flatten)]
    pub target: Construct,
    /// Block signs x1,x2,x3,x4 with x1*x2 + x3*x4 = 0.
    #[arg(long, value_parser = parse_signs, allow_hyphen_values = true)]
    pub signs: SignQuadruple,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: String,
    /// Claimed zone: `Z` for sequences (or a ZxZ square), `Z1xZ2` for arrays.
    #[arg(long, value_parser = parse_claim)]
    pub claim: Option<Claim>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub input: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub length: usize,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_GUARD)]
    pub guard: u128,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableChoice {
    /// Autocorrelation of the first member.
    First,
    /// Autocorrelation of the second member.
    Second,
    /// Cross-correlation of first with second.
    Cross,
    /// Aperiodic autocorrelation sum.
    Aacs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindChoice {
    Periodic,
    Aperiodic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub input: String,
    #[arg(long, value_enum, default_value_t = TableChoice::First)]
    pub table: TableChoice,
    #[arg(long, value_enum, default_value_t = KindChoice::Periodic)]
    pub kind: KindChoice,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Use the FFT kernel (floating output).
    #[arg(long)]
    pub fft: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

/// A zone claim as typed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Scalar(usize),
    Rect(usize, usize),
}

impl Claim {
    /// Scalar claims mean `(1, Z)` on sequences and the square `Z x Z` on
    /// arrays.
    pub fn resolve(self, shape: (usize, usize)) -> ZoneWidth {
        match self {
            Claim::Scalar(z) if shape.0 == 1 => ZoneWidth::new(1, z),
            Claim::Scalar(z) => ZoneWidth::new(z, z),
            Claim::Rect(r, c) => ZoneWidth::new(r, c),
        }
    }
}

fn parse_signs(text: &str) -> Result<SignQuadruple, String> {
    let values: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let values: [i64; 4] = values
        .try_into()
        .map_err(|v: Vec<i64>| format!("expected 4 signs, got {}", v.len()))?;
    SignQuadruple::from_ints(values).map_err(|e| e.to_string())
}

fn parse_claim(text: &str) -> Result<Claim, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    match text.split_once(['x', 'X', '*']) {
        Some((r, c)) => Ok(Claim::Rect(num(r)?, num(c)?)),
        None => Ok(Claim::Scalar(num(text)?)),
    }
}

/// Error categories, each with its own exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    BadInput,
    ClaimFailed,
    GuardExceeded,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::BadInput => 2,
            Category::ClaimFailed => 3,
            Category::GuardExceeded => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Category::BadInput => "bad-input",
            Category::ClaimFailed => "claim-failed",
            Category::GuardExceeded => "guard-exceeded",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub category: Category,
    pub message: String,
}

impl CliError {
    fn bad_input(message: impl Into<String>) -> Self {
        CliError {
            category: Category::BadInput,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.category.as_str(), self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let category = match e {
            Error::GuardExceeded { .. } => Category::GuardExceeded,
            _ => Category::BadInput,
        };
        CliError {
            category,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::bad_input(e.to_string())
    }
}

/// Reads a pair from `catalog:<id>`, a file, or `-` (stdin).
pub fn load_pair(selector: &str, stdin: &mut dyn Read) -> Result<ArrayPair, CliError> {
    if let Some(id) = selector.strip_prefix("catalog:") {
        return catalog_entry(id)
            .map(|r| r.pair)
            .ok_or_else(|| CliError::bad_input(format!("unknown catalog id {id:?}")));
    }
    let text = if selector == "-" {
        let mut s = String::new();
        stdin.read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(selector).map_err(|e| CliError::bad_input(format!("{selector}: {e}")))?
    };
    Ok(ArrayPair::from_json(&text)?)
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Runs one command. Output goes to `out` unless a path is given.
pub fn run(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(n) = cli.workers {
        // the global pool can only be configured once per process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match &cli.command {
        Command::Construct1d(args) => {
            let seed = load_pair(&args.target.seed, stdin)?;
            let pair = construct_1d(&seed, args.signs)?;
            emit(out, args.target.out.as_ref(), &with_newline(pair.to_json()))
        }
        Command::Construct2d(args) => {
            let seed = load_pair(&args.target.seed, stdin)?;
            let pair = construct_2d_horizontal(&seed, args.signs)?;
            emit(out, args.target.out.as_ref(), &with_newline(pair.to_json()))
        }
        Command::Construct2dFull(args) => {
            let seed = load_pair(&args.seed, stdin)?;
            let pair = construct_2d_full(&seed)?;
            emit(out, args.out.as_ref(), &with_newline(pair.to_json()))
        }
        Command::Mate(args) => {
            let seed = load_pair(&args.seed, stdin)?;
            let mate = golay_mate(&seed)?;
            emit(out, args.out.as_ref(), &with_newline(mate.to_json()))
        }
        Command::Verify(args) => {
            let pair = load_pair(&args.input, stdin)?;
            let report = measure_zones_with_tolerance(&pair, cli.tolerance);
            let text = if args.json {
                with_newline(report.to_json())
            } else {
                report.to_string()
            };
            out.write_all(text.as_bytes())?;
            if let Some(w) = report.gcap_witness {
                return Err(CliError {
                    category: Category::ClaimFailed,
                    message: format!("pair is not complementary: {w}"),
                });
            }
            if let Some(claim) = args.claim {
                let claim = claim.resolve(pair.shape());
                if !report.admits(claim) {
                    let witness = report
                        .witnesses
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join("; ");
                    return Err(CliError {
                        category: Category::ClaimFailed,
                        message: format!("zone {claim} not attained (boundary: {witness})"),
                    });
                }
                writeln!(out, "claim {claim} verified")?;
            }
            Ok(())
        }
        Command::Measure(args) => {
            let pair = load_pair(&args.input, stdin)?;
            let report = measure_zones_with_tolerance(&pair, cli.tolerance);
            let text = if args.json {
                with_newline(report.to_json())
            } else {
                report.to_string()
            };
            out.write_all(text.as_bytes())?;
            Ok(())
        }
        Command::Search(args) => {
            let options = SearchOptions {
                limit: args.limit,
                guard: args.guard,
            };
            let found = brute_force_search(args.length, args.q, options)?;
            let text = serde_json::to_string_pretty(&found).expect("pairs serialize");
            emit(out, args.out.as_ref(), &with_newline(text))
        }
        Command::Export(args) => {
            let pair = load_pair(&args.input, stdin)?;
            let table = export_table(&pair, args)?;
            let text = match args.format {
                Format::Csv => table.to_csv(),
                Format::Json => with_newline(table.to_json()),
            };
            emit(out, args.out.as_ref(), &text)
        }
        Command::Catalog => {
            for r in catalog() {
                let (rows, cols) = r.pair.shape();
                let gcap = is_gcap_with_tolerance(&r.pair, cli.tolerance).holds;
                writeln!(
                    out,
                    "{:<16} {:<6} q={:<2} {:<17} gcap={gcap:<5}  {}",
                    r.id,
                    format!("{rows}x{cols}"),
                    r.pair.q(),
                    r.provenance.to_string(),
                    r.notes
                )?;
            }
            Ok(())
        }
    }
}

fn export_table(pair: &ArrayPair, args: &ExportArgs) -> Result<CorrelationTable, CliError> {
    let (a, b) = (pair.first(), pair.second());
    let (x, y) = match args.table {
        TableChoice::First => (a, a),
        TableChoice::Second => (b, b),
        TableChoice::Cross => (a, b),
        TableChoice::Aacs => {
            if args.kind == KindChoice::Periodic || args.fft {
                return Err(CliError::bad_input(
                    "the aacs table is aperiodic and exact; use --kind aperiodic without --fft",
                ));
            }
            return Ok(aacs(pair));
        }
    };
    let table = match (args.kind, args.fft) {
        (KindChoice::Periodic, false) => periodic_xcorr(x, y)?,
        (KindChoice::Periodic, true) => periodic_xcorr_fft(x, y)?,
        (KindChoice::Aperiodic, false) => aperiodic_xcorr(x, y)?,
        (KindChoice::Aperiodic, true) => aperiodic_xcorr_fft(x, y)?,
    };
    Ok(table)
}
