//! Command-line front end.
//!
//! Exit status: 0 when every check passes, 1 when a verification fails (the
//! report names the failing check and its witness), 2 on usage or data
//! errors. With `--format json` the report is a single JSON document whose
//! content depends only on the arguments and the data files read.

mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mwgenus::Execution;

#[derive(Parser, Debug)]
#[command(name = "mwgenus", version, about = "Exact genus computations for generating tuples")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Data directory (default: $MWGENUS_DATA, else the bundled data/).
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// Seed for randomized steps.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Run data-parallel loops on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the bundled Mathieu displays.
    VerifyMathieu,
    /// Genus of the Weyl group tuples of a root system.
    Weyl(WeylArgs),
    /// Genus of a tuple read from files.
    Genus(GenusArgs),
    /// Genus of a tuple of conjugacy classes over character data.
    ClassGenus(ClassGenusArgs),
    /// Number of pairs (x, y) in C1 x C2 with x y z = 1 for fixed z in C3.
    TripleCount(TripleCountArgs),
    /// Random search for generating tuples of a given genus.
    Search(SearchArgs),
    /// Genus of X_0(N).
    X0genus(X0Args),
    /// Steinberg witnesses from an elliptic curve table.
    Steinberg(SteinbergArgs),
    /// Parse and validate data files.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    /// Family letter, or a full label such as E8.
    #[arg(long = "type")]
    pub kind: String,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Also build and check the rotation tuple.
    #[arg(long)]
    pub rotation: bool,
}

#[derive(Args, Debug)]
pub struct GenusArgs {
    /// Group file; optional for character data.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Tuple file: one element per line (`=` marks a relation's right side);
    /// for character data, one class name per line.
    #[arg(long)]
    pub tuple: PathBuf,
    /// `perm`, `matrix FILE`, or `char FILE:CHI`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "SOURCE"], required = true)]
    pub rep: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ClassGenusArgs {
    #[arg(long)]
    pub table: PathBuf,
    #[arg(long)]
    pub chi: String,
    /// Comma-separated class names.
    #[arg(long)]
    pub classes: String,
}

#[derive(Args, Debug)]
pub struct TripleCountArgs {
    #[arg(long)]
    pub table: PathBuf,
    /// Three comma-separated class names.
    #[arg(long)]
    pub classes: String,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub group: PathBuf,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub target: i64,
    #[arg(long)]
    pub budget: usize,
    /// File with one line per entry: a class representative in cycle
    /// notation, or `*` for no constraint.
    #[arg(long)]
    pub constraints: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("x0mode").required(true).args(["n", "genus_zero"])))]
pub struct X0Args {
    #[arg(long)]
    pub n: Option<u64>,
    /// List every level up to --bound with genus zero.
    #[arg(long, requires = "bound")]
    pub genus_zero: bool,
    #[arg(long)]
    pub bound: Option<u64>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("stmode").required(true).args(["p", "all_below"])))]
pub struct SteinbergArgs {
    #[arg(long)]
    pub p: Option<u64>,
    /// Check every prime below this bound.
    #[arg(long)]
    pub all_below: Option<u64>,
    /// Curve table in allcurves format (default: the bundled extract).
    #[arg(long)]
    pub cremona: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("vmode").required(true).args(["table", "cremona", "bundles"])))]
pub struct ValidateArgs {
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long)]
    pub cremona: Option<PathBuf>,
    /// Load every bundle and print its checksums.
    #[arg(long)]
    pub bundles: bool,
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub data: PathBuf,
    pub seed: u64,
    pub exec: Execution,
}

/// A finished report.
pub(crate) struct Outcome {
    pub pass: bool,
    pub human: String,
    pub json: serde_json::Value,
}

impl Outcome {
    pub fn new<T: Serialize>(pass: bool, human: String, value: &T) -> Self {
        Outcome { pass, human, json: serde_json::to_value(value).expect("reports serialize") }
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    pass: bool,
    seed: u64,
    result: &'a serde_json::Value,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::VerifyMathieu => "verify-mathieu",
        Command::Weyl(_) => "weyl",
        Command::Genus(_) => "genus",
        Command::ClassGenus(_) => "class-genus",
        Command::TripleCount(_) => "triple-count",
        Command::Search(_) => "search",
        Command::X0genus(_) => "x0genus",
        Command::Steinberg(_) => "steinberg",
        Command::Validate(_) => "validate",
    }
}

/// Parses `args` (program name first), runs the subcommand and writes the
/// report to `out`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let config = RunConfig {
        format: cli.format,
        data: cli.data.clone().unwrap_or_else(mwgenus::data::data_dir),
        seed: cli.seed,
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    match commands::dispatch(&cli.command, &config) {
        Ok(outcome) => {
            let written = match config.format {
                Format::Human => write!(out, "{}", outcome.human),
                Format::Json => {
                    let env = Envelope { command: command_name(&cli.command), pass: outcome.pass, seed: config.seed, result: &outcome.json };
                    writeln!(out, "{}", serde_json::to_string_pretty(&env).expect("serializable"))
                }
            };
            if written.is_err() {
                return 2;
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}
