//! Command-line front end for `peirce-core`.
//!
//! [`Cli`] is the clap surface, [`RunConfig`] the validated configuration and
//! [`run`] executes it. Every command first builds a JSON report; the table
//! view is rendered from that report and never from the computation itself.

mod commands;
mod table;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use peirce_core::identities::{DEFAULT_SAMPLE_COUNT, DEFAULT_SEED};
use peirce_core::CheckMode;
use serde_json::Value;
use thiserror::Error;

pub use commands::execute;

/// Exit code when every requested check passed.
pub const EXIT_OK: i32 = 0;
/// Exit code when a mathematical check failed; the report carries witnesses.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit code for malformed input, bad flags and I/O problems.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: peirce_core::Error },

    #[error(transparent)]
    Core(#[from] peirce_core::Error),

    #[error("PEIRCE_THREADS must be a positive integer, got {0:?}")]
    Threads(String),
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

#[derive(Debug, Parser)]
#[command(name = "peirce", version, about = "Exact verification and Peirce analysis of triple systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Check the defining identities and, optionally, weak commutativity.
    Verify(Options),
    /// Peirce decomposition with respect to a tripotent.
    Decompose(Options),
    /// Circle algebra of a tripotent that is a left unit.
    LeftUnit(Options),
    /// Build a triple system from a circle table (read from --input or drawn at random from --seed).
    Synthesize(Options),
    /// Print a built-in model as a system document.
    Example(Options),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Built-in model: akn, ann, dnk or structurable.
    #[arg(long, conflicts_with = "input")]
    pub model: Option<String>,

    /// Comma-separated model parameters, e.g. 2,3.
    #[arg(long, value_delimiter = ',', requires = "model")]
    pub params: Vec<usize>,

    /// System document (or circle document for `synthesize`).
    #[arg(long)]
    pub input: Option<PathBuf>,

    /// Tripotent document; defaults to the model's canonical tripotent or the input's `tripotent` field.
    #[arg(long)]
    pub tripotent: Option<PathBuf>,

    /// Identity checking mode; exhaustive is the default up to dimension 16.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,

    /// Seed for sampled checks and for random circle tables.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Number of samples in sampled mode.
    #[arg(long)]
    pub sample_count: Option<usize>,

    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,

    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output_path: Option<PathBuf>,

    /// Checks run by `verify`; defaults to `all` for weakly commutative models and `axioms` otherwise.
    #[arg(long, value_enum)]
    pub check: Option<CheckSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckSet {
    Axioms,
    WeakComm,
    All,
}

impl CheckSet {
    pub fn axioms(self) -> bool {
        matches!(self, CheckSet::Axioms | CheckSet::All)
    }

    pub fn weak_comm(self) -> bool {
        matches!(self, CheckSet::WeakComm | CheckSet::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Verify,
    Decompose,
    LeftUnit,
    Synthesize,
    Example,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Verify => "verify",
            CommandKind::Decompose => "decompose",
            CommandKind::LeftUnit => "left-unit",
            CommandKind::Synthesize => "synthesize",
            CommandKind::Example => "example",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Model { name: String, params: Vec<usize> },
    File(PathBuf),
    /// Random admissible circle table (synthesize only).
    Random { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TripotentSource {
    /// The model's own tripotent, or the `tripotent` field of the input document.
    Canonical,
    File(PathBuf),
}

/// Checking mode as requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeChoice {
    /// Exhaustive up to dimension 16, sampled with seed 1 and 10000 samples beyond.
    Auto,
    Fixed(CheckMode),
}

impl ModeChoice {
    pub fn resolve(self, dim: usize) -> CheckMode {
        match self {
            ModeChoice::Auto => CheckMode::default_for(dim),
            ModeChoice::Fixed(m) => m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub source: Source,
    pub tripotent: TripotentSource,
    pub mode: ModeChoice,
    pub checks: Option<CheckSet>,
    pub output: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig, CliError> {
        let (command, o) = match cli.command {
            CliCommand::Verify(o) => (CommandKind::Verify, o),
            CliCommand::Decompose(o) => (CommandKind::Decompose, o),
            CliCommand::LeftUnit(o) => (CommandKind::LeftUnit, o),
            CliCommand::Synthesize(o) => (CommandKind::Synthesize, o),
            CliCommand::Example(o) => (CommandKind::Example, o),
        };
        Self::new(command, o)
    }

    pub fn new(command: CommandKind, o: Options) -> Result<RunConfig, CliError> {
        let name = command.name();
        let source = match (o.model, o.input) {
            (Some(_), Some(_)) => return Err(usage("--model and --input are mutually exclusive")),
            (Some(model), None) => {
                if command == CommandKind::Synthesize {
                    return Err(usage("synthesize reads a circle table from --input, not a model"));
                }
                Source::Model { name: model, params: o.params }
            }
            (None, Some(path)) => {
                if command == CommandKind::Example {
                    return Err(usage("example needs --model"));
                }
                Source::File(path)
            }
            (None, None) if command == CommandKind::Synthesize => Source::Random {
                seed: o.seed.unwrap_or(DEFAULT_SEED),
            },
            (None, None) => return Err(usage(format!("{name} needs --model or --input"))),
        };
        let uses_tripotent = matches!(command, CommandKind::Decompose | CommandKind::LeftUnit);
        let tripotent = match o.tripotent {
            Some(_) if !uses_tripotent => return Err(usage(format!("{name} does not take --tripotent"))),
            Some(p) => TripotentSource::File(p),
            None => TripotentSource::Canonical,
        };
        if o.check.is_some() && command != CommandKind::Verify {
            return Err(usage("--check only applies to verify"));
        }
        let sampling = matches!(command, CommandKind::Verify | CommandKind::Decompose | CommandKind::LeftUnit);
        if o.mode.is_some() && !sampling {
            return Err(usage(format!("{name} does not take --mode")));
        }
        let mode = match o.mode {
            Some(ModeArg::Sampled) => {
                let count = o.sample_count.unwrap_or(DEFAULT_SAMPLE_COUNT);
                if count == 0 {
                    return Err(usage("--sample-count must be positive"));
                }
                ModeChoice::Fixed(CheckMode::Sampled {
                    seed: o.seed.unwrap_or(DEFAULT_SEED),
                    count,
                })
            }
            Some(ModeArg::Exhaustive) | None => {
                if o.sample_count.is_some() {
                    return Err(usage("--sample-count requires --mode sampled"));
                }
                if o.seed.is_some() && command != CommandKind::Synthesize {
                    return Err(usage("--seed requires --mode sampled"));
                }
                if o.mode.is_some() {
                    ModeChoice::Fixed(CheckMode::Exhaustive)
                } else {
                    ModeChoice::Auto
                }
            }
        };
        Ok(RunConfig {
            command,
            source,
            tripotent,
            mode,
            checks: o.check,
            output: o.output,
            output_path: o.output_path,
        })
    }
}

/// A finished report: the JSON document and whether every requested check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub passed: bool,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }

    /// Serialized form; identical reports give identical bytes.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("reports are plain JSON values");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json_string(),
            OutputFormat::Table => table::render(&self.json),
        }
    }
}

/// Sizes the global rayon pool from `PEIRCE_THREADS`, if set.
pub fn configure_threads(value: Option<&str>) -> Result<(), CliError> {
    let Some(v) = value else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Threads(v.to_string()))?;
    // A pool that is already initialized keeps its size; that only happens
    // when `run` is embedded in a larger program.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Write {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Executes the configuration, writes the report and returns the exit code.
pub fn run(config: &RunConfig) -> i32 {
    let outcome = execute(config).and_then(|report| {
        write_output(config.output_path.as_deref(), &report.render(config.output))?;
        Ok(report.exit_code())
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(model: &str) -> Options {
        Options {
            model: Some(model.into()),
            params: vec![1, 1],
            ..Options::default()
        }
    }

    #[test]
    fn sampled_mode_fills_in_defaults() {
        let mut o = opts("akn");
        o.mode = Some(ModeArg::Sampled);
        let c = RunConfig::new(CommandKind::Verify, o).unwrap();
        let expected = CheckMode::Sampled {
            seed: DEFAULT_SEED,
            count: DEFAULT_SAMPLE_COUNT,
        };
        assert_eq!(c.mode, ModeChoice::Fixed(expected));
        assert_eq!(ModeChoice::Auto.resolve(16), CheckMode::Exhaustive);
        assert_eq!(ModeChoice::Auto.resolve(17), expected);
    }

    #[test]
    fn synthesize_defaults_to_a_random_table() {
        let c = RunConfig::new(CommandKind::Synthesize, Options::default()).unwrap();
        assert_eq!(c.source, Source::Random { seed: DEFAULT_SEED });
        assert!(RunConfig::new(CommandKind::Synthesize, opts("akn")).is_err());
    }

    #[test]
    fn flags_are_checked_against_the_command() {
        let mut o = opts("akn");
        o.tripotent = Some("t.json".into());
        assert!(matches!(RunConfig::new(CommandKind::Verify, o), Err(CliError::Usage(_))));
        let mut o = opts("akn");
        o.mode = Some(ModeArg::Exhaustive);
        assert!(RunConfig::new(CommandKind::Example, o).is_err());
        assert!(RunConfig::new(CommandKind::Decompose, Options::default()).is_err());
    }

    #[test]
    fn thread_variable_must_be_positive() {
        assert!(configure_threads(None).is_ok());
        assert!(matches!(configure_threads(Some("0")), Err(CliError::Threads(_))));
        assert!(matches!(configure_threads(Some("x")), Err(CliError::Threads(_))));
    }
}
