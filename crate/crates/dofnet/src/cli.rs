//! The `dofnet` command line.
//!
//! Exit status: 0 on success, 1 on invalid input (bad flags, unreadable or
//! malformed files, mismatched scheme and network), 2 on internal errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use dofnet_core::scheme::check_csit_legality_with_delay;
use dofnet_core::sim::{MonteCarlo, DEFAULT_RANK_TOL};
use dofnet_core::{
    build_region, builtin_scheme, detect_bottlenecks, Family, LayeredNetwork, Mode, Scheme,
    SimError, DEFAULT_EXHAUSTIVE_BUDGET,
};

use crate::format::{
    trials_csv, FormatError, LegalityJson, NetworkJson, RegionJson, ReportJson, SchemeJson,
    SimulationJson,
};
use crate::render;

#[derive(Debug, Parser)]
#[command(
    name = "dofnet",
    version,
    about = "Bottleneck structure, DoF outer bounds and delayed-CSIT scheme simulation for two-unicast layered networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated network (or its built-in scheme) as JSON.
    Gen(GenArgs),
    /// Report bottleneck and omniscient nodes.
    Analyze(AnalyzeArgs),
    /// Print the DoF outer-bound region and its maximum sum.
    Region(RegionArgs),
    /// Run a scheme over random channel realizations.
    ///
    /// CSV output has one row per trial with the columns
    /// trial,decodable_d1,decodable_d2,margin_d1,margin_d2,mse_d1,mse_d2;
    /// margin is the smallest relevant singular value relative to the largest.
    Simulate(SimulateArgs),
    /// Check a scheme against the delayed-CSIT knowledge model.
    CheckScheme(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Noiseless,
    Noisy,
}

/// Where the network comes from: a JSON file or a generator family.
#[derive(Debug, Args)]
pub struct NetworkSource {
    /// Network JSON file.
    #[arg(
        value_name = "NETWORK",
        required_unless_present = "family",
        conflicts_with = "family"
    )]
    pub network: Option<PathBuf>,
    /// Generator family: bottleneck, double-bottleneck, no-bottleneck.
    #[arg(long)]
    pub family: Option<String>,
    /// Generator parameter.
    #[arg(long)]
    pub m: Option<u32>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub m: Option<u32>,
    /// Write the family's built-in scheme instead of the network.
    #[arg(long)]
    pub scheme: bool,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: NetworkSource,
    /// Largest in-degree searched exhaustively.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[command(flatten)]
    pub source: NetworkSource,
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub source: NetworkSource,
    /// Scheme JSON file, or `builtin` for the built-in scheme of `--family`.
    #[arg(long)]
    pub scheme: String,
    #[arg(long, default_value_t = 100)]
    pub trials: u32,
    /// Random seed; falls back to DOFNET_SEED, then 0.
    #[arg(long, env = "DOFNET_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Noiseless)]
    pub mode: ModeArg,
    /// Transmit power in noisy mode.
    #[arg(long, default_value_t = 1e4)]
    pub power: f64,
    /// Relative singular-value threshold for rank decisions.
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Scheme JSON file.
    pub scheme: PathBuf,
    #[command(flatten)]
    pub source: NetworkSource,
    /// CSIT delay in slots.
    #[arg(long, default_value_t = 1)]
    pub delay: u32,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        invalid(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn family(name: &str, m: Option<u32>) -> Result<Family, CliError> {
    Family::parse(name, m).map_err(invalid)
}

impl NetworkSource {
    fn load(&self) -> Result<(LayeredNetwork, Option<Family>), CliError> {
        match (&self.network, &self.family) {
            (Some(path), None) => Ok((NetworkJson::parse(&read(path)?)?, None)),
            (None, Some(name)) => {
                let f = family(name, self.m)?;
                Ok((f.network().map_err(invalid)?, Some(f)))
            }
            _ => Err(invalid("give exactly one of NETWORK or --family")),
        }
    }
}

/// Runs one command and returns what it prints on stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Gen(a) => {
            let f = family(&a.family, a.m)?;
            let text = if a.scheme {
                SchemeJson::render(&builtin_scheme(f).map_err(invalid)?)
            } else {
                NetworkJson::render(&f.network().map_err(invalid)?)
            };
            match &a.output {
                Some(path) => {
                    fs::write(path, text + "\n")
                        .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text + "\n"),
            }
        }
        Command::Analyze(a) => {
            let (net, _) = a.source.load()?;
            let report = detect_bottlenecks(&net, a.budget).map_err(invalid)?;
            Ok(match a.format {
                Format::Json => json(&ReportJson::from(&report)),
                _ => render::report(&report),
            })
        }
        Command::Region(a) => {
            let (net, _) = a.source.load()?;
            let report = detect_bottlenecks(&net, a.budget).map_err(invalid)?;
            let region = build_region(&net, &report);
            Ok(match a.format {
                Format::Json => json(&RegionJson::from(&region)),
                _ => render::region(&region),
            })
        }
        Command::Simulate(a) => simulate(a),
        Command::CheckScheme(a) => {
            let (net, _) = a.source.load()?;
            let sch = SchemeJson::parse(&read(&a.scheme)?)?;
            if a.delay == 0 {
                return Err(invalid("delay must be at least 1"));
            }
            let report = check_csit_legality_with_delay(&net, &sch, a.delay).map_err(invalid)?;
            Ok(match a.format {
                Format::Json => json(&LegalityJson::new(&report, a.delay)),
                _ => render::legality(&report, a.delay),
            })
        }
    }
}

fn simulate(a: &SimulateArgs) -> Result<String, CliError> {
    let (net, fam) = a.source.load()?;
    let sch: Scheme = if a.scheme == "builtin" {
        let f = fam.ok_or_else(|| invalid("`--scheme builtin` needs --family"))?;
        builtin_scheme(f).map_err(invalid)?
    } else {
        SchemeJson::parse(&read(Path::new(&a.scheme))?)?
    };
    let mode = match a.mode {
        ModeArg::Noiseless => Mode::Noiseless,
        ModeArg::Noisy if a.power > 0.0 && a.power.is_finite() => Mode::Noisy { power: a.power },
        ModeArg::Noisy => return Err(invalid("--power must be positive")),
    };
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(invalid("--tol must lie in (0, 1)"));
    }
    let report = MonteCarlo {
        trials: a.trials,
        seed: a.seed,
        mode,
        tol: a.tol,
    }
    .run(&net, &sch)
    .map_err(|e| match e {
        SimError::Trial { .. } | SimError::Scheme(_) | SimError::NoTrials => invalid(e),
        other => CliError::Internal(other.to_string()),
    })?;
    let region = build_region(&net, &detect_bottlenecks(&net, a.budget).map_err(invalid)?);
    Ok(match a.format {
        Format::Json => json(&SimulationJson::new(&report, region.max_sum)),
        Format::Csv => trials_csv(&report)?,
        Format::Human => render::simulation(&report, region.max_sum),
    })
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data") + "\n"
}

/// Parses `args`, runs the command, prints the result and returns the exit
/// status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
            {
                Ok(()) => 0,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
