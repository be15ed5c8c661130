//! `infoflow`: batch front end for the lattice, dispersion and causal-net
//! analyses. Every run writes one report (CSV or JSON) that echoes all
//! resolved parameters; nothing is written unless the run succeeds.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

mod commands;
mod config;
mod report;

use config::FileConfig;

#[derive(Debug, Parser)]
#[command(name = "infoflow", version, about = "Discrete information-flow simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve a field state and write the trajectory.
    Evolve(EvolveArgs),
    /// Tabulate ω(k) and the group velocity.
    Dispersion(DispersionArgs),
    /// Maximal speed ζ and refraction index over a list of μ.
    Zeta(ZetaArgs),
    /// Trembling motion of ⟨x⟩(t).
    Zitter(ZitterArgs),
    /// Automaton-versus-continuum error under lattice refinement.
    Convergence(ConvergenceArgs),
    /// Time dilation and length contraction by event counting.
    Lorentz(LorentzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Init {
    Packet,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stepper {
    Unitary,
    Fd,
}

#[derive(Debug, Args)]
struct Common {
    /// TOML file with default parameters (flags override it).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; standard output if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k0: Option<f64>,
    #[arg(long)]
    pub center: Option<f64>,
    #[arg(long)]
    pub chorus: Option<f64>,
    #[arg(long)]
    pub chronon: Option<f64>,
    #[arg(long, value_enum)]
    pub init: Option<Init>,
    #[arg(long, value_enum)]
    pub direction: Option<Direction>,
    #[arg(long, value_enum)]
    pub stepper: Option<Stepper>,
    /// RK4 substeps per chronon for the finite-difference stepper.
    #[arg(long)]
    pub substeps: Option<usize>,
    /// Keep every n-th step (the final state is always kept).
    #[arg(long)]
    pub cadence: Option<usize>,
    /// Initial state from a field-state file; its lattice and μ become the
    /// defaults.
    #[arg(long)]
    pub load_state: Option<PathBuf>,
    /// Also write the final state as a field-state file.
    #[arg(long)]
    pub save_state: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    pub mu: Option<f64>,
    /// Number of k samples.
    #[arg(long)]
    pub nk: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated μ values.
    #[arg(long, value_delimiter = ',')]
    pub mu: Option<Vec<f64>>,
    /// Also measure the packet speed at the fastest carrier.
    #[arg(long)]
    pub measure: bool,
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub burn_in: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ZitterArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k0: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Lowest angular frequency considered in the peak search.
    #[arg(long)]
    pub floor: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    common: Common,
    /// μ on the coarsest lattice.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Sites of the coarsest lattice.
    #[arg(long)]
    pub sites: Option<usize>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k0: Option<f64>,
    #[arg(long)]
    pub levels: Option<usize>,
    /// Physical evolution time in coarse chronons.
    #[arg(long)]
    pub time: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LorentzArgs {
    #[command(flatten)]
    common: Common,
    /// Velocity as `p/q`, or a decimal approximated with denominator at
    /// most `--max-den`.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long)]
    pub max_den: Option<i64>,
    /// Comma-separated mirror separations.
    #[arg(long, value_delimiter = ',')]
    pub d: Option<Vec<u64>>,
    #[arg(long)]
    pub ticks: Option<u64>,
    #[arg(long)]
    pub phase: Option<u64>,
    /// Coarse-graining factor.
    #[arg(long)]
    pub factor: Option<u64>,
    /// Count a clock at rest in the leaves of the moving observer instead.
    #[arg(long)]
    pub reciprocal: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Compute(infoflow::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Compute(_) => 4,
        }
    }

    fn class(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Compute(e) => e.class(),
        }
    }
}

impl From<infoflow::Error> for CliError {
    fn from(e: infoflow::Error) -> Self {
        use infoflow::Error::*;
        match e {
            InvalidArgument(_) | Parse(_) | Dimension { .. } => CliError::Usage(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

/// Files to write once the whole run has succeeded.
pub struct Output {
    pub main: String,
    pub extra: Vec<(PathBuf, String)>,
}

fn write_atomic(path: &Path, text: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = match &cli.command {
        Command::Evolve(a) => &a.common,
        Command::Dispersion(a) => &a.common,
        Command::Zeta(a) => &a.common,
        Command::Zitter(a) => &a.common,
        Command::Convergence(a) => &a.common,
        Command::Lorentz(a) => &a.common,
    };
    let file = FileConfig::load(common.config.as_deref())?;
    let format = config::pick(common.format, file.format, Format::Csv);
    let out = common.out.clone().or(file.out.clone());

    let output = match &cli.command {
        Command::Evolve(a) => commands::evolve(a, &file, format)?,
        Command::Dispersion(a) => commands::dispersion(a, &file, format)?,
        Command::Zeta(a) => commands::zeta(a, &file, format)?,
        Command::Zitter(a) => commands::zitter(a, &file, format)?,
        Command::Convergence(a) => commands::convergence(a, &file, format)?,
        Command::Lorentz(a) => commands::lorentz(a, &file, format)?,
    };

    for (path, text) in &output.extra {
        write_atomic(path, text)?;
    }
    match out {
        Some(path) => write_atomic(&path, &output.main),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(output.main.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.class());
            ExitCode::from(e.exit_code())
        }
    }
}
