//! Command-line front end: config parsing, figure tables and the
//! subcommand drivers behind the `ionrwa` binary.

mod commands;
mod config;
mod table;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{
    boundary_function, cmd_concurrence, cmd_energies, cmd_evolve, cmd_prob, cmd_regions, cmd_validate, region_rows,
    RegionRow,
};
pub use config::{OutputFormat, RunConfig};
pub use table::{write_file, Cell, FigureTable};

use crate::error::Error;

#[derive(Debug, Parser)]
#[command(
    name = "ionrwa",
    version,
    about = "Full vs rotating-wave trapped-ion closed forms and Fock-space checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Run configuration (`key = value` lines).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Reserved. Every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Interaction energies over the (eta, alpha) surface.
    Energies,
    /// Where the full Hamiltonian predicts the lower energy.
    Regions,
    /// Ground-state probabilities at the diagonalization times.
    Prob,
    /// Closed-form and Wootters concurrences.
    Concurrence,
    /// Time-dependent propagation against the closed forms.
    Evolve,
    /// Run the oracle suite and write validation.json.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Runs one invocation and returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32, Error> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config PATH is required".into()))?;
    let cfg = RunConfig::load(path)?;
    let out = cli.out.clone().unwrap_or_else(|| {
        if cfg.output_dir == RunConfig::default().output_dir {
            PathBuf::from("out")
        } else {
            cfg.output_dir.clone()
        }
    });
    let format = cli.format.map_or(cfg.output_format, OutputFormat::from);

    let table = match cli.command {
        Command::Energies => cmd_energies(&cfg)?,
        Command::Regions => cmd_regions(&cfg)?,
        Command::Prob => cmd_prob(&cfg)?,
        Command::Concurrence => cmd_concurrence(&cfg)?,
        Command::Evolve => cmd_evolve(&cfg)?,
        Command::Validate => {
            let report = cmd_validate(&cfg)?;
            let path = out.join("validation.json");
            write_file(&path, &report.to_json())?;
            println!("{}", report.summary_line());
            println!("report: {}", path.display());
            return Ok(if report.all_hard_passed() { 0 } else { 2 });
        }
    };
    let path = table.write(&out, format)?;
    println!("wrote {} ({} rows)", path.display(), table.rows.len());
    Ok(0)
}

/// Parses arguments, runs, and maps errors to exit codes (1 for config and
/// parse errors, 2 for contract and validation failures).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ionrwa: {e}");
            e.exit_code()
        }
    }
}
