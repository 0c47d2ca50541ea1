//! `sbl`: forward modelling, airwave synthesis and FastICA airwave separation
//! runs that write self-describing CSV files.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "sbl", version, about = "Shallow-water CSEM airwave separation")]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Overrides `run.seed` from the configuration.
    #[arg(long, global = true, value_name = "N")]
    pub seed: Option<u64>,

    /// Output directory, created if missing.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    pub out: PathBuf,

    /// Weight applied to both channels before separation.
    #[arg(long, global = true, value_name = "W")]
    pub weight: Option<f64>,

    /// Far-offset comparison window in metres.
    #[arg(long, global = true, value_name = "START,STOP", value_parser = parse_window)]
    pub window: Option<(f64, f64)>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Layered-earth inline Ex for the configured survey.
    Forward,
    /// Analytic airwave for the configured survey.
    Airwave {
        /// Use ω·sqrt(μ0 ε0) for the air wavenumber instead of zero.
        #[arg(long)]
        exact_air_wavenumber: bool,
    },
    /// Separate one measured profile from its synthetic airwave.
    Separate { measured: PathBuf, airwave: PathBuf },
    /// Weight sweep, either on given profiles or on synthesized depth series.
    Sweep {
        measured: Option<PathBuf>,
        airwave: Option<PathBuf>,
        reference: Option<PathBuf>,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected START,STOP, got `{s}`"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    let (start, stop) = (parse(a)?, parse(b)?);
    if !(start.is_finite() && stop.is_finite() && start <= stop) {
        return Err(format!(
            "window start must not exceed stop, got {start},{stop}"
        ));
    }
    Ok((start, stop))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
            for path in &report.written {
                println!("{}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}
