//! `gbf`: batch driver for graph basis function experiments.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical error. Errors
//! are printed to stderr as one JSON object.

mod commands;
mod config;
mod error;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Report;
use crate::config::ExperimentConfig;
use crate::error::{CliError, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "gbf", version, about = "Graph basis function interpolation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of the normalized Laplacian.
    Spectrum(Flags),
    /// Interpolate a signal from its samples, with per-node errors.
    Interpolate(Flags),
    /// Norming report of a sampling set for a bandwidth.
    Norming(Flags),
    /// Quadrature weights, and the error on a signal if one is given.
    Quadrature(Flags),
    /// Frame bounds of a window, and windowed Fourier coefficients.
    Frame(Flags),
    /// Error-versus-N table over several GBF descriptors.
    Bench(Flags),
}

#[derive(Args)]
struct Flags {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Edge-list file (`n=<count>` header, then `i j w` lines).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Generator: path:n=, cycle:n=, complete:n=, grid:rows=,cols=, rgg:n=,radius=,seed=, reference.
    #[arg(long)]
    gen: Option<String>,
    /// GBF descriptor, e.g. diffusion:t=10 (repeatable for bench).
    #[arg(long)]
    gbf: Vec<String>,
    /// Sampling set: all, a node list, or random:N=<int>,seed=<int>.
    #[arg(long)]
    samples: Option<String>,
    /// Signal: eig:k=<int>, heat:t=<f>,src=<int>, or a file.
    #[arg(long)]
    signal: Option<String>,
    /// Bandwidth M.
    #[arg(long)]
    bandwidth: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; without it the main artifact goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Shift added off the support of a semi-definite GBF.
    #[arg(long)]
    augment: Option<f64>,
    /// Sample counts: a,b,c or start:stop:step.
    #[arg(long)]
    grid: Option<String>,
    /// 1-based frequencies for the frame command, or all.
    #[arg(long)]
    freqs: Option<String>,
}

impl Flags {
    fn resolve(self) -> Result<ExperimentConfig, CliError> {
        let flags = ExperimentConfig {
            graph: self.graph,
            gen: self.gen,
            gbf: self.gbf,
            samples: self.samples,
            signal: self.signal,
            bandwidth: self.bandwidth,
            seed: self.seed,
            out: self.out,
            augment: self.augment,
            grid: self.grid,
            freqs: self.freqs,
        };
        match self.config {
            Some(path) => Ok(ExperimentConfig::load(&path)?.merge(flags)),
            None => Ok(flags),
        }
    }
}

fn emit(report: Report, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        None => {
            if let Some((_, contents)) = report.files.first() {
                print!("{contents}");
            }
        }
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for (name, contents) in &report.files {
                let path = dir.join(name);
                fs::write(&path, contents)?;
                println!("wrote {}", path.display());
            }
            for line in &report.summary {
                println!("{line}");
            }
        }
    }
    Ok(())
}

type Driver = fn(&ExperimentConfig) -> Result<Report, CliError>;

fn run(command: Command) -> Result<(), CliError> {
    let (flags, driver): (Flags, Driver) = match command {
        Command::Spectrum(f) => (f, commands::spectrum),
        Command::Interpolate(f) => (f, commands::interpolate_cmd),
        Command::Norming(f) => (f, commands::norming),
        Command::Quadrature(f) => (f, commands::quadrature),
        Command::Frame(f) => (f, commands::frame),
        Command::Bench(f) => (f, commands::bench),
    };
    let cfg = flags.resolve()?;
    let report = driver(&cfg)?;
    emit(report, cfg.out.as_ref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::config("Usage", e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code)
        }
    }
}
