//! `rqs`: experiments over random quantum state samplers.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rqs_core::experiment::{
    run_bloch_cloud, run_bures_sweep, run_ginibre_sweep, run_hsd_experiment, run_table1,
    ExperimentConfig, Method, SweepResult, TABLE1_METHODS,
};
use rqs_core::report::{self, Format, ReportError};
use rqs_core::samplers::DEFAULT_MAX_ATTEMPTS;
use rqs_core::stats::DEFAULT_BINS;
use rqs_core::Error;

const EXIT_IO: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "rqs",
    version,
    about = "Random quantum state sampling experiments"
)]
struct Cli {
    /// Worker threads (defaults to all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// HSD mean, std and histogram for one method and dimension.
    HsdStats {
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long)]
        dim: usize,
        /// Left dimension d' of the Ginibre factor (ginibre only).
        #[arg(long)]
        dim_left: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        pairs: u64,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        /// Also write the histogram (CSV) to this file.
        #[arg(long)]
        hist: Option<PathBuf>,
        /// Attempt cap for the Bloch rejection sampler.
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Bloch-ball coordinates of random qubit states.
    BlochCloud {
        #[arg(long, value_parser = parse_method)]
        method: Method,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2000)]
        states: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Uniform / Normal / Standard HSD statistics for d = 2, 4, ..., 16.
    Table1 {
        #[arg(long, default_value_t = 100_000)]
        pairs: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Ginibre HSD statistics over a grid of (d, d').
    GinibreSweep {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 8])]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4, 8, 16, 32])]
        dims_left: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        pairs: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Bures HSD mean and std band over dimensions.
    BuresSweep {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        pairs: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Run(#[from] Error),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("{0}")]
    Config(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Report(ReportError::Io(e))
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Run(Error::Contract(_)) | CliError::Config(_) => EXIT_CONFIG,
            CliError::Run(Error::Numerical(_) | Error::RejectionExhausted { .. }) => EXIT_NUMERICAL,
            CliError::Report(_) => EXIT_IO,
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_sweep(common: &Common, sweep: &SweepResult) -> Result<(), CliError> {
    let mut out = open_output(common.out.as_deref())?;
    match common.format {
        Format::Csv => report::write_stats_csv(&mut out, &sweep.rows)?,
        Format::Json => report::write_sweep_json(&mut out, sweep)?,
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::HsdStats {
            method,
            dim,
            dim_left,
            pairs,
            bins,
            hist,
            max_attempts,
            common,
        } => {
            let cfg = ExperimentConfig {
                method,
                d: dim,
                d_prime: dim_left,
                pairs,
                seed: common.seed,
                bins,
                max_attempts,
            };
            let stats = run_hsd_experiment(&cfg)?;
            let row = report::stats_row(method, dim, dim_left, &stats);
            let mut out = open_output(common.out.as_deref())?;
            match common.format {
                Format::Csv => report::write_stats_csv(&mut out, std::slice::from_ref(&row))?,
                Format::Json => report::write_stats_json(&mut out, &row, &stats)?,
            }
            out.flush()?;
            if let Some(path) = hist {
                let mut h = BufWriter::new(File::create(path)?);
                report::write_histogram_csv(&mut h, &stats)?;
                h.flush()?;
            }
        }
        Command::BlochCloud {
            method,
            dim,
            states,
            max_attempts,
            common,
        } => {
            let mut cfg = ExperimentConfig::new(method, dim, 1, common.seed);
            cfg.max_attempts = max_attempts;
            let cloud = run_bloch_cloud(&cfg, states)?;
            let mut out = open_output(common.out.as_deref())?;
            match common.format {
                Format::Csv => report::write_cloud_csv(&mut out, &cloud)?,
                Format::Json => report::write_cloud_json(&mut out, &cloud)?,
            }
            out.flush()?;
        }
        Command::Table1 { pairs, common } => {
            let sweep = run_table1(common.seed, pairs)?;
            write_sweep(&common, &sweep)?;
            if common.out.is_some() {
                print!("{}", report::format_table(&sweep, &TABLE1_METHODS));
            }
        }
        Command::GinibreSweep {
            dims,
            dims_left,
            pairs,
            common,
        } => {
            let sweep = run_ginibre_sweep(common.seed, pairs, &dims, &dims_left)?;
            write_sweep(&common, &sweep)?;
            for line in sweep.ginibre_diagnostics() {
                eprintln!("{line}");
            }
        }
        Command::BuresSweep {
            dims,
            pairs,
            common,
        } => {
            let sweep = run_bures_sweep(common.seed, pairs, &dims)?;
            write_sweep(&common, &sweep)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_CONFIG);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {}", CliError::Config(e.to_string()));
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
