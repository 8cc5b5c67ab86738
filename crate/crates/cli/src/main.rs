//! `fluctent` command-line front end.
//!
//! Exit status: 0 on success, 1 when `validate` finds a failing property,
//! 2 for usage, parse and input errors. Standard input is never read.

mod commands;
mod error;
mod output;
mod state_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fluctent::bipartite::DEFAULT_TOL_RANK;

use crate::commands::AnalyzeArgs;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "fluctent", version, about = "Bipartite entanglement from subsystem fluctuations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Schmidt spectrum, polarization fluctuations and entanglement measures of a pure state.
    Analyze {
        /// JSON state file with dim_q, dim_b and [re, im] amplitudes.
        #[arg(long)]
        state: PathBuf,
        /// Expected subsystem dimension (must match the file).
        #[arg(long)]
        dim_q: Option<usize>,
        /// Expected bath dimension (must match the file).
        #[arg(long)]
        dim_b: Option<usize>,
        /// Schmidt probabilities at or below this are dropped.
        #[arg(long, default_value_t = DEFAULT_TOL_RANK)]
        tol_rank: f64,
        /// Output JSON path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block linear entropy of the free-fermion chain for each filling and block size.
    FreeFermion {
        /// Comma-separated fillings in (0, 1).
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        nu: Vec<f64>,
        /// Largest block size.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m_max: u32,
        /// Output CSV path; the manifest goes to <out>.manifest.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// AKLT block spectrum, fluctuation and purity for block lengths 1..=l_max.
    Aklt {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        l_max: u32,
        /// Output CSV path; the manifest goes to <out>.manifest.json.
        #[arg(long)]
        out: PathBuf,
        /// Add the transfer-matrix cross-check column (l_max <= 12).
        #[arg(long)]
        with_oracle: bool,
    },
    /// Run the seeded property suite and print a JSON summary.
    Validate {
        #[arg(long, default_value_t = 2016)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        /// Output JSON path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { state, dim_q, dim_b, tol_rank, out } => commands::run_analyze(&AnalyzeArgs {
            state: &state,
            dim_q,
            dim_b,
            tol_rank,
            out: out.as_deref(),
        }),
        Command::FreeFermion { nu, m_max, out } => commands::run_free_fermion(&nu, m_max as usize, &out),
        Command::Aklt { l_max, out, with_oracle } => commands::run_aklt(l_max as usize, with_oracle, &out),
        Command::Validate { seed, samples, out } => commands::run_validate(seed, samples as usize, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
