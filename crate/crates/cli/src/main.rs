//! `tractable-dyn`: command-line front end for `tractable-core`.

mod commands;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::CliError;

#[derive(Debug, Parser)]
#[command(name = "tractable-dyn", version, about = "Basic sets, Markov measures and tractable approximations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file (single-output commands) or directory (approximation commands).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basic sets, terminal classes, transient elements and their order.
    RelationAnalyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// Composition `S∘R`: first apply `--input` (R), then `--then` (S).
    ///
    /// The result holds `(i, k)` whenever `(i, j)` is in R and `(j, k)` is in S
    /// for some `j`. Both files must list the same elements in the same order.
    RelationCompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        then: PathBuf,
    },
    /// Tractability report of the subshift of a stochastic cover.
    ///
    /// With `--simulate T` a path of length T is sampled from the uniform
    /// start and checked for genericity on words of length ≤ `--words`.
    /// `--format csv` writes the word frequency table instead of the report.
    SubshiftReport {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        simulate: Option<u64>,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        words: u64,
    },
    /// Basic-set correspondence of a two-alphabet model.
    ModelCorrespondence {
        #[arg(long)]
        input: PathBuf,
    },
    /// Shift-like approximation of a sliding-block code.
    ///
    /// Writes `gamma.json`, `report.json` and `cylinders.csv` into `--out`,
    /// plus `shadow.csv` when `--prefix` is given.
    BlockmapApprox {
        #[arg(long)]
        input: PathBuf,
        /// Length of the image words.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Prefix to shadow, as digits (dot-separated when N > 10).
        #[arg(long)]
        prefix: Option<String>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
    },
    /// Non-degenerate simplicial approximation of an interval map.
    ///
    /// Reads a system file, or a complex with `--samples` of a Lipschitz map.
    /// Writes `system.json`, `report.json` and `plot.svg` into `--out`.
    PlmapApprox {
        /// System file with `K`, `Kstar` and `vmap`.
        #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
        input: Option<PathBuf>,
        /// Complex file, required with `--samples`.
        #[arg(long, requires = "samples")]
        complex: Option<PathBuf>,
        /// Samples file of a Lipschitz map, rounded off onto `--complex`.
        #[arg(long, requires = "complex")]
        samples: Option<PathBuf>,
        /// Repair a degenerate vertex map instead of rejecting it.
        #[arg(long)]
        repair: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let c = &cli.common;
    match cli.command {
        Command::RelationAnalyze { input } => commands::relation_analyze(&input, c),
        Command::RelationCompose { input, then } => commands::relation_compose(&input, &then, c),
        Command::SubshiftReport { input, simulate, words } => {
            commands::subshift_report(&input, simulate.map(|t| t as usize), words as usize, c)
        }
        Command::ModelCorrespondence { input } => commands::model_correspondence(&input, c),
        Command::BlockmapApprox { input, n, prefix, depth } => {
            commands::blockmap_approx(&input, n as usize, prefix.as_deref(), depth as usize, c)
        }
        Command::PlmapApprox { input, complex, samples, repair } => {
            let source = match (input, complex, samples) {
                (Some(system), _, _) => commands::PlSource::System(system),
                (None, Some(complex), Some(samples)) => commands::PlSource::Samples { complex, samples },
                _ => unreachable!("clap enforces the input combinations"),
            };
            commands::plmap_approx(&source, repair, c)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
