use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use centropy_cli::{cmd_cda, cmd_ce, cmd_ci, cmd_sim, ingest, CliError, OutputFormat};

/// Copula entropy toolkit: nonparametric dependence and conditional
/// independence estimation, with invariant feature selection across
/// domains.
#[derive(Parser)]
#[command(name = "centropy", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Neighbor count of the entropy estimator
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Master seed; all randomness (tie-breaking, sampling, permutations)
    /// derives from it
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output format: json or csv
    #[arg(long, default_value = "json")]
    output: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Copula entropy of a set of columns (nats; ~0 means independent)
    Ce {
        /// Input CSV with a header row
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated column names (at least two)
        #[arg(long, value_delimiter = ',', required = true)]
        cols: Vec<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Conditional-dependence strength of x and y given z (nats; ~0 means
    /// conditionally independent)
    Ci {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Rank all feature columns by conditional dependence with the outcome
    /// given the context (domain) column
    Cda {
        #[arg(long)]
        input: PathBuf,
        /// Context (domain/intervention) column
        #[arg(long)]
        context: String,
        /// Outcome column
        #[arg(long)]
        outcome: String,
        /// Permutation count for p-values (0 = skip)
        #[arg(long, default_value_t = 0)]
        perms: usize,
        /// Mark features with p-value <= alpha as selected (needs --perms;
        /// defaults to 0.05 when --perms is set)
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a built-in simulation pipeline (exp1 or exp2) and report
    /// per-feature conditional-dependence strengths
    Sim {
        /// Pipeline id: exp1 (Gaussian domains) or exp2 (Clayton domains)
        id: String,
        /// Permutation count for p-values (0 = skip)
        #[arg(long, default_value_t = 0)]
        perms: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (report, common) = match &cli.command {
        Command::Ce {
            input,
            cols,
            common,
        } => {
            let table = ingest(input)?;
            (
                cmd_ce(
                    &table,
                    cols,
                    common.k,
                    common.seed,
                    &input.to_string_lossy(),
                )?,
                common,
            )
        }
        Command::Ci {
            input,
            x,
            y,
            z,
            common,
        } => {
            let table = ingest(input)?;
            (
                cmd_ci(
                    &table,
                    x,
                    y,
                    z,
                    common.k,
                    common.seed,
                    &input.to_string_lossy(),
                )?,
                common,
            )
        }
        Command::Cda {
            input,
            context,
            outcome,
            perms,
            alpha,
            common,
        } => {
            let table = ingest(input)?;
            (
                cmd_cda(
                    &table,
                    context,
                    outcome,
                    common.k,
                    common.seed,
                    *perms,
                    *alpha,
                    &input.to_string_lossy(),
                )?,
                common,
            )
        }
        Command::Sim { id, perms, common } => (cmd_sim(id, common.k, common.seed, *perms)?, common),
    };
    let format: OutputFormat = common.output.parse()?;
    let rendered = report.render(format)?;
    match &common.out {
        Some(path) => std::fs::File::create(path)
            .and_then(|mut f| f.write_all(rendered.as_bytes()))
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
