use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use crepant_kit::group_rep::CyclicAction;
use crepant_kit::report::{analyze, molien, thread_pool_from_env};

/// Exact verification of crepant resolutions of C^n/Z_d.
#[derive(Debug, Parser)]
#[command(name = "crepant-kit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// ANSI colors in text output.
    #[arg(long)]
    color: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every check on C^n/Z_d with the scalar action.
    Analyze {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        /// Must describe the scalar action if given.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        weights: Option<Vec<i64>>,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Covariant Hilbert series of a diagonal Z/d action, with the Molien cross-check.
    Molien {
        #[arg(long)]
        d: u32,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required_unless_present = "n")]
        weights: Option<Vec<i64>>,
        /// Scalar action on C^n when --weights is absent.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        max_degree: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn emit(out: &OutputArgs, text: String, json: String) -> anyhow::Result<()> {
    let body = match out.format {
        Format::Text => text,
        Format::Json => json + "\n",
    };
    match &out.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Exit code of a completed run; errors here are usage or precondition
/// failures.
fn run(cli: Cli) -> anyhow::Result<i32> {
    let pool = thread_pool_from_env();
    match cli.command {
        Command::Analyze {
            n,
            d,
            weights,
            max_degree,
            out,
        } => {
            if let Some(w) = weights {
                let action = CyclicAction::new(d, &w)?;
                if !action.is_scalar() || action.dim() != n {
                    bail!("analyze supports only the scalar action on C^{n}; got {action}");
                }
            }
            let report = pool.install(|| analyze(n, d, max_degree))?;
            emit(&out, report.to_text(out.color), report.to_json())?;
            Ok(report.exit_code())
        }
        Command::Molien {
            d,
            weights,
            n,
            max_degree,
            out,
        } => {
            let action = match (weights, n) {
                (Some(w), _) => CyclicAction::new(d, &w)?,
                (None, Some(n)) => CyclicAction::scalar(d, n)?,
                (None, None) => bail!("--weights or --n is required"),
            };
            let report = pool.install(|| molien(&action, max_degree))?;
            emit(&out, report.to_text(out.color), report.to_json())?;
            Ok(report.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
