mod commands;
mod error;
mod format;
mod grid;
mod select;
mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::FormulaChoice;
use error::{CliError, CliResult};
use grid::{GeometricGrid, LinearGrid};
use select::ModelArgs;

/// Exact counts and asymptotic estimates for weighted partition-type
/// generating functions.
#[derive(Parser, Debug)]
#[command(name = "subexp", version, about)]
struct Cli {
    /// Working precision in significant digits.
    #[arg(long, global = true, env = "SUBEXP_PRECISION", value_name = "DIGITS")]
    precision: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the poles, residues and constants of a model.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        /// Fail with exit status 3 if the spectrum is ineligible.
        #[arg(long)]
        require_eligible: bool,
    },
    /// Estimate log c_n.
    Predict {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "both")]
        formula: FormulaChoice,
        /// Report base-10 logarithms.
        #[arg(long)]
        log10: bool,
    },
    /// List the exact coefficients c_0..c_N, one "n c_n" pair per line.
    Exact {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "N", value_name = "N")]
        order: usize,
        /// Cross-check against an independent algorithm.
        #[arg(long)]
        oracle: bool,
    },
    /// Tabulate exact and predicted log c_n as CSV.
    Compare {
        #[command(flatten)]
        model: ModelArgs,
        /// Exact-counting order (defaults to the largest grid point).
        #[arg(long = "N", value_name = "N")]
        order: Option<usize>,
        /// Linear grid start:stop:step.
        #[arg(long)]
        grid: Option<LinearGrid>,
        /// Geometric grid start:stop:factor.
        #[arg(long)]
        geom: Option<GeometricGrid>,
        /// Report base-10 logarithms.
        #[arg(long)]
        log10: bool,
        /// Write the table here instead of stdout.
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Check the built-in constants.
    Verify,
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(digits) = cli.precision {
        subexp_core::hp::set_precision_digits(digits)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Spectrum { model, require_eligible } => {
            commands::spectrum(&mut out, &model.load()?, require_eligible)?
        }
        Command::Predict { model, n, formula, log10 } => {
            commands::predict(&mut out, &model.load()?, n, formula, log10)?
        }
        Command::Exact { model, order, oracle } => {
            commands::exact(&mut out, &model.load()?, order, oracle)?
        }
        Command::Compare { model, order, grid, geom, log10, output } => {
            if grid.is_none() && geom.is_none() {
                return Err(CliError::Usage("compare needs --grid or --geom".into()));
            }
            let points = grid::merge(grid.as_ref(), geom.as_ref());
            let selected = model.load()?;
            match output {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    commands::compare(&mut file, &selected, order, &points, log10)?;
                    file.flush()?;
                }
                None => commands::compare(&mut out, &selected, order, &points, log10)?,
            }
        }
        Command::Verify => {
            let result = verify::run(&mut out);
            out.flush()?;
            result?
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("subexp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
