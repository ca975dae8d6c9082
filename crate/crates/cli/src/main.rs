//! Command-line front end of slopekit.

mod commands;
mod svg;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "slopekit", version, about = "Periodicity directions of two-dimensional tiling systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackgroundChoice {
    Placeholder,
    TwoTile,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a tileset and, given a patch, list its violations.
    Validate {
        tileset: PathBuf,
        patch: Option<PathBuf>,
    },
    /// Decide periodicity along the vector (P, Q).
    Periodic {
        tileset: PathBuf,
        #[arg(allow_hyphen_values = true)]
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        /// Strip-node budget; defaults to SLOPEKIT_BUDGET or the built-in limit.
        #[arg(long)]
        budget: Option<u64>,
        /// Also write the witness to this file.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Search for slopes with bounded numerator, denominator and multiple.
    Slopes {
        tileset: PathBuf,
        #[arg(long, default_value_t = 2)]
        slope_bound: u32,
        #[arg(long, default_value_t = 2)]
        multiple_bound: u32,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Compile a Turing machine to Wang tiles.
    CompileTm {
        machine: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tile a rectangle simulating a machine on an input.
    Rect {
        machine: String,
        /// Input word; empty by default.
        #[arg(long, default_value = "")]
        input: String,
        /// Tape cells between the two border columns.
        #[arg(long)]
        width: usize,
        /// Rows, one per step.
        #[arg(long)]
        time: usize,
        /// Search-step budget.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Assemble the layered construction for a machine.
    Construct {
        machine: String,
        #[arg(long, value_enum, default_value_t = BackgroundChoice::Placeholder)]
        background: BackgroundChoice,
        /// Upper bound on the tile count.
        #[arg(long)]
        max_tiles: Option<u128>,
        /// Target slope `P/Q`, `N` or `inf`; the system is mapped from the base quadrant.
        #[arg(long, allow_hyphen_values = true)]
        slope: Option<String>,
        /// Write the tileset here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write a patch of the intended tiling here.
        #[arg(long)]
        patch_out: Option<PathBuf>,
        /// Square size of the patch.
        #[arg(long, default_value_t = 8)]
        square: i64,
        /// Offset between neighbouring strips of the patch.
        #[arg(long, default_value_t = 4)]
        offset: i64,
        /// Patch width and height in cells.
        #[arg(long, default_value_t = 17)]
        size: i64,
    },
    /// Draw a patch or witness as SVG.
    Render {
        input: PathBuf,
        out: PathBuf,
        #[arg(long, default_value_t = 16)]
        cell_size: u32,
        /// Tileset the input refers to; required for patches.
        #[arg(long)]
        tileset: Option<PathBuf>,
        /// Window drawn from a witness.
        #[arg(long, default_value_t = 8)]
        width: i64,
        #[arg(long, default_value_t = 8)]
        height: i64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: slopekit::Error,
    },
    #[error(transparent)]
    Library(#[from] slopekit::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 when a budget or size bound ran out, 1 for every other failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Library(e) | CliError::Input { source: e, .. }
                if e.is_budget() || matches!(e, slopekit::Error::AlphabetTooLarge { .. }) =>
            {
                2
            }
            _ => 1,
        }
    }
}

/// Text for standard output and the exit code of a completed analysis.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Validate { tileset, patch } => commands::validate(&tileset, patch.as_deref()),
        Command::Periodic {
            tileset,
            p,
            q,
            budget,
            witness_out,
        } => commands::periodic(&tileset, p, q, budget, witness_out.as_deref()),
        Command::Slopes {
            tileset,
            slope_bound,
            multiple_bound,
            budget,
            format,
        } => commands::slopes(&tileset, slope_bound, multiple_bound, budget, format == ReportFormat::Json),
        Command::CompileTm { machine, out } => commands::compile_tm(&machine, out.as_deref()),
        Command::Rect {
            machine,
            input,
            width,
            time,
            budget,
        } => commands::rect(&machine, &input, width, time, budget),
        Command::Construct {
            machine,
            background,
            max_tiles,
            slope,
            out,
            patch_out,
            square,
            offset,
            size,
        } => commands::construct(commands::ConstructArgs {
            machine: &machine,
            two_tile: background == BackgroundChoice::TwoTile,
            max_tiles,
            slope: slope.as_deref(),
            out: out.as_deref(),
            patch_out: patch_out.as_deref(),
            square,
            offset,
            size,
        }),
        Command::Render {
            input,
            out,
            cell_size,
            tileset,
            width,
            height,
        } => commands::render(&input, &out, cell_size, tileset.as_deref(), width, height),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
