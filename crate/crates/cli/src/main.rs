//! `cadc`: build, refine and query sign-invariant Open CADs of real
//! n-space from polynomial constraints.

use std::path::PathBuf;
use std::process::exit;

use clap::{Parser, Subcommand};

use cad_cli::{commands, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "cadc",
    version,
    about = "Exact incremental cylindrical algebraic decomposition",
    long_about = "Builds sign-invariant Open CADs of real n-space from polynomial \
constraints using the Lazard projection, refines them incrementally as \
constraints are added, and answers cell, location and sign queries over \
persisted state files."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a CAD from scratch and write the state file.
    Build {
        /// Comma-separated variable order, lowest first (e.g. x1,x2).
        #[arg(long)]
        vars: String,
        /// Polynomials: a file (one per line) or an inline `;`-separated list.
        #[arg(long, allow_hyphen_values = true)]
        polys: String,
        /// Output state file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Add one polynomial to an existing state, incrementally.
    Add {
        #[arg(long)]
        state: PathBuf,
        /// The new polynomial constraint.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// List cells with their bounds and samples.
    Cells {
        #[arg(long)]
        state: PathBuf,
        /// Restrict to one level (1-based).
        #[arg(long)]
        level: Option<usize>,
        /// Output format: text or json.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Verify a state: recompute oracle, sign-invariance probes,
    /// cylindricity.
    Check {
        #[arg(long)]
        state: PathBuf,
    },
    /// Time incremental refinement against from-scratch recomputation on
    /// seeded random polynomial pairs, checking cell-set equivalence.
    Bench {
        /// Number of variables: 2 or 3.
        #[arg(long)]
        dims: usize,
        /// Number of random pairs.
        #[arg(long, default_value_t = 60)]
        count: usize,
        /// Maximum terms per polynomial (default 5 for dims 2, 4 for dims 3).
        #[arg(long)]
        terms: Option<usize>,
        /// Maximum total degree (default 4 for dims 2, 3 for dims 3).
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output format: table or json.
        #[arg(long, default_value = "table")]
        format: String,
    },
    /// Render a 2-variable state as SVG (curves, projection roots, stack
    /// boundaries, cell numbers) or CSV (cell table).
    Plot {
        #[arg(long)]
        state: PathBuf,
        /// Output file; the extension picks the format (.svg or .csv).
        #[arg(long)]
        out: PathBuf,
        /// Viewing window xmin,xmax,ymin,ymax.
        #[arg(long, default_value = "-2,2,-2,2", allow_hyphen_values = true)]
        window: String,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    exit(0);
                }
                _ => {
                    eprint!("{e}");
                    exit(EXIT_USAGE);
                }
            }
        }
    };
    let result = match &cli.cmd {
        Command::Build { vars, polys, out } => commands::cmd_build(vars, polys, out),
        Command::Add { state, poly, out } => commands::cmd_add(state, poly, out),
        Command::Cells {
            state,
            level,
            format,
        } => commands::cmd_cells(state, *level, format),
        Command::Check { state } => commands::cmd_check(state),
        Command::Bench {
            dims,
            count,
            terms,
            degree,
            seed,
            format,
        } => commands::cmd_bench(*dims, *count, *terms, *degree, *seed, format),
        Command::Plot { state, out, window } => commands::cmd_plot(state, out, window),
    };
    match result {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            exit(e.exit_code());
        }
    }
}
