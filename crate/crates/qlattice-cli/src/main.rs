//! Command-line front end: load families and states from JSON, run the
//! classification and contextuality analyses, and emit reports.
//!
//! Exit codes are part of the contract: 0 success, 2 parse/configuration
//! error, 3 dimension or validation error, 4 invalid density matrix.

mod commands;
mod table;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "qlattice",
    version,
    about = "Subspace-lattice analysis for finite-dimensional quantum systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the rank cutoff of the tolerance policy.
    #[arg(long, global = true)]
    rank_rtol: Option<f64>,

    /// Override the equality tolerance of the tolerance policy.
    #[arg(long, global = true)]
    eq_atol: Option<f64>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a subspace family under a density matrix.
    Analyze {
        /// Family document (JSON).
        #[arg(long)]
        family: PathBuf,
        /// Density matrix document (JSON).
        #[arg(long)]
        rho: PathBuf,
    },
    /// Reproduce a built-in example: independence-h6, totalness-h6,
    /// position, position-momentum, coherent.
    Example {
        name: String,
        /// Dimension for the generated families (default 3).
        #[arg(long)]
        d: Option<usize>,
        /// Seed of the coherent-family fiducial vector.
        #[arg(long)]
        fiducial_seed: Option<u64>,
    },
    /// Pentagram contextuality analysis in dimension three.
    Pentagram {
        /// Density matrix document; defaults to the maximally violating
        /// pure state.
        #[arg(long)]
        rho: Option<PathBuf>,
    },
    /// Build a finite-system family (position, position-momentum,
    /// coherent) and classify it.
    System {
        /// Family kind: position, position-momentum, or coherent.
        kind: String,
        /// Hilbert-space dimension (odd for coherent).
        #[arg(long)]
        d: usize,
        /// Seed of the fiducial vector for the coherent family.
        #[arg(long)]
        fiducial_seed: Option<u64>,
        /// File with the fiducial vector (JSON array of [re, im] pairs).
        #[arg(long)]
        fiducial_file: Option<PathBuf>,
        /// Density matrix document; defaults to the maximally mixed state.
        #[arg(long)]
        rho: Option<PathBuf>,
        /// Also write the constructed family document to this path.
        #[arg(long)]
        emit_family: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let options = commands::Options {
        rank_rtol: cli.rank_rtol,
        eq_atol: cli.eq_atol,
        format: cli.format,
        out: cli.out.clone(),
    };
    let result = match cli.command {
        Command::Analyze { family, rho } => commands::cmd_analyze(&family, &rho, &options),
        Command::Example {
            name,
            d,
            fiducial_seed,
        } => commands::cmd_example(&name, d, fiducial_seed, &options),
        Command::Pentagram { rho } => commands::cmd_pentagram(rho.as_deref(), &options),
        Command::System {
            kind,
            d,
            fiducial_seed,
            fiducial_file,
            rho,
            emit_family,
        } => commands::cmd_system(
            &kind,
            d,
            fiducial_seed,
            fiducial_file.as_deref(),
            rho.as_deref(),
            emit_family.as_deref(),
            &options,
        ),
    };
    if let Err(err) = result {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}
