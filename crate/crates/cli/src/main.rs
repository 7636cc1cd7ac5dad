//! `mosaic`: validate, enumerate, classify and transform knot mosaics and
//! grid diagrams.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "mosaic", version, about = "Knot mosaics and their moves")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for enumeration and orbits (results do not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a mosaic file is a knot mosaic.
    Validate { mosaic: PathBuf },
    /// List or count all knot n-mosaics.
    Enumerate {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Partition the knot n-mosaics into orbits of the move group.
    Orbits {
        #[arg(short)]
        n: usize,
        /// Write the census file here.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Decide whether two mosaics are related by moves.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Same-side orbit lookup, no padding.
        #[arg(short = 'n', conflicts_with_all = ["pad", "depth"])]
        same_side: bool,
        /// Largest padding tried by the certificate search.
        #[arg(long, default_value_t = 2)]
        pad: usize,
        /// Longest certificate considered.
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// States stored per padding before giving up.
        #[arg(long, default_value_t = 4_000_000)]
        max_states: usize,
        /// Write the certificate here instead of printing it.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Five-fold zoom of a mosaic.
    Zoom { mosaic: PathBuf },
    /// Draw a grid diagram as a mosaic.
    Grid2mosaic { grid: PathBuf },
    /// Read a grid diagram off a mosaic.
    Mosaic2grid { mosaic: PathBuf },
    /// Apply an elementary move to a grid diagram.
    Gridmove {
        grid: PathBuf,
        /// e.g. `cyclic:cols:+`, `commute:rows:2`, `stabilize:3:X:NW`, `destabilize:2:4`.
        #[arg(long = "move")]
        mv: String,
        /// Also search for a mosaic-move certificate of the move.
        #[arg(long)]
        certify: bool,
    },
    /// Component count and normalized bracket.
    Fingerprint { mosaic: PathBuf },
    /// Draw a mosaic with box characters.
    Render { mosaic: PathBuf },
    /// Bounds on mosaic numbers from computed censuses and witnesses.
    MosaicNumber {
        #[arg(long = "witness", required = true, num_args = 1..)]
        witnesses: Vec<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli.command, cli.jobs);
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!("{}", report.json),
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", serde_json::json!({ "error": e.to_string() })),
            }
            ExitCode::from(2)
        }
    }
}
