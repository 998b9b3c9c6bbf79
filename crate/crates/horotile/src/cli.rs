//! Command line interface.

use crate::*;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "horotile", version, about = "Verified tilings, distances and cusp areas of cusped hyperbolic 3-manifolds")]
pub struct Args {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 212)]
    pub precision: usize,
    /// Highest precision tried when an operation runs out of precision.
    #[arg(long, global = true, default_value_t = 1696)]
    pub max_precision: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Maximal number of tiles pulled by distance computations.
    #[arg(long, global = true, default_value_t = 200_000)]
    pub max_tiles: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Structured,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TileObject {
    Point,
    GeodesicWord,
    Cusp,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify the shapes of the complete structure.
    Certify { file: PathBuf },
    /// Print the developed fundamental polyhedron.
    DumpPolyhedron { file: PathBuf },
    /// Locate a point in the tiling by lifted tetrahedra.
    Trace {
        file: PathBuf,
        /// Four coordinates of a time-like vector (decimals or `[lo, hi]`).
        #[arg(long, num_args = 4, value_names = ["X0", "X1", "X2", "X3"], allow_negative_numbers = true)]
        point: Vec<String>,
    },
    /// Stream lifted tetrahedra ordered by distance to an object.
    Tile {
        file: PathBuf,
        #[arg(long, value_enum)]
        object: TileObject,
        /// Tetrahedron whose incenter is the point object.
        #[arg(long, default_value_t = 0)]
        tet: usize,
        /// Word in the generators for the geodesic object.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 0)]
        cusp: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Distance between two objects, or from one object to itself.
    Distance {
        file: PathBuf,
        /// One or two of `point:T`, `cusp:C`, `word:W`.
        #[arg(long, num_args = 1..=2, required = true)]
        objects: Vec<ObjectSpec>,
    },
    /// Maximal cusp area matrix.
    CuspAreaMatrix { file: PathBuf },
    /// Cusp areas grown at the same rate.
    UnbiasedAreas { file: PathBuf },
    /// Cusp areas maximized one after another.
    GreedyAreas {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        order: Vec<usize>,
    },
    /// Slopes of length at most 6.
    Slopes {
        file: PathBuf,
        /// Cusp areas (decimals or `[lo, hi]`); unbiased areas if omitted.
        #[arg(long, num_args = 1..)]
        areas: Option<Vec<String>>,
    },
    /// Check whether every Dehn filling is hyperbolic by the 6-Theorem.
    Check6Theorem { file: PathBuf },
}

impl Command {
    fn file(&self) -> &Path {
        match self {
            Command::Certify { file }
            | Command::DumpPolyhedron { file }
            | Command::Trace { file, .. }
            | Command::Tile { file, .. }
            | Command::Distance { file, .. }
            | Command::CuspAreaMatrix { file }
            | Command::UnbiasedAreas { file }
            | Command::GreedyAreas { file, .. }
            | Command::Slopes { file, .. }
            | Command::Check6Theorem { file } => file,
        }
    }
}

fn execute(cmd: &Command, s: &Session, max_tiles: usize) -> horotile_core::Result<Report> {
    match cmd {
        Command::Certify { .. } => Ok(certify_report(s)),
        Command::DumpPolyhedron { .. } => Ok(dump_polyhedron(s)),
        Command::Trace { point, .. } => {
            let x: [String; 4] = point.clone().try_into().map_err(|_| Error::Parse("--point takes 4 values".into()))?;
            trace_point(s, &x)
        }
        Command::Tile { object, tet, word, cusp, count, .. } => {
            let spec = match object {
                TileObject::Point => ObjectSpec::Point(*tet),
                TileObject::Cusp => ObjectSpec::Cusp(*cusp),
                TileObject::GeodesicWord => {
                    ObjectSpec::Word(word.clone().ok_or_else(|| Error::Parse("--word is required for geodesic-word".into()))?)
                }
            };
            tile(s, &spec, *count)
        }
        Command::Distance { objects, .. } => distance(s, objects, max_tiles),
        Command::CuspAreaMatrix { .. } => cusp_area_matrix(s, max_tiles),
        Command::UnbiasedAreas { .. } => unbiased_areas(s, max_tiles),
        Command::GreedyAreas { order, .. } => greedy_areas(s, order, max_tiles),
        Command::Slopes { areas, .. } => slopes(s, areas.as_deref(), max_tiles),
        Command::Check6Theorem { .. } => check_six_theorem(s, max_tiles),
    }
}

/// Runs a parsed command line and returns the rendered output.
pub fn run(args: &Args) -> Result<String, RunError> {
    let m = read_manifold(args.command.file())?;
    let (report, bits) = with_escalation(args.precision, args.max_precision.max(args.precision), |bits| {
        let s = prepare(&m, bits)?;
        execute(&args.command, &s, args.max_tiles)
    })?;
    Ok(match args.output {
        Output::Text => report.text,
        Output::Structured => {
            serde_json::to_string_pretty(&json!({"precision": bits, "result": report.json})).expect("json values serialize")
        }
    })
}
