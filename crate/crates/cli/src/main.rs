//! `knotcalc`: generate diagrams, compute invariants, apply moves, build
//! theta-curve surfaces and rerun the pretzel mutant computation.

mod cache;
mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "knotcalc", version, about = "Knots, links and theta-curves: moves, surfaces and quantum invariants")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest cut width the quantum engine may sweep.
    #[arg(long, global = true, default_value_t = 12)]
    max_cut_width: usize,
    /// Largest number of transfer states kept between two events.
    #[arg(long, global = true, default_value_t = 20_000_000)]
    max_states: usize,
    /// Largest crossing count accepted by the state-sum oracles.
    #[arg(long, global = true, default_value_t = 24)]
    max_oracle_crossings: usize,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a diagram as JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Output file (stdout if omitted).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Compute an invariant of a diagram file.
    Invariant {
        file: PathBuf,
        #[arg(value_enum)]
        name: InvariantName,
        /// Two component labels for `lk`, e.g. `1,2`.
        #[arg(long)]
        components: Option<String>,
        #[command(flatten)]
        quantum: QuantumArgs,
    },
    /// Colored invariants of two knots, their difference and its order of
    /// vanishing at q = 1.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        quantum: QuantumArgs,
    },
    /// Apply a local move to a diagram.
    Move {
        #[arg(value_enum)]
        kind: MoveKind,
        file: PathBuf,
        /// Crossing event index for `crossing-change`.
        #[arg(long)]
        index: Option<usize>,
        /// Slice position before which a model is attached.
        #[arg(long)]
        cut: Option<usize>,
        /// Host strand positions at the cut, e.g. `0,2,3`.
        #[arg(long)]
        strands: Option<String>,
        /// Attach the mirror image of the model.
        #[arg(long)]
        mirror: bool,
        /// Model order for `ck`.
        #[arg(long)]
        order: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Disk/band surfaces of a theta-curve.
    Surface {
        file: PathBuf,
        #[arg(value_enum)]
        action: SurfaceAction,
        /// Start from the canonical surface instead of the blackboard one.
        #[arg(long)]
        canonical: bool,
        /// Extra full twists per edge, e.g. `1,1,-1`.
        #[arg(long, allow_hyphen_values = true)]
        twists: Option<String>,
        /// Half-twist flags per edge in -1..=1, e.g. `0,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        half: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Scripted reproductions.
    Repro {
        #[arg(value_enum)]
        target: ReproTarget,
    },
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Pretzel link with signed half-twist counts per tassel.
    Pretzel {
        #[arg(required = true, allow_negative_numbers = true)]
        params: Vec<i64>,
        /// Vertical tassels instead of the narrow sideways sweep.
        #[arg(long)]
        vertical: bool,
    },
    /// Closure of a braid word such as `"s1 s1 -s2"`.
    Braid {
        word: String,
        #[arg(long)]
        strands: Option<usize>,
    },
    /// The planar theta-curve.
    ThetaTrivial,
    /// Theta-curve given by a three-strand braid word.
    ThetaBraid { word: String },
    /// Random theta-curve braid with the given number of crossings.
    RandomTheta {
        #[arg(long, default_value_t = 8)]
        crossings: usize,
    },
    /// Vertex connected sum of two theta-curve files.
    VertexSum { first: PathBuf, second: PathBuf },
}

#[derive(Args, Debug, Clone)]
struct QuantumArgs {
    /// N of sl_N.
    #[arg(long, default_value_t = 2)]
    algebra: usize,
    /// Partition, e.g. `2,1`.
    #[arg(long, default_value = "1")]
    color: String,
    /// Standard tableau rows separated by `/`, e.g. `1,3/2`.
    #[arg(long)]
    tableau: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InvariantName {
    Lk,
    V2,
    V3,
    Bracket,
    Conway,
    Quantum,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum MoveKind {
    CrossingChange,
    Delta,
    ClaspPass,
    Ck,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SurfaceAction {
    Pairing,
    Canonical,
    Boundary,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReproTarget {
    #[value(name = "theorem-1.8")]
    Theorem18,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.config;
    let config = RunConfig {
        format: c.format,
        max_cut_width: c.max_cut_width,
        max_states: c.max_states,
        max_oracle_crossings: c.max_oracle_crossings,
        seed: c.seed,
    };
    match commands::run(cli.command, &config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
