//! `invgeom`: construct, verify, and census the inversion geometry of
//! finite projective spaces.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use invgeom::DEFAULT_BUDGET;

#[derive(Parser, Debug)]
#[command(name = "invgeom", version, about = "Inversion geometry of PG(n-1, q)")]
struct Cli {
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic
    #[arg(long)]
    p: u32,
    /// Degree of F_q over F_p
    #[arg(long, default_value_t = 1)]
    e: usize,
    /// Base modulus as a JSON array of F_p coefficients, little-endian
    #[arg(long)]
    base_poly: Option<String>,
    /// Extension modulus as a JSON array of F_q coefficients, each a
    /// little-endian F_p array (a plain integer array is accepted when e = 1)
    #[arg(long)]
    ext_poly: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SpaceArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Degree of L over F_q; the space is PG(n-1, q)
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build and verify the normal rational curve partition of PG(2^k-1, q)
    Construct {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        /// Output file (standard output when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a partition file
    Verify { file: PathBuf },
    /// Exhaustive censuses
    Census {
        #[arg(value_enum)]
        kind: CensusKind,
        #[command(flatten)]
        space: SpaceArgs,
        /// Subspace vector dimension for cs2
        #[arg(long)]
        m: Option<usize>,
    },
    /// Identity checks
    Check {
        #[command(subcommand)]
        check: CheckKind,
    },
    /// Write a spread of PG(n-1, q) as JSON
    ExportSpread {
        #[arg(value_enum)]
        kind: SpreadKind,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum CheckKind {
    /// The projection exponent identity for all valid k and x
    Psi {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        hp: usize,
        /// Samples of k and of x when exhaustive checking exceeds the budget
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusKind {
    /// Lines whose image under j is a line, compared with D
    SpreadBase,
    /// Lines of D fixed by j
    FixedLines,
    /// (m-1)-subspaces whose image is an (m-1)-subspace
    Cs2,
    /// Intersections S_a ∩ S_b^φ against the norm rule
    X4,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpreadKind {
    Desarguesian,
    Half,
    Scattered,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Construct { field, k, out } => commands::construct(&field, k, out.as_deref()),
        Command::Verify { file } => commands::verify(&file),
        Command::Census { kind, space, m } => commands::census(kind, &space, m),
        Command::Check {
            check:
                CheckKind::Psi {
                    space,
                    h,
                    hp,
                    trials,
                    seed,
                },
        } => commands::check_psi(&space, h, hp, trials, seed),
        Command::ExportSpread { kind, space, out } => {
            commands::export_spread(kind, &space, out.as_deref())
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
