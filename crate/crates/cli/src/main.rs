//! `gaia-kit`: command-line front end to the engine.
//!
//! Every command prints one JSON object with sorted keys on standard
//! output. Exit status is 0 on success, 1 when the computation gives a
//! negative answer the caller asked to be told about, and 2 on bad input.

mod input;
mod learning;
mod lifting;
mod structure;
mod systems;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "gaia-kit", version, about = "Finite categories, simplicial sets, learners and coalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The input as a positional path or `--input`.
#[derive(Args, Clone)]
pub struct Source {
    #[arg(value_name = "FILE")]
    path: Option<PathBuf>,
    #[arg(long = "input", value_name = "FILE", conflicts_with = "path")]
    input: Option<PathBuf>,
}

impl Source {
    pub fn get(&self) -> Result<&PathBuf, Failure> {
        self.path.as_ref().or(self.input.as_ref()).ok_or_else(|| Failure::Input("no input file given".into()))
    }
}

#[derive(Args, Clone, Copy)]
pub struct Search {
    /// search node limit; defaults to $GAIA_KIT_BUDGET or 2000000
    #[arg(long)]
    budget: Option<u64>,
    /// exit with status 1 when no solution exists
    #[arg(long)]
    expect_solution: bool,
}

impl Search {
    pub fn budget(&self) -> Result<u64, Failure> {
        if let Some(b) = self.budget {
            return Ok(b);
        }
        match std::env::var("GAIA_KIT_BUDGET") {
            Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("GAIA_KIT_BUDGET=`{v}` is not a count"))),
            Err(_) => Ok(gaia_core::DEFAULT_BUDGET),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MigrationMode {
    Delta,
    Sigma,
    Pi,
}

#[derive(Subcommand)]
enum Command {
    /// Check any supported file against its axioms.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Nerve of a category: simplex counts, identities and inner horns.
    Nerve {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
        /// print the nerve as a simplicial-set file instead of a summary
        #[arg(long)]
        emit: bool,
    },
    /// Enumerate fillers of one horn, given by its faces.
    FillHorn {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// `i=name` for each face `d_i` other than `d_k`
        #[arg(long = "face", value_name = "I=NAME")]
        faces: Vec<String>,
        /// nerve truncation for category inputs (at least `n`)
        #[arg(long)]
        truncation: Option<usize>,
        #[command(flatten)]
        search: Search,
    },
    /// Check every horn up to a dimension for fillers.
    KanCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        truncation: usize,
        /// highest horn dimension; defaults to the truncation
        #[arg(long)]
        dim: Option<usize>,
        /// exit with status 1 when some horn has no filler
        #[arg(long)]
        expect_solution: bool,
    },
    /// All diagonals of a lifting square of set maps or of functors.
    Lift {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        mu: PathBuf,
        #[arg(long)]
        nu: PathBuf,
        #[command(flatten)]
        search: Search,
    },
    /// Answer a pattern query against an instance by lifting.
    Query {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        /// schema file; defaults to the instance's own schema
        #[arg(long)]
        schema: Option<PathBuf>,
        #[command(flatten)]
        search: Search,
    },
    /// Migrate an instance along a functor.
    Migrate {
        #[arg(long, value_enum)]
        mode: MigrationMode,
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Train a pipeline on a CSV dataset.
    Train {
        #[command(flatten)]
        source: Source,
        /// CSV rows: inputs followed by targets
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 1)]
        epochs: usize,
        /// required for stochastic optimizers
        #[arg(long)]
        seed: Option<u64>,
        /// overrides the pipeline's learning rate
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Compare the backprop learner of a fused pipeline with the composite of its layers.
    CheckFunctoriality {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// finite-difference step of the gradient check
        #[arg(long, default_value_t = 1e-6)]
        step: f64,
        /// relative tolerance of the gradient check
        #[arg(long, default_value_t = 1e-5)]
        gradient_tolerance: f64,
    },
    /// Permutation equivariance of random transformer blocks.
    Equivariance {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// number of tokens `n`
        #[arg(long, default_value_t = 3)]
        tokens: usize,
        #[arg(long, default_value_t = 1)]
        heads: usize,
        #[arg(long, default_value_t = 2)]
        head_size: usize,
        #[arg(long, default_value_t = 4)]
        hidden: usize,
        #[arg(long, default_value_t = 1)]
        blocks: usize,
        /// sampled permutations; all of them when omitted and `n ≤ 6`
        #[arg(long)]
        permutations: Option<usize>,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Greatest bisimulation between two transition systems.
    Bisim {
        left: PathBuf,
        /// defaults to the left system
        right: Option<PathBuf>,
    },
    /// Fixed point of an affine map `v ↦ A v + b` by metric coinduction.
    CoinductiveSolve {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iterations: usize,
    },
    /// Isometry of the metric Yoneda embedding, pair by pair.
    YonedaCheck {
        #[command(flatten)]
        source: Source,
    },
    /// Integer homology of a simplicial set, a category or an instance.
    Homology {
        #[command(flatten)]
        source: Source,
        /// nerve truncation for category and instance inputs
        #[arg(long, default_value_t = 3)]
        truncation: usize,
        /// write the boundary matrices as `n row col value` lines
        #[arg(long, value_name = "FILE")]
        triplets: Option<PathBuf>,
        /// include the nondegenerate cells and their faces
        #[arg(long)]
        cells: bool,
    },
}

#[derive(Debug)]
pub enum Failure {
    /// unreadable or unparsable input, or input violating the command's contract
    Input(String),
    /// the computation itself failed
    Domain(String),
}

impl From<gaia_core::Error> for Failure {
    fn from(e: gaia_core::Error) -> Self {
        use gaia_core::Error::*;
        match e {
            Budget(_) | Capacity { .. } | NonContraction { .. } => Failure::Domain(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// A report and whether it counts as success.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
}

impl Outcome {
    pub fn ok(report: Value) -> Self {
        Outcome { report, ok: true }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Validate { source } => structure::validate(source.get()?),
        Command::Nerve { source, truncation, emit } => structure::nerve(source.get()?, truncation, emit),
        Command::FillHorn { source, n, k, faces, truncation, search } => {
            structure::fill_horn(source.get()?, n, k, &faces, truncation, search)
        }
        Command::KanCheck { source, truncation, dim, expect_solution } => {
            structure::kan_check(source.get()?, truncation, dim, expect_solution)
        }
        Command::Homology { source, truncation, triplets, cells } => {
            structure::homology(source.get()?, truncation, triplets.as_deref(), cells)
        }
        Command::Lift { f, p, mu, nu, search } => lifting::lift([&f, &p, &mu, &nu], search),
        Command::Query { instance, pattern, schema, search } => {
            lifting::query(&instance, &pattern, schema.as_deref(), search)
        }
        Command::Migrate { mode, functor, instance, budget } => {
            let search = Search { budget, expect_solution: false };
            lifting::migrate(mode, &functor, &instance, search.budget()?)
        }
        Command::Train { source, data, epochs, seed, epsilon } => {
            learning::train(source.get()?, &data, epochs, seed, epsilon)
        }
        Command::CheckFunctoriality { source, samples, seed, tolerance, step, gradient_tolerance } => {
            learning::check_functoriality(source.get()?, samples, seed, tolerance, step, gradient_tolerance)
        }
        Command::Equivariance { seed, dim, tokens, heads, head_size, hidden, blocks, permutations, tolerance } => {
            let shape = learning::BlockShape { dim, tokens, heads, head_size, hidden, blocks };
            learning::equivariance(shape, seed, permutations, tolerance)
        }
        Command::Bisim { left, right } => systems::bisim(&left, right.as_deref()),
        Command::CoinductiveSolve { source, tolerance, max_iterations } => {
            systems::coinductive_solve(source.get()?, tolerance, max_iterations)
        }
        Command::YonedaCheck { source } => systems::yoneda_check(source.get()?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            println!("{}", outcome.report);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(msg)) => {
            println!("{}", serde_json::json!({ "error": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
