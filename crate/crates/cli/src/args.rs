use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Sphere models, V-algebras, their duality, and proof checking for
/// variably strict conditional logics.
///
/// Exit status: 0 on success, 1 when a check fails or a countermodel is
/// found, 2 on usage or input errors, 3 on an internal invariant breach.
#[derive(Parser, Debug)]
#[command(name = "lewiskit", version)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a formula and print it with minimal parentheses.
    Parse {
        #[arg(long)]
        formula: String,
    },
    /// Evaluate formulas in a sphere model.
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, required = true)]
        formula: Vec<String>,
    },
    /// Report the model classes a sphere model belongs to; with --logic,
    /// require the classes of its axioms; with --formula, require validity.
    ModelCheck {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        logic: Option<String>,
        #[arg(long)]
        formula: Vec<String>,
    },
    /// Check the V-algebra equations and, optionally, variety membership.
    AlgebraCheck {
        #[arg(long)]
        algebra: PathBuf,
        /// `LC`, `CA`, or `V` followed by extension letters, e.g. `VCSU`.
        #[arg(long)]
        variety: Vec<String>,
    },
    /// Translate between algebras, α-models and sphere structures.
    Dualize {
        #[command(flatten)]
        source: Source,
        /// Target representation; defaults to the next one along
        /// algebra → alpha → spheres.
        #[arg(long, value_enum)]
        to: Option<Target>,
    },
    /// Verify that translating there and back gives the input.
    Roundtrip {
        #[command(flatten)]
        source: Source,
    },
    /// Enumerate V-algebras (--atoms) or sphere frames (--max-worlds).
    Enumerate {
        #[arg(long, conflicts_with = "max_worlds")]
        atoms: Option<usize>,
        #[arg(long)]
        variety: Option<String>,
        #[arg(long)]
        max_worlds: Option<usize>,
        /// Sphere levels per world for frames.
        #[arg(long, default_value_t = 2)]
        levels: usize,
        /// Restrict frames to the class of this logic's axioms.
        #[arg(long)]
        logic: Option<String>,
        /// Print every structure, not only the count.
        #[arg(long)]
        list: bool,
    },
    /// Decide `Γ ⊨ φ` over a model, over algebras, or over all small
    /// models of the logic's class.
    Consequence {
        #[command(flatten)]
        query: Query,
        #[arg(long, conflicts_with = "algebra")]
        model: Option<PathBuf>,
        #[arg(long)]
        algebra: Vec<PathBuf>,
    },
    /// Search for the least countermodel to `Γ ⊨ φ`.
    Countermodel {
        #[command(flatten)]
        query: Query,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a proof script.
    Prove {
        script: PathBuf,
        /// Calculus, overriding the script's own.
        #[arg(long)]
        logic: Option<String>,
        /// Also search all models up to three worlds for a countermodel.
        #[arg(long)]
        sound: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Source {
    #[arg(long)]
    pub algebra: Option<PathBuf>,
    #[arg(long)]
    pub alpha: Option<PathBuf>,
    /// A sphere model; its valuation is ignored.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct Query {
    #[arg(long)]
    pub premises: Vec<String>,
    #[arg(long)]
    pub formula: String,
    /// `GV` or `LV` followed by extension letters.
    #[arg(long, default_value = "LV")]
    pub logic: String,
    #[arg(long, default_value_t = 3)]
    pub max_worlds: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Algebra,
    Alpha,
    Spheres,
}
