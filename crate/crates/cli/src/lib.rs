//! Command-line front end: argument definitions, file formats and the subcommands.
//!
//! [`run`] does all the work and returns the text to print with an exit code, so the
//! binary is a thin wrapper. Exit codes: 0 success or consistent, 1 wipeout,
//! unsatisfiable or a failed check, 2 usage or parse error, 3 budget or cap exhausted.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;
pub mod formula;
pub mod instance_io;
pub mod model_io;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "symbreak",
    version,
    about = "Symmetry breaking with lexicographic ordering constraints"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Report format. Commands whose output is a document (break, reduce) always print JSON.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Variable,
    Value,
}

impl From<Kind> for symbreak::SymmetryKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Variable => symbreak::SymmetryKind::Variable,
            Kind::Value => symbreak::SymmetryKind::Value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// One pass of every propagator; a DoubleLex constraint runs its row chain, then its column chain.
    Chain,
    /// Propagation to a fixpoint; DoubleLex alternates its two chains.
    Double,
    /// Fixpoint plus a support search for every value of every DoubleLex constraint.
    Complete,
    /// Exhaustive enumeration of the whole model.
    Oracle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect the group generated by a list of permutations.
    Group(GroupArgs),
    /// Append one lex-leader constraint per generator to a model.
    Break(BreakArgs),
    /// Check whether lex-leader constraints keep exactly one solution per orbit.
    Audit(AuditArgs),
    /// Search for solutions of a model.
    Solve(SolveArgs),
    /// Compare propagation strength on a model, or run a randomized comparison suite.
    Propagate(PropagateArgs),
    /// Compile a positive 1-in-3 SAT formula into a DoubleLex matrix.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Generators separated by `;`, each in cycle form `(1 2)(3 4)` or image form `perm[2,3,4,1]`.
    #[arg(long, allow_hyphen_values = true)]
    pub gens: String,
    /// Degree of the group (defaults to the largest point mentioned).
    #[arg(long)]
    pub degree: Option<usize>,
    /// Print the group order.
    #[arg(long)]
    pub order: bool,
    /// Print whether no generator is redundant.
    #[arg(long)]
    pub irredundant: bool,
    /// Print a strong generating set for this base, e.g. `4,3,2,1`.
    #[arg(long, value_delimiter = ',')]
    pub sgs_base: Option<Vec<usize>>,
    /// Test membership of a permutation (repeatable).
    #[arg(long = "member")]
    pub members: Vec<String>,
    /// List every element of the group.
    #[arg(long)]
    pub elements: bool,
    #[arg(long, default_value_t = symbreak::perm::DEFAULT_CLOSURE_CAP)]
    pub closure_cap: usize,
}

#[derive(Debug, Args)]
pub struct SymmetryArgs {
    /// Model JSON file (`-` for standard input).
    #[arg(long)]
    pub model: PathBuf,
    /// Generators separated by `;`. An empty list posts nothing.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub gens: String,
    #[arg(long, value_enum, default_value = "variable")]
    pub kind: Kind,
    /// Variables the symmetry acts on, by name (defaults to all, in model order).
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct BreakArgs {
    #[command(flatten)]
    pub sym: SymmetryArgs,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub sym: SymmetryArgs,
    /// Post lex-leader constraints for these generators instead of `--gens`, e.g. a strong generating set.
    #[arg(long, allow_hyphen_values = true)]
    pub break_gens: Option<String>,
    #[arg(long, default_value_t = symbreak::lex::DEFAULT_AUDIT_CAP)]
    pub audit_cap: usize,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Model JSON file (`-` for standard input).
    #[arg(long)]
    pub model: PathBuf,
    /// Enumerate every solution instead of stopping at the first.
    #[arg(long)]
    pub all: bool,
    /// Stop after this many solutions.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Search node budget.
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct PropagateArgs {
    /// Model JSON file (`-` for standard input).
    #[arg(long, required_unless_present = "trials", conflicts_with = "trials")]
    pub model: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "double")]
    pub engine: Engine,
    /// Support-search budget per value for the complete engine.
    #[arg(long, default_value_t = symbreak::lex::DEFAULT_SUPPORT_BUDGET)]
    pub budget: u64,
    /// Assignment cap for the oracle.
    #[arg(long, default_value_t = symbreak::csp::DEFAULT_ORACLE_CAP)]
    pub oracle_cap: u128,
    /// Run this many random matrices through every engine and compare them with the oracle.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest matrix height in the randomized suite.
    #[arg(long, default_value_t = 3)]
    pub max_rows: usize,
    /// Largest matrix width in the randomized suite.
    #[arg(long, default_value_t = 4)]
    pub max_cols: usize,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Formula file in `p one3 <n> <m>` format (`-` for standard input).
    #[arg(required_unless_present = "gadget")]
    pub formula: Option<PathBuf>,
    /// Decide the matrix by search and compare with brute-force satisfiability.
    #[arg(long)]
    pub verify: bool,
    /// Print the grid with `0`, `1` and `.` for free cells, top row first.
    #[arg(long)]
    pub ascii: bool,
    /// Print the instance as a model JSON document instead of the instance format.
    #[arg(long, conflicts_with = "gadget")]
    pub emit_model: bool,
    /// Search node budget for `--verify`.
    #[arg(long, default_value_t = symbreak::reduction::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Build a lone variable gadget for a variable with this many occurrences.
    #[arg(long, conflicts_with = "formula")]
    pub gadget: Option<usize>,
    /// Zero-column padding of the lone gadget.
    #[arg(long, default_value_t = 0, requires = "gadget")]
    pub padding: usize,
}

/// What a successful command prints, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

/// A command that could not run to the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn budget(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_BUDGET,
            message: message.into(),
        }
    }
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::usage(format!("standard input: {e}")))
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Group(a) => commands::group(a, json),
        Command::Break(a) => commands::break_symmetry(a),
        Command::Audit(a) => commands::audit(a, json),
        Command::Solve(a) => commands::solve(a, json),
        Command::Propagate(a) => commands::propagate(a, json),
        Command::Reduce(a) => commands::reduce(a, json),
    }
}
