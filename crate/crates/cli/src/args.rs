use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

/// Adiabatic graph isomorphism toolkit: exact oracles, state-vector simulation,
/// gap scans and QUBO compilation.
///
/// Exit codes: 0 = isomorphic / contained / success, 1 = negative answer
/// (or no embedding found), 2 = error.
#[derive(Debug, Parser)]
#[command(name = "aqgi", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Master seed for measurements and embedding restarts.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory for artifacts (report.json plus command-specific files); created if missing.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    /// Refuse instances needing more than this many qubits (L = N·U) for enumeration
    /// or state vectors [default: 24 for enumeration, the build limit for simulation].
    #[arg(long, global = true)]
    pub limit_qubits: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether two graphs are isomorphic.
    Gi {
        #[command(flatten)]
        input: InstanceArgs,
        /// Also evolve for total time T and measure.
        #[arg(long, value_name = "T")]
        evolve: Option<f64>,
        #[command(flatten)]
        dynamics: DynamicsArgs,
    },
    /// Automorphism group of one graph.
    Aut {
        #[command(flatten)]
        input: InstanceArgs,
    },
    /// Decide whether G contains a subgraph isomorphic to H.
    Sgi {
        /// Edge-list files for G and H.
        paths: Vec<PathBuf>,
        /// Built-in pair: c4-p3, matching4-p3.
        #[arg(long)]
        fixture: Option<String>,
        /// Also evolve for total time T and measure.
        #[arg(long, value_name = "T")]
        evolve: Option<f64>,
        #[command(flatten)]
        dynamics: DynamicsArgs,
    },
    /// Exact ground set of the cost function.
    Oracle {
        #[command(flatten)]
        input: InstanceArgs,
    },
    /// Two lowest levels of H(s) on a uniform grid, plus the runtime bound.
    Gapscan {
        #[command(flatten)]
        input: InstanceArgs,
        /// Number of s-points in [0, 1].
        #[arg(long, default_value_t = 51)]
        grid: usize,
    },
    /// Evolve the uniform state for time T and measure.
    Evolve {
        #[command(flatten)]
        input: InstanceArgs,
        /// Total evolution time.
        #[arg(long = "T", value_name = "T")]
        t_total: f64,
        #[command(flatten)]
        dynamics: DynamicsArgs,
    },
    /// Expand the cost to a polynomial, quadratize it, and optionally embed it on Chimera.
    Compile {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        compile: CompileArgs,
    },
}

/// One or two edge-list files, or a built-in fixture. One graph means the
/// self-instance (G, G).
#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Edge-list files: G alone, or G and G′.
    pub paths: Vec<PathBuf>,
    /// Built-in graph (k2, c4..c7, g23, w7, p3, matching4) or pair (fig1, fig2, fig4..fig8).
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    /// Integration step [default: 0.05 / (max cost + L)].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Measurement runs; overrides the count derived from --epsilon and --delta.
    #[arg(long)]
    pub runs: Option<usize>,
    /// Failure probability bound of a single run.
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Target success probability over all runs.
    #[arg(long, default_value_t = 0.999)]
    pub delta: f64,
    #[arg(long, value_enum, default_value_t = IntegratorArg::Split)]
    pub integrator: IntegratorArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IntegratorArg {
    Split,
    Rk4,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// Largest vertex count accepted for symbolic expansion.
    #[arg(long, default_value_t = 5)]
    pub max_vertices: usize,
    /// Fixed penalty weight for every ancilla [default: adaptive per ancilla].
    #[arg(long)]
    pub mu: Option<f64>,
    /// Ancilla budget.
    #[arg(long, default_value_t = 1 << 16)]
    pub max_ancillas: usize,
    /// Exhaustively minimize the quadratic program (at most 24 original bits).
    #[arg(long)]
    pub verify: bool,
    /// Minor-embed the program on a Chimera graph.
    #[arg(long)]
    pub embed: bool,
    #[arg(long, default_value_t = 4)]
    pub chimera_rows: usize,
    #[arg(long, default_value_t = 4)]
    pub chimera_cols: usize,
    /// Qubits per side of each K_{h,h} cell.
    #[arg(long, default_value_t = 4)]
    pub chimera_half: usize,
    /// Chain coupling magnitude [default: twice the largest program coefficient].
    #[arg(long)]
    pub chain_strength: Option<f64>,
    /// Randomized restarts of the embedding heuristic.
    #[arg(long, default_value_t = 32)]
    pub tries: usize,
}
