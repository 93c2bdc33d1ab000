//! Compilation of the GI cost towards pairwise annealing hardware: polynomial
//! expansion, quadratization with product ancillas, Chimera minor embedding and
//! QUBO export.

mod chimera;
mod embed;
mod expand;
mod minimize;
mod poly;
mod quadratize;
mod qubo;

pub use chimera::ChimeraGraph;
pub use embed::{embed_graph, embed_minor, logical_edges, EmbedOptions, EmbedOutcome, Embedding, EmbeddingReport, EmbeddingViolation};
pub use expand::{
    expand_cost, expand_cost_parts, structured_term_counts, term_stats, CostPolynomial, ExpandConfig, LocalityReport, TermCounts, TermStats,
    DEFAULT_EXPAND_MAX_VERTICES,
};
pub use minimize::{
    brute_force_min_over_ancillas, exhaustive_minimum, AncillaSolver, ProgramMinimum, BRUTE_FORCE_MAX_ANCILLAS, EXHAUSTIVE_MAX_ORIGINALS,
};
pub use poly::{delta_bit_poly, delta_fields_poly, delta_int_poly, BitRef, Monomial, Polynomial, DENSE_MAX_VARS};
pub use quadratize::{penalty, quadratize, quadratize_term, quadratize_with_budget, Ancilla, MuPolicy, QuadraticProgram, DEFAULT_MAX_ANCILLAS};
pub use qubo::Qubo;
