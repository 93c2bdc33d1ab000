//! Adiabatic quantum algorithms for graph isomorphism, subgraph isomorphism and
//! automorphism groups: cost encodings, problem Hamiltonians, state-vector
//! simulation, and compilation to pairwise QUBO form on Chimera hardware graphs.

pub mod autgroup;
pub mod compile;
pub mod cost;
pub mod dynamics;
pub mod encoding;
pub mod error;
pub mod exec;
pub mod graphs;
pub mod hamiltonian;

pub use error::{Error, Result};
pub use exec::Exec;
