//! Cost functions over integer strings and the exhaustive classical oracle.
//!
//! `C(s) = C₁(s) + C₂(s) + C₃(s)`: out-of-range entries, repeated entries, and the
//! entrywise distance between `σ(s)·A·σ(s)ᵀ` and the target adjacency.

mod oracle;
mod sgi;

pub use oracle::{brute_force_ground, GroundSummary, OracleConfig, DEFAULT_ENUMERATION_BITS};
pub use sgi::{c3_sgi, cost_sgi, subgraph_adjacency, subset_projector, SgiInstance};

use crate::encoding::{IntegerString, Register};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use serde::{Deserialize, Serialize};

/// Entrywise matrix distance used by the C₃ term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Norm {
    /// Sum of absolute differences.
    #[default]
    L1,
    /// Sum of squared differences. Same zero set as `L1`, different energies.
    SquaredL2,
}

impl Norm {
    #[inline]
    pub fn term(self, d: i64) -> u64 {
        match self {
            Norm::L1 => d.unsigned_abs(),
            Norm::SquaredL2 => (d * d) as u64,
        }
    }
}

/// Something the oracle can minimize over all `2^{NU}` strings.
pub trait Objective: Sync {
    type Value: Ord + Clone + Send + Sync;

    fn register(&self) -> Register;

    /// Cost of the string with the given entries; `scratch` is reusable workspace.
    fn eval(&self, entries: &[u32], scratch: &mut Vec<i64>) -> Self::Value;
}

/// A graph-isomorphism instance `(G, G′)` over a common vertex count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GiInstance {
    g: Graph,
    g_prime: Graph,
    reg: Register,
    norm: Norm,
}

impl GiInstance {
    pub fn new(g: Graph, g_prime: Graph) -> Result<Self> {
        if g.order() != g_prime.order() {
            return Err(Error::input(format!(
                "graphs have different orders ({} and {})",
                g.order(),
                g_prime.order()
            )));
        }
        let reg = Register::new(g.order())?;
        Ok(GiInstance { g, g_prime, reg, norm: Norm::L1 })
    }

    /// The instance `(G, G)`, whose ground set is the automorphism group.
    pub fn automorphism(g: Graph) -> Result<Self> {
        GiInstance::new(g.clone(), g)
    }

    pub fn with_norm(mut self, norm: Norm) -> Self {
        self.norm = norm;
        self
    }

    pub fn g(&self) -> &Graph {
        &self.g
    }

    pub fn g_prime(&self) -> &Graph {
        &self.g_prime
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn register(&self) -> Register {
        self.reg
    }

    fn check(&self, s: &IntegerString) {
        assert_eq!(s.register(), self.reg, "string and instance disagree on N");
    }
}

/// Number of entries above `N − 1`.
pub fn c1(s: &IntegerString) -> u64 {
    c1_raw(s.entries(), s.register().n)
}

/// Number of unordered pairs `i < j` with `s_i = s_j`.
pub fn c2(s: &IntegerString) -> u64 {
    c2_raw(s.entries())
}

/// `σ(s)·A·σ(s)ᵀ`, row-major `N × N`.
pub fn conjugate_adjacency(s: &IntegerString, g: &Graph) -> Vec<i64> {
    assert_eq!(s.len(), g.order(), "string length differs from graph order");
    let mut out = Vec::new();
    conjugate_into(s.entries(), g, &mut out);
    out
}

/// Distance between `σ(s)·A·σ(s)ᵀ` and `A′` under the instance norm.
pub fn c3_gi(s: &IntegerString, inst: &GiInstance) -> u64 {
    inst.check(s);
    let mut scratch = Vec::new();
    c3_raw(s.entries(), inst, &mut scratch)
}

pub fn cost_gi(s: &IntegerString, inst: &GiInstance) -> u64 {
    inst.check(s);
    inst.eval(s.entries(), &mut Vec::new())
}

impl Objective for GiInstance {
    type Value = u64;

    fn register(&self) -> Register {
        self.reg
    }

    #[inline]
    fn eval(&self, entries: &[u32], scratch: &mut Vec<i64>) -> u64 {
        c1_raw(entries, self.reg.n) + c2_raw(entries) + c3_raw(entries, self, scratch)
    }
}

#[inline]
pub(crate) fn c1_raw(entries: &[u32], n: usize) -> u64 {
    entries.iter().filter(|&&e| e as usize >= n).count() as u64
}

#[inline]
pub(crate) fn c2_raw(entries: &[u32]) -> u64 {
    entries.iter().enumerate().map(|(i, a)| entries[i + 1..].iter().filter(|&b| a == b).count() as u64).sum()
}

/// Accumulate `B[s_i][s_j] += A[i][j]` over in-range entries.
#[inline]
pub(crate) fn conjugate_into(entries: &[u32], g: &Graph, out: &mut Vec<i64>) {
    let n = g.order();
    out.clear();
    out.resize(n * n, 0);
    let adj = g.adjacency();
    for (i, &si) in entries.iter().enumerate() {
        let si = si as usize;
        if si >= n {
            continue;
        }
        for (j, &sj) in entries.iter().enumerate() {
            let sj = sj as usize;
            if sj < n && adj[i * n + j] != 0 {
                out[si * n + sj] += 1;
            }
        }
    }
}

#[inline]
fn c3_raw(entries: &[u32], inst: &GiInstance, scratch: &mut Vec<i64>) -> u64 {
    conjugate_into(entries, &inst.g, scratch);
    scratch.iter().zip(inst.g_prime.adjacency()).map(|(&b, &a)| inst.norm.term(b - a as i64)).sum()
}
