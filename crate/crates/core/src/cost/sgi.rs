use super::{c1_raw, c2_raw, conjugate_into, Norm, Objective};
use crate::encoding::{IntegerString, Register};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use num_bigint::BigUint;

/// Does `G` (order `N`) contain an induced subgraph isomorphic to `H` (order `n ≤ N`)?
#[derive(Debug, Clone)]
pub struct SgiInstance {
    g: Graph,
    h: Graph,
    reg: Register,
    norm: Norm,
    subsets: Vec<Vec<usize>>,
}

impl SgiInstance {
    pub fn new(g: Graph, h: Graph) -> Result<Self> {
        if h.order() > g.order() {
            return Err(Error::input(format!("H has order {} > N = {}", h.order(), g.order())));
        }
        let reg = Register::new(g.order())?;
        let subsets = combinations(g.order(), h.order());
        Ok(SgiInstance { g, h, reg, norm: Norm::L1, subsets })
    }

    pub fn with_norm(mut self, norm: Norm) -> Self {
        self.norm = norm;
        self
    }

    pub fn g(&self) -> &Graph {
        &self.g
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    /// All `C(N, n)` vertex choices α, lexicographic.
    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// First α (lexicographic) whose factor vanishes for `s`, if any.
    pub fn witness(&self, s: &IntegerString) -> Option<&[usize]> {
        let mut scratch = Vec::new();
        conjugate_into(s.entries(), &self.g, &mut scratch);
        self.subsets.iter().find(|a| self.factor(&scratch, a) == 0).map(Vec::as_slice)
    }

    #[inline]
    fn factor(&self, tilde: &[i64], alpha: &[usize]) -> u64 {
        let big_n = self.g.order();
        let n = self.h.order();
        let h = self.h.adjacency();
        let mut acc = 0;
        for (a, &ra) in alpha.iter().enumerate() {
            for (b, &rb) in alpha.iter().enumerate() {
                acc += self.norm.term(tilde[ra * big_n + rb] - h[a * n + b] as i64);
            }
        }
        acc
    }

    fn c3(&self, entries: &[u32], scratch: &mut Vec<i64>) -> BigUint {
        conjugate_into(entries, &self.g, scratch);
        let mut small: u128 = 1;
        let mut big: Option<BigUint> = None;
        for alpha in &self.subsets {
            let f = self.factor(scratch, alpha);
            if f == 0 {
                return BigUint::ZERO;
            }
            match &mut big {
                Some(b) => *b *= f,
                None => match small.checked_mul(f as u128) {
                    Some(p) => small = p,
                    None => big = Some(BigUint::from(small) * f),
                },
            }
        }
        big.unwrap_or_else(|| BigUint::from(small))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // Rightmost position that can still advance.
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else { break };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// `n × N` matrix whose row `i` is the unit row vector at column `α_i`.
pub fn subset_projector(alpha: &[usize], n_total: usize) -> Result<Vec<Vec<u8>>> {
    let mut seen = vec![false; n_total];
    alpha
        .iter()
        .map(|&a| {
            if a >= n_total {
                return Err(Error::input(format!("subset vertex {a} out of range 0..{n_total}")));
            }
            if std::mem::replace(&mut seen[a], true) {
                return Err(Error::input(format!("subset vertex {a} repeated")));
            }
            let mut row = vec![0; n_total];
            row[a] = 1;
            Ok(row)
        })
        .collect()
}

/// `P_α · Ã(s) · P_αᵀ`: entry `(i, j)` is `Ã[α_i][α_j]`.
pub fn subgraph_adjacency(s: &IntegerString, alpha: &[usize], g: &Graph) -> Vec<Vec<i64>> {
    let tilde = super::conjugate_adjacency(s, g);
    let n = g.order();
    alpha.iter().map(|&a| alpha.iter().map(|&b| tilde[a * n + b]).collect()).collect()
}

/// Product over all α of the distance between the selected block and `H`.
pub fn c3_sgi(s: &IntegerString, inst: &SgiInstance) -> BigUint {
    inst.c3(s.entries(), &mut Vec::new())
}

pub fn cost_sgi(s: &IntegerString, inst: &SgiInstance) -> BigUint {
    inst.eval(s.entries(), &mut Vec::new())
}

impl Objective for SgiInstance {
    type Value = BigUint;

    fn register(&self) -> Register {
        self.reg
    }

    fn eval(&self, entries: &[u32], scratch: &mut Vec<i64>) -> BigUint {
        self.c3(entries, scratch) + c1_raw(entries, self.reg.n) + c2_raw(entries)
    }
}
