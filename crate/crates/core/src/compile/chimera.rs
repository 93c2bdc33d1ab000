//! Chimera coupling graphs.
//!
//! Qubit `(r, c, k)` has index `2·half·(r·cols + c) + k`. Inside a cell every
//! `k < half` couples to every `k ≥ half`; `k < half` also couples to the same
//! `k` in the cell below, `k ≥ half` to the same `k` in the cell to the right.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChimeraGraph {
    pub rows: usize,
    pub cols: usize,
    pub half: usize,
    pub disabled: BTreeSet<usize>,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl ChimeraGraph {
    pub fn new(rows: usize, cols: usize, half: usize, disabled: impl IntoIterator<Item = usize>) -> Result<Self> {
        if rows == 0 || cols == 0 || half == 0 {
            return Err(Error::input("chimera dimensions must be positive"));
        }
        let n = 2 * half * rows * cols;
        let disabled: BTreeSet<usize> = disabled.into_iter().collect();
        if let Some(&q) = disabled.iter().find(|&&q| q >= n) {
            return Err(Error::input(format!("disabled qubit {q} outside 0..{n}")));
        }
        let idx = |r: usize, c: usize, k: usize| 2 * half * (r * cols + c) + k;
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                for k in 0..half {
                    for k2 in half..2 * half {
                        edges.push((idx(r, c, k), idx(r, c, k2)));
                    }
                    if r + 1 < rows {
                        edges.push((idx(r, c, k), idx(r + 1, c, k)));
                    }
                }
                if c + 1 < cols {
                    for k in half..2 * half {
                        edges.push((idx(r, c, k), idx(r, c + 1, k)));
                    }
                }
            }
        }
        edges.retain(|(a, b)| !disabled.contains(a) && !disabled.contains(b));
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj.iter_mut().for_each(|l| l.sort_unstable());
        Ok(ChimeraGraph { rows, cols, half, disabled, edges, adj })
    }

    /// 4×4 cells of 8 qubits.
    pub fn standard() -> Self {
        ChimeraGraph::new(4, 4, 4, []).expect("valid dimensions")
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.half * self.rows * self.cols
    }

    pub fn index(&self, r: usize, c: usize, k: usize) -> usize {
        2 * self.half * (r * self.cols + c) + k
    }

    /// `(row, col, k)` of a qubit.
    pub fn coords(&self, q: usize) -> (usize, usize, usize) {
        let cell = q / (2 * self.half);
        (cell / self.cols, cell % self.cols, q % (2 * self.half))
    }

    pub fn is_active(&self, q: usize) -> bool {
        q < self.num_qubits() && !self.disabled.contains(&q)
    }

    pub fn active_qubits(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_qubits()).filter(|&q| self.is_active(q))
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adj[q]
    }

    pub fn degree(&self, q: usize) -> usize {
        self.adj[q].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a).is_some_and(|l| l.binary_search(&b).is_ok())
    }

    /// Edge count of the full grid: `rows·cols·half² + half·((rows−1)·cols + rows·(cols−1))`.
    pub fn full_edge_count(rows: usize, cols: usize, half: usize) -> usize {
        rows * cols * half * half + half * ((rows - 1) * cols + rows * (cols - 1))
    }
}
