//! Exact minimization of a quadratized program over its ancillas.
//!
//! For fixed original bits the ancillas interact only along their defining
//! chains, so the ancilla coupling graph is a forest and a two-state tree DP is
//! exact. Programs whose ancillas form cycles are rejected.

use super::quadratize::QuadraticProgram;
use crate::error::{Error, Result};
use crate::exec::Exec;
use serde::Serialize;

/// Largest ancilla count accepted by [`brute_force_min_over_ancillas`].
pub const BRUTE_FORCE_MAX_ANCILLAS: usize = 20;
/// Largest original-bit count accepted by [`exhaustive_minimum`].
pub const EXHAUSTIVE_MAX_ORIGINALS: usize = 24;

const TOL: f64 = 1e-9;

/// Tree DP over the ancilla coupling forest.
#[derive(Debug, Clone)]
pub struct AncillaSolver<'a> {
    qp: &'a QuadraticProgram,
    /// `(original, J)` couplings per ancilla.
    to_orig: Vec<Vec<(usize, f64)>>,
    /// Post-order of every tree, with the parent slot and edge weight.
    order: Vec<(usize, Option<(usize, f64)>)>,
    roots: Vec<usize>,
}

impl<'a> AncillaSolver<'a> {
    pub fn new(qp: &'a QuadraticProgram) -> Result<Self> {
        let (o, na) = (qp.originals, qp.num_vars() - qp.originals);
        let mut to_orig = vec![Vec::new(); na];
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); na];
        for (&(i, j), &c) in &qp.quadratic {
            match (i >= o, j >= o) {
                (false, false) => {}
                (false, true) => to_orig[j - o].push((i, c)),
                (true, false) => to_orig[i - o].push((j, c)),
                (true, true) => {
                    adj[i - o].push((j - o, c));
                    adj[j - o].push((i - o, c));
                }
            }
        }
        let mut seen = vec![false; na];
        let mut order = Vec::with_capacity(na);
        let mut roots = Vec::new();
        for r in 0..na {
            if seen[r] {
                continue;
            }
            roots.push(r);
            seen[r] = true;
            // Preorder with parents, reversed below into a post-order.
            let mut stack = vec![(r, None::<(usize, f64)>)];
            let mut pre = Vec::new();
            while let Some((v, parent)) = stack.pop() {
                pre.push((v, parent));
                for &(w, c) in &adj[v] {
                    if parent.is_some_and(|(p, _)| p == w) {
                        continue;
                    }
                    if std::mem::replace(&mut seen[w], true) {
                        return Err(Error::contract("ancilla couplings contain a cycle; tree minimization does not apply"));
                    }
                    stack.push((w, Some((v, c))));
                }
            }
            order.extend(pre.into_iter().rev());
        }
        Ok(AncillaSolver { qp, to_orig, order, roots })
    }

    /// `min_b E(x, b)`, optionally with one ancilla (global index) pinned.
    pub fn min_over_ancillas(&self, originals: u64, pinned: Option<(usize, bool)>) -> f64 {
        let qp = self.qp;
        let o = qp.originals;
        let bit = |i: usize| originals >> i & 1 == 1;
        let base = qp.offset
            + (0..o).filter(|&i| bit(i)).map(|i| qp.linear[i]).sum::<f64>()
            + qp.quadratic.range(..(o, 0)).filter(|(&(i, j), _)| j < o && bit(i) && bit(j)).map(|(_, c)| c).sum::<f64>();
        let na = self.to_orig.len();
        let mut dp = vec![[0.0f64; 2]; na];
        for (v, links) in self.to_orig.iter().enumerate() {
            let on = qp.linear[o + v] + links.iter().filter(|(u, _)| bit(*u)).map(|(_, c)| c).sum::<f64>();
            dp[v] = [0.0, on];
            if let Some((p, val)) = pinned {
                if p == o + v {
                    dp[v][usize::from(!val)] = f64::INFINITY;
                }
            }
        }
        for &(v, parent) in &self.order {
            if let Some((p, c)) = parent {
                let child = dp[v];
                dp[p][0] += child[0].min(child[1]);
                dp[p][1] += child[0].min(child[1] + c);
            }
        }
        base + self.roots.iter().map(|&r| dp[r][0].min(dp[r][1])).sum::<f64>()
    }
}

/// Reference minimization by enumerating every ancilla assignment.
pub fn brute_force_min_over_ancillas(qp: &QuadraticProgram, originals: u64) -> Result<f64> {
    let na = qp.num_vars() - qp.originals;
    if na > BRUTE_FORCE_MAX_ANCILLAS {
        return Err(Error::Capacity { what: "ancillas for brute force", requested: na, limit: BRUTE_FORCE_MAX_ANCILLAS });
    }
    let mut x: Vec<bool> = (0..qp.num_vars()).map(|i| i < qp.originals && originals >> i & 1 == 1).collect();
    Ok((0..1u64 << na)
        .map(|b| {
            (0..na).for_each(|k| x[qp.originals + k] = b >> k & 1 == 1);
            qp.eval(&x)
        })
        .fold(f64::INFINITY, f64::min))
}

/// Global minimum of a quadratized program over originals and ancillas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProgramMinimum {
    pub min_value: f64,
    /// Original-bit assignments attaining the minimum, ascending.
    pub minimizers: Vec<u64>,
    /// No global minimizer leaves an ancilla off its defining product.
    pub constraints_hold_at_minimum: bool,
}

/// Enumerate the original bits, minimize each over the ancillas, and check that
/// pinning any ancilla against its defining product raises every global minimum.
pub fn exhaustive_minimum(qp: &QuadraticProgram, exec: Exec) -> Result<ProgramMinimum> {
    if qp.originals > EXHAUSTIVE_MAX_ORIGINALS {
        return Err(Error::Capacity { what: "original bits for exhaustive minimization", requested: qp.originals, limit: EXHAUSTIVE_MAX_ORIGINALS });
    }
    let solver = AncillaSolver::new(qp)?;
    let values: Vec<f64> = {
        let mut v = vec![0.0; 1usize << qp.originals];
        exec.fill(&mut v, |x| solver.min_over_ancillas(x as u64, None));
        v
    };
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let minimizers: Vec<u64> = (0..values.len() as u64).filter(|&x| values[x as usize] <= min_value + TOL).collect();
    let constraints_hold_at_minimum = minimizers.iter().all(|&x| {
        let consistent = qp.consistent_assignment(x);
        qp.ancillas.iter().all(|a| solver.min_over_ancillas(x, Some((a.var, !consistent[a.var]))) > min_value + TOL)
    });
    Ok(ProgramMinimum { min_value, minimizers, constraints_hold_at_minimum })
}
