//! Plain-text QUBO export.
//!
//! ```text
//! QUBO <num_vars> <num_terms>
//! # offset <value>        (only when nonzero)
//! i i <linear>
//! i j <quadratic>         (i < j)
//! ```
//! Terms are sorted by `(i, j)`; values use six decimals.

use super::chimera::ChimeraGraph;
use super::embed::Embedding;
use super::quadratize::QuadraticProgram;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    pub num_vars: usize,
    pub offset: f64,
    /// `(i, i)` linear, `(i, j)` with `i < j` quadratic.
    pub terms: BTreeMap<(usize, usize), f64>,
}

impl Qubo {
    pub fn new(num_vars: usize) -> Self {
        Qubo { num_vars, offset: 0.0, terms: BTreeMap::new() }
    }

    fn add(&mut self, i: usize, j: usize, c: f64) {
        if c != 0.0 {
            *self.terms.entry((i.min(j), i.max(j))).or_insert(0.0) += c;
        }
    }

    /// Per logical variable.
    pub fn from_program(qp: &QuadraticProgram) -> Self {
        let mut q = Qubo::new(qp.num_vars());
        q.offset = qp.offset;
        qp.linear.iter().enumerate().for_each(|(i, &h)| q.add(i, i, h));
        qp.quadratic.iter().for_each(|(&(i, j), &c)| q.add(i, j, c));
        q.prune();
        q
    }

    /// Per hardware qubit and coupler. Linear weights are split evenly along each
    /// chain, each logical coupling sits on one coupler between the two chains, and
    /// every chain edge carries `2|s|(x + y − 2xy)`: the Ising coupling `−|s|`
    /// shifted so that aligned chains cost nothing.
    pub fn from_embedding(qp: &QuadraticProgram, emb: &Embedding, hw: &ChimeraGraph) -> Result<Self> {
        let mut q = Qubo::new(hw.num_qubits());
        q.offset = qp.offset;
        for (v, &h) in qp.linear.iter().enumerate() {
            let chain = emb.chain(v);
            if chain.is_empty() {
                return Err(Error::input(format!("variable {v} has no chain")));
            }
            chain.iter().for_each(|&b| q.add(b, b, h / chain.len() as f64));
        }
        for (&(u, v), &c) in &qp.quadratic {
            let (a, b) = emb.coupler(u, v, hw).ok_or_else(|| Error::input(format!("no coupler between chains of {u} and {v}")))?;
            q.add(a, b, c);
        }
        let s = 2.0 * emb.chain_strength.abs();
        for (a, b) in emb.chain_edges(hw) {
            q.add(a, a, s);
            q.add(b, b, s);
            q.add(a, b, -2.0 * s);
        }
        q.prune();
        Ok(q)
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| *c != 0.0);
    }

    /// Value at a 0/1 assignment.
    pub fn eval(&self, x: &[bool]) -> f64 {
        self.offset + self.terms.iter().filter(|(&(i, j), _)| x[i] && x[j]).map(|(_, c)| c).sum::<f64>()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("QUBO {} {}\n", self.num_vars, self.terms.len());
        if self.offset != 0.0 {
            writeln!(s, "# offset {:.6}", self.offset).expect("write to string");
        }
        for (&(i, j), c) in &self.terms {
            writeln!(s, "{i} {j} {c:.6}").expect("write to string");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, msg: String| Error::Parse { line, msg };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines.next().ok_or_else(|| err(1, "missing QUBO header".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let (num_vars, expected) = match parts.as_slice() {
            ["QUBO", n, t] => (
                n.parse::<usize>().map_err(|e| err(hl, format!("bad variable count: {e}")))?,
                t.parse::<usize>().map_err(|e| err(hl, format!("bad term count: {e}")))?,
            ),
            _ => return Err(err(hl, format!("expected `QUBO <num_vars> <num_terms>`, found `{header}`"))),
        };
        let mut q = Qubo::new(num_vars);
        for (ln, line) in lines {
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("offset") {
                    q.offset = v.trim().parse().map_err(|e| err(ln, format!("bad offset: {e}")))?;
                }
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let [i, j, c] = f.as_slice() else {
                return Err(err(ln, format!("expected `i j value`, found `{line}`")));
            };
            let i: usize = i.parse().map_err(|e| err(ln, format!("bad index: {e}")))?;
            let j: usize = j.parse().map_err(|e| err(ln, format!("bad index: {e}")))?;
            let c: f64 = c.parse().map_err(|e| err(ln, format!("bad value: {e}")))?;
            if i > j || j >= num_vars {
                return Err(err(ln, format!("indices ({i}, {j}) must satisfy i <= j < {num_vars}")));
            }
            if q.terms.insert((i, j), c).is_some() {
                return Err(err(ln, format!("duplicate term ({i}, {j})")));
            }
        }
        if q.terms.len() != expected {
            return Err(err(hl, format!("header declares {expected} terms, found {}", q.terms.len())));
        }
        Ok(q)
    }
}
