//! Reduction of a multilinear polynomial to pairwise form with product ancillas.
//!
//! A monomial `c·a₁a₂…a_k` (`k ≥ 3`, ascending variable order) becomes `c·a₁·b₂`
//! with the cascade `b_{k−1} = a_{k−1}a_k`, `b_j = a_j·b_{j+1}`. Each constraint
//! `b = x·y` is enforced by `μ_b·P(x, y; b)`, `P = xy − 2(x + y)b + 3b`, which is 0
//! when `b = xy` and at least 1 otherwise. An ancilla is shared by every monomial
//! that needs the same `(x, y)` product.

use super::poly::Polynomial;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};

/// Default ancilla budget.
pub const DEFAULT_MAX_ANCILLAS: usize = 1 << 16;

/// `P(x, y; b)` on bits.
pub fn penalty(x: bool, y: bool, b: bool) -> i32 {
    let (x, y, b) = (x as i32, y as i32, b as i32);
    x * y - 2 * (x + y) * b + 3 * b
}

/// How the penalty weight of each ancilla is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum MuPolicy {
    /// `μ_b = 1 + Σ|c|` over objective terms on `b` `+ 2·Σ μ_p` over ancillas `p`
    /// defined through `b`. Flipping `b` to its consistent value then always lowers
    /// the energy, so every minimizer satisfies every constraint.
    Adaptive,
    /// The same weight for every ancilla.
    Fixed(f64),
}

/// Product ancilla `var = left · right`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Ancilla {
    pub var: usize,
    pub left: usize,
    pub right: usize,
    pub mu: f64,
}

/// `offset + Σ h_i x_i + Σ_{i<j} J_ij x_i x_j` over `originals` problem bits
/// followed by the ancillas.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticProgram {
    pub originals: usize,
    pub offset: f64,
    pub linear: Vec<f64>,
    pub quadratic: BTreeMap<(usize, usize), f64>,
    pub ancillas: Vec<Ancilla>,
}

impl QuadraticProgram {
    pub fn new(originals: usize) -> Self {
        QuadraticProgram { originals, offset: 0.0, linear: vec![0.0; originals], quadratic: BTreeMap::new(), ancillas: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.linear.len()
    }

    pub fn add_linear(&mut self, i: usize, c: f64) {
        self.linear[i] += c;
    }

    pub fn add_quadratic(&mut self, i: usize, j: usize, c: f64) {
        assert_ne!(i, j, "quadratic term needs two distinct variables");
        let key = (i.min(j), i.max(j));
        let e = self.quadratic.entry(key).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.quadratic.remove(&key);
        }
    }

    /// Value at a full assignment (`x.len() == num_vars`).
    pub fn eval(&self, x: &[bool]) -> f64 {
        assert_eq!(x.len(), self.num_vars(), "assignment length");
        let lin: f64 = self.linear.iter().zip(x).filter(|(_, &b)| b).map(|(h, _)| h).sum();
        let quad: f64 = self.quadratic.iter().filter(|(&(i, j), _)| x[i] && x[j]).map(|(_, c)| c).sum();
        self.offset + lin + quad
    }

    /// Full assignment with every ancilla set to its defining product.
    pub fn consistent_assignment(&self, originals: u64) -> Vec<bool> {
        let mut x: Vec<bool> = (0..self.num_vars()).map(|i| i < self.originals && originals >> i & 1 == 1).collect();
        // Ancillas are allocated after both of their factors.
        for a in &self.ancillas {
            x[a.var] = x[a.left] && x[a.right];
        }
        x
    }

    /// Ancillas whose value differs from the product of their factors' values.
    pub fn violated(&self, x: &[bool]) -> Vec<usize> {
        self.ancillas.iter().filter(|a| x[a.var] != (x[a.left] && x[a.right])).map(|a| a.var).collect()
    }

    pub fn max_degree(&self) -> usize {
        if !self.quadratic.is_empty() {
            2
        } else {
            usize::from(self.linear.iter().any(|&h| h != 0.0))
        }
    }
}

struct Builder {
    qp: QuadraticProgram,
    products: HashMap<(usize, usize), usize>,
    max_ancillas: usize,
}

impl Builder {
    fn ancilla(&mut self, left: usize, right: usize) -> Result<usize> {
        if let Some(&v) = self.products.get(&(left, right)) {
            return Ok(v);
        }
        if self.qp.ancillas.len() == self.max_ancillas {
            return Err(Error::Capacity { what: "ancillas", requested: self.max_ancillas + 1, limit: self.max_ancillas });
        }
        let var = self.qp.linear.len();
        self.qp.linear.push(0.0);
        self.qp.ancillas.push(Ancilla { var, left, right, mu: 0.0 });
        self.products.insert((left, right), var);
        Ok(var)
    }

    /// Add `c · Π vars`; returns the ancilla carrying the objective term, if any.
    fn term(&mut self, vars: &[usize], c: f64) -> Result<Option<usize>> {
        match *vars {
            [] => self.qp.offset += c,
            [i] => self.qp.add_linear(i, c),
            [i, j] => self.qp.add_quadratic(i, j, c),
            _ => {
                let k = vars.len();
                let mut cur = self.ancilla(vars[k - 2], vars[k - 1])?;
                for &a in vars[1..k - 2].iter().rev() {
                    cur = self.ancilla(a, cur)?;
                }
                self.qp.add_quadratic(vars[0], cur, c);
                return Ok(Some(cur));
            }
        }
        Ok(None)
    }
}

/// Pairwise program whose minimum over ancillas equals `poly` at every assignment
/// of the original bits (given a sufficient μ).
pub fn quadratize(poly: &Polynomial, originals: usize, mu: MuPolicy) -> Result<QuadraticProgram> {
    quadratize_with_budget(poly, originals, mu, DEFAULT_MAX_ANCILLAS)
}

pub fn quadratize_with_budget(poly: &Polynomial, originals: usize, mu: MuPolicy, max_ancillas: usize) -> Result<QuadraticProgram> {
    if poly.num_vars() > originals {
        return Err(Error::input(format!("polynomial uses q{} but only {originals} original bits were declared", poly.num_vars() - 1)));
    }
    let mut b = Builder { qp: QuadraticProgram::new(originals), products: HashMap::new(), max_ancillas };
    let mut direct = HashMap::<usize, f64>::new();
    for (m, c) in poly.terms() {
        let vars: Vec<usize> = m.vars().collect();
        if let Some(anc) = b.term(&vars, c)? {
            *direct.entry(anc).or_insert(0.0) += c.abs();
        }
    }
    let mut qp = b.qp;
    assign_mu(&mut qp, &direct, mu);
    for a in qp.ancillas.clone() {
        qp.add_quadratic(a.left, a.right, a.mu);
        qp.add_quadratic(a.left, a.var, -2.0 * a.mu);
        qp.add_quadratic(a.right, a.var, -2.0 * a.mu);
        qp.add_linear(a.var, 3.0 * a.mu);
    }
    Ok(qp)
}

/// Quadratize a single monomial `c · Π vars`.
pub fn quadratize_term(vars: &[usize], c: f64, originals: usize, mu: MuPolicy) -> Result<QuadraticProgram> {
    let m = vars.iter().fold(0u64, |acc, &v| acc | 1 << v);
    quadratize(&Polynomial::from_terms([(super::poly::Monomial(m), c)]), originals, mu)
}

fn assign_mu(qp: &mut QuadraticProgram, direct: &HashMap<usize, f64>, policy: MuPolicy) {
    let first = qp.originals;
    match policy {
        MuPolicy::Fixed(mu) => qp.ancillas.iter_mut().for_each(|a| a.mu = mu),
        MuPolicy::Adaptive => {
            // A parent is allocated after its factors, so descending order visits parents first.
            let mut parent_sum = vec![0.0; qp.ancillas.len()];
            for k in (0..qp.ancillas.len()).rev() {
                let a = &mut qp.ancillas[k];
                a.mu = 1.0 + direct.get(&a.var).copied().unwrap_or(0.0) + 2.0 * parent_sum[k];
                let (mu, left, right) = (a.mu, a.left, a.right);
                for f in [left, right] {
                    if f >= first {
                        parent_sum[f - first] += mu;
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn min_over_b(qp: &QuadraticProgram, x: u64) -> f64 {
        let na = qp.ancillas.len();
        (0..1u64 << na)
            .map(|b| {
                let full: Vec<bool> = (0..qp.num_vars())
                    .map(|i| if i < qp.originals { x >> i & 1 == 1 } else { b >> (i - qp.originals) & 1 == 1 })
                    .collect();
                qp.eval(&full)
            })
            .fold(f64::INFINITY, f64::min)
    }

    #[test]
    fn penalty_truth_table() {
        for x in [false, true] {
            for y in [false, true] {
                assert_eq!(penalty(x, y, x && y), 0);
                assert!(penalty(x, y, !(x && y)) >= 1);
            }
        }
        assert_eq!(penalty(true, false, true), 1);
    }

    #[test]
    fn cubic_with_mu_two() {
        let qp = quadratize_term(&[0, 1, 2], 1.0, 3, MuPolicy::Fixed(2.0)).unwrap();
        assert_eq!(qp.ancillas.len(), 1);
        for x in 0..8u64 {
            assert_eq!(min_over_b(&qp, x), (x == 7) as u8 as f64);
        }
    }

    #[test]
    fn cubic_penalty_pattern() {
        let mu = 2.0;
        let qp = quadratize_term(&[0, 1, 2], 1.0, 3, MuPolicy::Fixed(mu)).unwrap();
        assert_eq!(qp.num_vars(), 4);
        assert_eq!(qp.quadratic[&(1, 2)], mu);
        assert_eq!(qp.quadratic[&(1, 3)], -2.0 * mu);
        assert_eq!(qp.quadratic[&(2, 3)], -2.0 * mu);
        assert_eq!(qp.quadratic[&(0, 3)], 1.0);
        assert_eq!(qp.linear[3], 3.0 * mu);
    }

    #[test]
    fn quartic_uses_two_ancillas() {
        let qp = quadratize_term(&[0, 1, 2, 3], -1.5, 4, MuPolicy::Adaptive).unwrap();
        assert_eq!(qp.ancillas.len(), 2);
        for x in 0..16u64 {
            assert_eq!(min_over_b(&qp, x), if x == 15 { -1.5 } else { 0.0 });
        }
    }

    #[test]
    fn quadratic_passthrough() {
        let p = Polynomial::from_terms([(super::super::poly::Monomial(0b11), 2.0), (super::super::poly::Monomial(0), 1.0)]);
        let qp = quadratize(&p, 2, MuPolicy::Adaptive).unwrap();
        assert!(qp.ancillas.is_empty());
        assert_eq!(qp.quadratic[&(0, 1)], 2.0);
        assert_eq!(qp.offset, 1.0);
    }

    #[test]
    fn shared_suffix_reuses_ancilla() {
        use super::super::poly::Monomial;
        let p = Polynomial::from_terms([(Monomial(0b1011), 1.0), (Monomial(0b1101), 1.0), (Monomial(0b1110), 1.0)]);
        let qp = quadratize(&p, 4, MuPolicy::Adaptive).unwrap();
        // q2q3 is shared by q0q2q3 and q1q2q3.
        assert_eq!(qp.ancillas.len(), 2);
    }

    #[test]
    fn budget() {
        let r = quadratize_with_budget(&Polynomial::from_terms([(super::super::poly::Monomial(0b1111), 1.0)]), 4, MuPolicy::Adaptive, 1);
        assert!(matches!(r, Err(Error::Capacity { .. })));
    }
}
