//! The GI cost as a multilinear polynomial over the `L = N·U` register bits.

use super::poly::{delta_fields_poly, delta_int_poly, Polynomial, DENSE_MAX_VARS};
use crate::cost::{GiInstance, Norm};
use crate::encoding::Register;
use crate::error::{Error, Result};
use crate::exec::Exec;
use serde::Serialize;

/// Default vertex limit for symbolic expansion.
pub const DEFAULT_EXPAND_MAX_VERTICES: usize = 5;

#[derive(Debug, Clone, Copy)]
pub struct ExpandConfig {
    pub max_vertices: usize,
    pub exec: Exec,
}

impl Default for ExpandConfig {
    fn default() -> Self {
        ExpandConfig { max_vertices: DEFAULT_EXPAND_MAX_VERTICES, exec: Exec::default() }
    }
}

/// The three cost parts, each as its own polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct CostPolynomial {
    pub reg: Register,
    pub norm: Norm,
    pub c1: Polynomial,
    pub c2: Polynomial,
    pub c3: Polynomial,
    /// Largest degree among the entries of `σAσᵀ − A′`.
    pub conjugate_degree: usize,
}

impl CostPolynomial {
    pub fn total(&self) -> Polynomial {
        let mut p = self.c1.clone();
        p += &self.c2;
        p += &self.c3;
        p
    }

    pub fn locality(&self) -> LocalityReport {
        let u = self.reg.u;
        let excess = (self.reg.max_entry() as usize + 1) - self.reg.n;
        let factor = match self.norm {
            Norm::L1 => 4,
            Norm::SquaredL2 => 8,
        };
        LocalityReport {
            u,
            c1_degree: self.c1.degree(),
            c2_degree: self.c2.degree(),
            c3_degree: self.c3.degree(),
            conjugate_degree: self.conjugate_degree,
            two_u_bound: 2 * u,
            conjugate_bound: (excess > 0).then_some(4 * u * excess),
            c3_bound: (excess > 0).then_some(factor * u * excess),
            power_of_two: excess == 0,
        }
    }
}

/// Measured degrees next to the published locality bounds.
///
/// The `σAσᵀ − A′` and C₃ bounds are proportional to `M − N + 1`, which is zero
/// when `N` is a power of two; they are reported as `None` in that case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalityReport {
    pub u: usize,
    pub c1_degree: usize,
    pub c2_degree: usize,
    pub c3_degree: usize,
    pub conjugate_degree: usize,
    pub two_u_bound: usize,
    pub conjugate_bound: Option<usize>,
    pub c3_bound: Option<usize>,
    pub power_of_two: bool,
}

impl LocalityReport {
    pub fn c1_c2_within_bound(&self) -> bool {
        self.c1_degree <= self.two_u_bound && self.c2_degree <= self.two_u_bound
    }
}

fn field(reg: Register, i: usize) -> Vec<usize> {
    (i * reg.u..(i + 1) * reg.u).collect()
}

/// Expand `C = C₁ + C₂ + C₃` with the Kronecker-delta polynomials.
///
/// C₃ under `L1` uses `|B − 1| = B − 1 + 2·[B = 0]` for target entries equal to 1,
/// where `[B = 0] = Π (1 − δ_{s_i,l}·δ_{s_j,m})` over the edges of `G`. Entries with
/// target 0 contribute `B` itself, since `B ≥ 0`.
pub fn expand_cost_parts(inst: &GiInstance, cfg: &ExpandConfig) -> Result<CostPolynomial> {
    let reg = inst.register();
    let (n, l) = (reg.n, reg.qubits());
    if n > cfg.max_vertices {
        return Err(Error::Capacity { what: "vertices for symbolic expansion", requested: n, limit: cfg.max_vertices });
    }
    if l > DENSE_MAX_VARS {
        return Err(Error::Capacity { what: "register bits for symbolic expansion", requested: l, limit: DENSE_MAX_VARS });
    }
    let m_max = reg.max_entry() as u64;
    let fields: Vec<Vec<usize>> = (0..n).map(|i| field(reg, i)).collect();
    // deltas[i][k] = δ(s_i, k) for k in 0..=M.
    let deltas: Vec<Vec<Polynomial>> =
        fields.iter().map(|f| (0..=m_max).map(|k| delta_int_poly(f, k)).collect::<Result<_>>()).collect::<Result<_>>()?;

    let mut c1 = Polynomial::zero();
    for row in &deltas {
        for d in &row[n..] {
            c1 += d;
        }
    }

    let mut c2 = Polynomial::zero();
    for i in 0..n {
        for j in i + 1..n {
            c2 += &delta_fields_poly(&fields[i], &fields[j]);
        }
    }

    let pairs: Vec<(usize, usize)> = inst.g().edges().flat_map(|(i, j)| [(i, j), (j, i)]).collect();
    let target = inst.g_prime().adjacency();
    let norm = inst.norm();
    let cell = |c: usize| -> Result<(Polynomial, usize)> {
        let (lv, mv) = (c / n, c % n);
        let a = target[c] as f64;
        let mut b = Polynomial::zero();
        for &(i, j) in &pairs {
            b += &(&deltas[i][lv] * &deltas[j][mv]);
        }
        let diff = b.clone() - Polynomial::constant(a);
        let deg = diff.degree();
        let term = match (norm, a == 0.0) {
            (Norm::L1, true) => b,
            (Norm::L1, false) => {
                let factors: Vec<Polynomial> =
                    pairs.iter().map(|&(i, j)| Polynomial::constant(1.0) - &deltas[i][lv] * &deltas[j][mv]).collect();
                diff + Polynomial::product(&factors, l)?.scale(2.0)
            }
            (Norm::SquaredL2, _) => Polynomial::product(&[diff.clone(), diff], l)?,
        };
        Ok((term, deg))
    };
    let merged = cfg
        .exec
        .map_reduce(
            n * n,
            1,
            |r| {
                r.map(&cell).try_fold((Polynomial::zero(), 0), |(mut acc, d), x| {
                    let (p, dp) = x?;
                    acc += &p;
                    Ok::<_, Error>((acc, d.max(dp)))
                })
            },
            |a, b| {
                let ((mut pa, da), (pb, db)) = (a?, b?);
                pa += &pb;
                Ok((pa, da.max(db)))
            },
        )
        .unwrap_or(Ok((Polynomial::zero(), 0)))?;

    Ok(CostPolynomial { reg, norm, c1, c2, c3: merged.0, conjugate_degree: merged.1 })
}

/// `C(s)` as one polynomial, default limits.
pub fn expand_cost(inst: &GiInstance) -> Result<Polynomial> {
    Ok(expand_cost_parts(inst, &ExpandConfig::default())?.total())
}

/// Structured term inventory: `T₁ = N(M − N + 1)`, `T₂ = N(N − 1)/2`, `T₃ = N²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermCounts {
    pub n: usize,
    pub qubits: usize,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub total: usize,
    /// `T / L²`.
    pub ratio: f64,
}

pub fn structured_term_counts(reg: Register) -> TermCounts {
    let n = reg.n;
    let t1 = n * (reg.max_entry() as usize + 1 - n);
    let t2 = n * (n - 1) / 2;
    let t3 = n * n;
    let total = t1 + t2 + t3;
    let l = reg.qubits();
    TermCounts { n, qubits: l, t1, t2, t3, total, ratio: total as f64 / (l * l) as f64 }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermStats {
    pub structured: TermCounts,
    pub monomials: usize,
    pub max_degree: usize,
    /// Monomial count per degree.
    pub histogram: Vec<usize>,
}

pub fn term_stats(poly: &Polynomial, reg: Register) -> TermStats {
    TermStats {
        structured: structured_term_counts(reg),
        monomials: poly.len(),
        max_degree: poly.degree(),
        histogram: poly.degree_histogram(),
    }
}
