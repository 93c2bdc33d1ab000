//! Lowest two distinct levels of `H(s)`, the minimum gap over a grid, and the
//! adiabatic runtime bound `T = M / Δ²` (ħ = 1).
//!
//! Degenerate levels are resolved as whole eigenspaces. The matrix element `M(s)`
//! is the largest singular value of the block of `dH/ds` between the excited and
//! ground eigenspaces, i.e. the maximum of `|⟨E₁|dH/ds|E₀⟩|` over unit vectors in
//! each space. It reduces to the usual value when both levels are simple.

use super::lanczos::{lowest_pair, LanczosOptions};
use super::{apply_into, dense_matrix, ProblemDiagonal, Schedule};
use crate::error::{Error, Result};
use crate::exec::Exec;
use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write;

#[derive(Debug, Clone, Copy)]
pub struct SpectrumOptions {
    /// Dense diagonalization up to this register size, Lanczos above it.
    pub dense_max_qubits: usize,
    /// Level-merging tolerance where `H` is diagonal.
    pub endpoint_tol: f64,
    /// Level-merging tolerance elsewhere.
    pub interior_tol: f64,
    pub matrix_element: bool,
    /// Cap on eigenvectors resolved by deflation (ground plus first excited space).
    pub max_vectors: usize,
    pub lanczos: LanczosOptions,
    pub exec: Exec,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions {
            dense_max_qubits: 12,
            endpoint_tol: 1e-9,
            interior_tol: 1e-7,
            matrix_element: true,
            max_vectors: 64,
            lanczos: LanczosOptions::default(),
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    /// `A(s) = 0`: spectrum read off the diagonal.
    Diagonal,
    /// `B(s) = 0`: closed-form transverse-field spectrum.
    Transverse,
    Dense,
    Lanczos,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumPoint {
    pub s: f64,
    pub e0: f64,
    /// First level above `e0` by more than the tolerance; equals `e0` if there is none.
    pub e1: f64,
    pub gap: f64,
    pub ground_multiplicity: usize,
    /// Zero when every level coincides with `e0`.
    pub excited_multiplicity: usize,
    pub matrix_element: Option<f64>,
    pub method: SolveMethod,
}

impl SpectrumPoint {
    /// True when either level is degenerate, so `matrix_element` uses the eigenspace maximum.
    pub fn degenerate(&self) -> bool {
        self.ground_multiplicity > 1 || self.excited_multiplicity > 1
    }
}

/// Lowest two distinct levels of `H(s)` and, optionally, the matrix element between them.
pub fn lowest_spectrum(s: f64, sched: &dyn Schedule, hp: &ProblemDiagonal, opts: &SpectrumOptions) -> Result<SpectrumPoint> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::input(format!("s = {s} outside [0, 1]")));
    }
    let (a, b) = (sched.a(s), sched.b(s));
    let (da, db) = (sched.da(s), sched.db(s));
    if a == 0.0 {
        return Ok(diagonal_endpoint(s, b, da, hp, opts));
    }
    if b == 0.0 && a > 0.0 {
        return Ok(transverse_endpoint(s, a, db, hp, opts));
    }
    let (e0, e1, v0, v1, method) = if hp.qubits() <= opts.dense_max_qubits {
        dense_levels(a, b, hp, opts.interior_tol)
    } else {
        lanczos_levels(a, b, hp, opts)?
    };
    let matrix_element = (opts.matrix_element && !v1.is_empty()).then(|| {
        let dim = hp.dim();
        let mut dv0 = vec![0.0; dim];
        let mut block = DMatrix::zeros(v1.len(), v0.len());
        for (c, x) in v0.iter().enumerate() {
            apply_into(da, db, hp.energies(), x, &mut dv0, opts.exec);
            for (r, y) in v1.iter().enumerate() {
                block[(r, c)] = y.iter().zip(&dv0).map(|(p, q)| p * q).sum::<f64>();
            }
        }
        block.singular_values().max()
    });
    Ok(SpectrumPoint {
        s,
        e0,
        e1: e1.unwrap_or(e0),
        gap: e1.map_or(0.0, |e| e - e0),
        ground_multiplicity: v0.len(),
        excited_multiplicity: v1.len(),
        matrix_element,
        method,
    })
}

type Levels = (f64, Option<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>, SolveMethod);

fn dense_levels(a: f64, b: f64, hp: &ProblemDiagonal, tol: f64) -> Levels {
    let eig = SymmetricEigen::new(dense_matrix(a, b, hp.energies()));
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let val = |k: usize| eig.eigenvalues[order[k]];
    let col = |k: usize| eig.eigenvectors.column(order[k]).iter().copied().collect::<Vec<f64>>();
    let e0 = val(0);
    let n0 = order.iter().take_while(|&&i| eig.eigenvalues[i] <= e0 + tol).count();
    let v0 = (0..n0).map(col).collect();
    if n0 == order.len() {
        return (e0, None, v0, Vec::new(), SolveMethod::Dense);
    }
    let e1 = val(n0);
    let n1 = order[n0..].iter().take_while(|&&i| eig.eigenvalues[i] <= e1 + tol).count();
    let v1 = (n0..n0 + n1).map(col).collect();
    (e0, Some(e1), v0, v1, SolveMethod::Dense)
}

fn lanczos_levels(a: f64, b: f64, hp: &ProblemDiagonal, opts: &SpectrumOptions) -> Result<Levels> {
    let dim = hp.dim();
    let op = |x: &[f64], y: &mut [f64]| apply_into(a, b, hp.energies(), x, y, opts.exec);
    let tol = opts.interior_tol;
    let mut locked: Vec<Vec<f64>> = Vec::new();
    let (mut e0, mut e1) = (f64::NAN, None::<f64>);
    let mut n0 = 0;
    while locked.len() < dim {
        if locked.len() >= opts.max_vectors {
            return Err(Error::Capacity { what: "degenerate eigenvectors resolved by deflation", requested: locked.len() + 1, limit: opts.max_vectors });
        }
        let p = lowest_pair(&op, dim, &locked, &opts.lanczos, opts.exec)?;
        if locked.is_empty() {
            e0 = p.value;
            n0 = 1;
        } else {
            match e1 {
                None if p.value <= e0 + tol => n0 += 1,
                None => e1 = Some(p.value),
                Some(e) if p.value > e + tol => break,
                Some(_) => {}
            }
        }
        locked.push(p.vector);
    }
    let v1 = locked.split_off(n0);
    Ok((e0, e1, locked, v1, SolveMethod::Lanczos))
}

fn diagonal_endpoint(s: f64, b: f64, da: f64, hp: &ProblemDiagonal, opts: &SpectrumOptions) -> SpectrumPoint {
    let tol = opts.endpoint_tol;
    let energy = |i: usize| b * hp.energies()[i];
    let e0 = (0..hp.dim()).map(energy).fold(f64::INFINITY, f64::min);
    let ground: Vec<usize> = (0..hp.dim()).filter(|&i| energy(i) <= e0 + tol).collect();
    let e1 = (0..hp.dim()).map(energy).filter(|&e| e > e0 + tol).fold(f64::INFINITY, f64::min);
    let excited: Vec<usize> = if e1.is_finite() { (0..hp.dim()).filter(|&i| (energy(i) - e1).abs() <= tol).collect() } else { Vec::new() };
    let matrix_element = (opts.matrix_element && !excited.is_empty()).then(|| 0.5 * da.abs() * flip_block_norm(&ground, &excited, hp.qubits()));
    SpectrumPoint {
        s,
        e0,
        e1: if e1.is_finite() { e1 } else { e0 },
        gap: if e1.is_finite() { e1 - e0 } else { 0.0 },
        ground_multiplicity: ground.len(),
        excited_multiplicity: excited.len(),
        matrix_element,
        method: SolveMethod::Diagonal,
    }
}

/// Spectral norm of the 0/1 matrix `G[e][g] = 1` iff basis states `e` and `g` differ in one bit.
fn flip_block_norm(ground: &[usize], excited: &[usize], qubits: usize) -> f64 {
    let pos: HashMap<usize, usize> = excited.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let links: Vec<Vec<usize>> =
        ground.iter().map(|&g| (0..qubits).filter_map(|l| pos.get(&(g ^ (1 << l))).copied()).collect()).collect();
    if links.iter().all(Vec::is_empty) {
        return 0.0;
    }
    // Power iteration on GᵀG from the all-ones vector; G is non-negative, so the
    // Perron vector overlaps it.
    let mut x = vec![1.0; ground.len()];
    let mut y = vec![0.0; excited.len()];
    let mut lambda = 0.0;
    for _ in 0..10_000 {
        y.iter_mut().for_each(|v| *v = 0.0);
        for (gi, l) in links.iter().enumerate() {
            for &e in l {
                y[e] += x[gi];
            }
        }
        let next: Vec<f64> = links.iter().map(|l| l.iter().map(|&e| y[e]).sum()).collect();
        let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let nn = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        let est = nn / xn;
        x = next.iter().map(|v| v / nn).collect();
        if (est - lambda).abs() <= 1e-14 * est {
            lambda = est;
            break;
        }
        lambda = est;
    }
    lambda.sqrt()
}

fn transverse_endpoint(s: f64, a: f64, db: f64, hp: &ProblemDiagonal, opts: &SpectrumOptions) -> SpectrumPoint {
    let qubits = hp.qubits();
    let dim = hp.dim() as f64;
    // ⟨v_l|H_P|u⟩ with u uniform and v_l the state flipped to |−⟩ on qubit l.
    let matrix_element = opts.matrix_element.then(|| {
        let norm2: f64 = (0..qubits)
            .map(|l| {
                let m: f64 = hp.energies().iter().enumerate().map(|(i, e)| if i >> l & 1 == 1 { -e } else { *e }).sum();
                (m / dim).powi(2)
            })
            .sum();
        db.abs() * norm2.sqrt()
    });
    SpectrumPoint {
        s,
        e0: 0.0,
        e1: a,
        gap: a,
        ground_multiplicity: 1,
        excited_multiplicity: qubits,
        matrix_element,
        method: SolveMethod::Transverse,
    }
}

/// Runtime-bound report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RuntimeBound {
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "Delta_min")]
    pub delta_min: f64,
    #[serde(rename = "T_bound")]
    pub t_bound: f64,
    /// Some scanned level was degenerate, so `M` used the eigenspace maximum.
    pub degenerate_max_rule: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapScan {
    pub points: Vec<SpectrumPoint>,
    pub delta_min: f64,
    pub argmin_s: f64,
    pub bound: RuntimeBound,
}

impl GapScan {
    /// Tab-separated table with header `s E0 E1 gap matrix_element`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("s\tE0\tE1\tgap\tmatrix_element\n");
        for p in &self.points {
            let me = p.matrix_element.map_or_else(|| "NA".to_string(), |m| format!("{m:.12}"));
            writeln!(out, "{:.6}\t{:.12}\t{:.12}\t{:.12}\t{me}", p.s, p.e0, p.e1, p.gap).expect("String write");
        }
        out
    }
}

/// Spectrum on `grid` uniformly spaced points of `[0, 1]`.
pub fn min_gap_scan(hp: &ProblemDiagonal, sched: &dyn Schedule, grid: usize, opts: &SpectrumOptions) -> Result<GapScan> {
    if grid < 2 {
        return Err(Error::input(format!("gap scan needs at least 2 grid points, got {grid}")));
    }
    let points = (0..grid)
        .map(|k| lowest_spectrum(k as f64 / (grid - 1) as f64, sched, hp, opts))
        .collect::<Result<Vec<_>>>()?;
    let (argmin_s, delta_min) = points
        .iter()
        .filter(|p| p.excited_multiplicity > 0)
        .map(|p| (p.s, p.gap))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .ok_or_else(|| Error::numerical("no grid point has a level above the ground level"))?;
    let m = points.iter().filter_map(|p| p.matrix_element).fold(0.0, f64::max);
    let bound = RuntimeBound {
        m,
        delta_min,
        t_bound: m / (delta_min * delta_min),
        degenerate_max_rule: points.iter().any(SpectrumPoint::degenerate),
    };
    Ok(GapScan { points, delta_min, argmin_s, bound })
}
