//! Problem, initial and interpolated Hamiltonians, applied matrix-free.
//!
//! `H(s) = A(s)·H_i + B(s)·H_P` with `H_i = Σ_l ½(I − X_l)` and `H_P` diagonal in
//! the computational basis, entry `b` being the cost of the string encoded by `b`.

mod lanczos;
mod spectrum;

pub use lanczos::LanczosOptions;
pub use spectrum::{lowest_spectrum, min_gap_scan, GapScan, RuntimeBound, SolveMethod, SpectrumOptions, SpectrumPoint};

use crate::cost::Objective;
use crate::dynamics::StateVector;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use num_bigint::BigUint;
use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

/// Default cap on the register size for diagonal construction.
pub const DEFAULT_MAX_QUBITS: usize = 21;

/// Energies above this are stored as this value (largest integer exact in `f64`).
pub const SATURATION: f64 = 9_007_199_254_740_992.0;

/// Conversion of an exact cost into a stored energy.
pub trait Energy {
    /// The energy and whether it was clipped to [`SATURATION`].
    fn to_energy(&self) -> (f64, bool);
}

impl Energy for u64 {
    fn to_energy(&self) -> (f64, bool) {
        if *self as f64 > SATURATION {
            (SATURATION, true)
        } else {
            (*self as f64, false)
        }
    }
}

impl Energy for BigUint {
    fn to_energy(&self) -> (f64, bool) {
        match u64::try_from(self) {
            Ok(x) => x.to_energy(),
            Err(_) => (SATURATION, true),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BuildConfig {
    pub max_qubits: usize,
    pub exec: Exec,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig { max_qubits: DEFAULT_MAX_QUBITS, exec: Exec::default() }
    }
}

/// Diagonal of `H_P`: `2^L` non-negative energies.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDiagonal {
    qubits: usize,
    energies: Vec<f64>,
    saturated: usize,
}

impl ProblemDiagonal {
    /// Wrap raw energies; the length must be `2^L` with `L ≥ 1` and entries finite and non-negative.
    pub fn from_energies(energies: Vec<f64>) -> Result<Self> {
        let len = energies.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::input(format!("diagonal length {len} is not 2^L with L >= 1")));
        }
        if let Some(e) = energies.iter().find(|e| !e.is_finite() || **e < 0.0) {
            return Err(Error::input(format!("diagonal entry {e} is not a finite non-negative energy")));
        }
        Ok(ProblemDiagonal { qubits: len.trailing_zeros() as usize, energies, saturated: 0 })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Entries clipped to [`SATURATION`] during construction.
    pub fn saturated(&self) -> usize {
        self.saturated
    }

    pub fn min(&self) -> f64 {
        self.energies.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.energies.iter().copied().fold(0.0, f64::max)
    }

    /// Indices within `tol` of the minimum, ascending.
    pub fn ground_indices(&self, tol: f64) -> Vec<usize> {
        let m = self.min();
        (0..self.dim()).filter(|&i| self.energies[i] <= m + tol).collect()
    }

    /// Distinct energies ascending, merging values within `tol`.
    pub fn distinct_levels(&self, tol: f64) -> Vec<f64> {
        let mut v = self.energies.clone();
        v.sort_by(f64::total_cmp);
        v.dedup_by(|b, a| *b - *a <= tol);
        v
    }
}

/// Evaluate the cost of every basis index.
pub fn build_problem_diagonal<O>(inst: &O, cfg: &BuildConfig) -> Result<ProblemDiagonal>
where
    O: Objective,
    O::Value: Energy,
{
    let reg = inst.register();
    let qubits = reg.qubits();
    if qubits > cfg.max_qubits {
        return Err(Error::Capacity { what: "problem-diagonal qubits", requested: qubits, limit: cfg.max_qubits });
    }
    let dim = 1usize << qubits;
    let mut energies = vec![0.0; dim];
    let saturated = AtomicUsize::new(0);
    exec::for_len(cfg.exec, dim).for_each_chunk_at(&mut energies, CHUNK, |start, chunk| {
        let mut entries = vec![0u32; reg.n];
        let mut scratch = Vec::new();
        let mut clipped = 0;
        for (k, e) in chunk.iter_mut().enumerate() {
            reg.decode_into(start + k, &mut entries);
            let (v, sat) = inst.eval(&entries, &mut scratch).to_energy();
            *e = v;
            clipped += sat as usize;
        }
        saturated.fetch_add(clipped, Ordering::Relaxed);
    });
    let saturated = saturated.into_inner();
    if saturated > 0 {
        eprintln!("warning: {saturated} diagonal energies exceeded 2^53 and were saturated");
    }
    Ok(ProblemDiagonal { qubits, energies, saturated })
}

const CHUNK: usize = 1 << 12;

/// Interpolation `H(s) = A(s)·H_i + B(s)·H_P` with `A(0)=1, B(0)=0, A(1)=0, B(1)=1`.
pub trait Schedule: Sync + Send + std::fmt::Debug {
    fn a(&self, s: f64) -> f64;
    fn b(&self, s: f64) -> f64;
    fn da(&self, s: f64) -> f64;
    fn db(&self, s: f64) -> f64;
    fn name(&self) -> &str;
}

/// `A = 1 − s`, `B = s`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Linear;

impl Schedule for Linear {
    fn a(&self, s: f64) -> f64 {
        1.0 - s
    }
    fn b(&self, s: f64) -> f64 {
        s
    }
    fn da(&self, _: f64) -> f64 {
        -1.0
    }
    fn db(&self, _: f64) -> f64 {
        1.0
    }
    fn name(&self) -> &str {
        "linear"
    }
}

/// Scalar types the matrix-free kernels operate on.
pub(crate) trait Amp: Copy + Send + Sync + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}
impl Amp for f64 {}
impl Amp for Complex64 {}

/// `out = a·H_i·x + b·diag(hp)·x`.
pub(crate) fn apply_into<T: Amp>(a: f64, b: f64, hp: &[f64], x: &[T], out: &mut [T], exec: Exec) {
    let qubits = x.len().trailing_zeros() as usize;
    let half_l = 0.5 * qubits as f64;
    let exec = exec::for_len(exec, x.len());
    exec.fill(out, |i| {
        let flips = (0..qubits).fold(T::default(), |acc, l| acc + x[i ^ (1 << l)]);
        x[i] * (a * half_l + b * hp[i]) - flips * (0.5 * a)
    });
}

/// `H_i·ψ` without forming a matrix.
pub fn apply_initial_hamiltonian(psi: &StateVector) -> StateVector {
    let zeros = vec![0.0; psi.dim()];
    apply_coefficients(1.0, 0.0, &zeros, psi)
}

/// `H(s)·ψ`.
pub fn apply_hamiltonian(s: f64, sched: &dyn Schedule, hp: &ProblemDiagonal, psi: &StateVector) -> StateVector {
    assert_eq!(hp.dim(), psi.dim(), "diagonal and state dimensions differ");
    apply_coefficients(sched.a(s), sched.b(s), hp.energies(), psi)
}

fn apply_coefficients(a: f64, b: f64, hp: &[f64], psi: &StateVector) -> StateVector {
    let mut out = vec![Complex64::default(); psi.dim()];
    apply_into(a, b, hp, psi.amplitudes(), &mut out, Exec::default());
    StateVector::from_amplitudes(out).expect("same length as the input state")
}

/// Dense `H` with the given coefficients, for small registers.
pub(crate) fn dense_matrix(a: f64, b: f64, hp: &[f64]) -> nalgebra::DMatrix<f64> {
    let dim = hp.len();
    let qubits = dim.trailing_zeros() as usize;
    let mut m = nalgebra::DMatrix::zeros(dim, dim);
    for i in 0..dim {
        m[(i, i)] = a * 0.5 * qubits as f64 + b * hp[i];
        for l in 0..qubits {
            m[(i, i ^ (1 << l))] = -0.5 * a;
        }
    }
    m
}
