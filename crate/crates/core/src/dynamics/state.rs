use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use num_complex::Complex64;

/// Largest register a state vector may span (2^30 amplitudes is 16 GiB).
pub const HARD_MAX_QUBITS: usize = 30;

/// `2^L` complex amplitudes over the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wrap amplitudes; the length must be a power of two. No normalization is applied.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::input(format!("state length {len} is not 2^L with L >= 1")));
        }
        Ok(StateVector { qubits: len.trailing_zeros() as usize, amps })
    }

    /// Every amplitude `2^{−L/2}`.
    pub fn uniform(qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(StateVector { qubits, amps: vec![a; dim] })
    }

    /// Basis state `|idx⟩`.
    pub fn basis(qubits: usize, idx: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        if idx >= dim {
            return Err(Error::input(format!("basis index {idx} out of range for {qubits} qubits")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amps })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.norm_with(Exec::default())
    }

    pub fn norm_with(&self, exec: Exec) -> f64 {
        let amps = &self.amps;
        exec.sum(amps.len(), |i| amps[i].norm_sqr()).sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "inner product of states with different dimensions");
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|ψ_b|²` for every basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        let mut p = vec![0.0; self.dim()];
        let amps = &self.amps;
        exec::for_len(Exec::default(), p.len()).fill(&mut p, |i| amps[i].norm_sqr());
        p
    }

    pub fn scale(&mut self, k: f64) {
        self.amps.iter_mut().for_each(|a| *a *= k);
    }

    /// Largest entrywise distance to another state.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

fn check_qubits(qubits: usize) -> Result<()> {
    if qubits == 0 {
        return Err(Error::input("a state needs at least one qubit"));
    }
    if qubits > HARD_MAX_QUBITS {
        return Err(Error::Capacity { what: "state-vector qubits", requested: qubits, limit: HARD_MAX_QUBITS });
    }
    Ok(())
}
