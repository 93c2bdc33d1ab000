//! Time evolution under `H(t)`, computational-basis measurement, and the
//! repeated-run protocol.

mod evolve;
mod protocol;
mod state;

pub use evolve::{default_dt, evolve, EvolutionConfig, Integrator};
pub use protocol::{repetitions, repeat_protocol, run_seed, run_protocol, ProtocolOutcome, RunReport, Sample};
pub use state::{StateVector, HARD_MAX_QUBITS};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Probability mass on the given basis indices.
///
/// # Panics
/// If an index is outside the state.
pub fn ground_population(psi: &StateVector, ground: &[usize]) -> f64 {
    ground.iter().map(|&i| psi.amplitudes()[i].norm_sqr()).sum()
}

/// One computational-basis measurement, reproducible per seed.
pub fn measure(psi: &StateVector, seed: u64) -> usize {
    sample(psi, seed, 1)[0]
}

/// `shots` independent measurements drawn from one seeded stream.
pub fn sample(psi: &StateVector, seed: u64, shots: usize) -> Vec<usize> {
    let mut cdf = Vec::with_capacity(psi.dim());
    let mut acc = 0.0;
    for a in psi.amplitudes() {
        acc += a.norm_sqr();
        cdf.push(acc);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..shots)
        .map(|_| {
            let u = rng.gen::<f64>() * acc;
            // First index whose cumulative mass exceeds u; skips zero-probability states.
            cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn population_examples() {
        let u = StateVector::uniform(3).unwrap();
        assert!((ground_population(&u, &[0, 3, 5, 6]) - 0.5).abs() < 1e-15);
        let b = StateVector::basis(3, 5).unwrap();
        assert_eq!(ground_population(&b, &[0, 5]), 1.0);
        assert_eq!(ground_population(&b, &[0, 1]), 0.0);
    }

    #[test]
    fn measuring_a_basis_state_is_certain() {
        let b = StateVector::basis(4, 11).unwrap();
        assert!(sample(&b, 7, 1000).iter().all(|&i| i == 11));
    }

    #[test]
    fn measurement_is_reproducible() {
        let u = StateVector::uniform(5).unwrap();
        assert_eq!(sample(&u, 42, 100), sample(&u, 42, 100));
        assert_ne!(sample(&u, 42, 100), sample(&u, 43, 100));
    }

    #[test]
    fn uniform_frequencies() {
        let u = StateVector::uniform(2).unwrap();
        let shots = 100_000;
        let mut counts = [0usize; 4];
        sample(&u, 1, shots).into_iter().for_each(|i| counts[i] += 1);
        for c in counts {
            assert!((c as f64 / shots as f64 - 0.25).abs() < 0.01);
        }
    }

    #[test]
    fn zero_amplitudes_are_never_drawn() {
        let amps = vec![Complex64::new(0.0, 0.0), Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.8)];
        let psi = StateVector::from_amplitudes(amps).unwrap();
        assert!(sample(&psi, 3, 10_000).iter().all(|&i| i == 1 || i == 3));
    }
}
