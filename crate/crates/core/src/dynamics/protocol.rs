use super::{evolve, ground_population, sample, EvolutionConfig, StateVector};
use crate::encoding::{BinaryString, IntegerString, Register};
use crate::error::{Error, Result};
use crate::hamiltonian::ProblemDiagonal;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Runs needed so that at least one of them succeeds with probability `δ`, when a
/// single run fails with probability at most `ε`: `⌈ln(1−δ) / ln ε⌉`.
pub fn repetitions(epsilon: f64, delta: f64) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::input(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    if !(delta > 1.0 - epsilon && delta < 1.0) {
        return Err(Error::input(format!("delta = {delta} must lie in (1 - epsilon, 1) = ({}, 1)", 1.0 - epsilon)));
    }
    let k = (1.0 - delta).ln() / epsilon.ln();
    // Absorb rounding so that exact ratios such as ln(0.01)/ln(0.1) = 2 stay 2.
    Ok((k - 1e-9).ceil().max(1.0) as usize)
}

/// Seed of run `run` derived from the master seed (ChaCha stream per run).
pub fn run_seed(master: u64, run: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(run);
    rng.next_u64()
}

/// One measured outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    #[serde(skip)]
    pub index: usize,
    pub bits: BinaryString,
    pub string: IntegerString,
    pub cost: f64,
}

impl Sample {
    pub fn new(reg: Register, index: usize, cost: f64) -> Self {
        Sample {
            index,
            bits: BinaryString::from_basis_index(reg, index),
            string: IntegerString::from_basis_index(reg, index),
            cost,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolOutcome {
    pub k: usize,
    pub samples: Vec<Sample>,
    pub min_cost_observed: f64,
}

/// Execute `runner(seed)` `k(ε, δ)` times with per-run seeds and keep the cheapest outcome.
pub fn repeat_protocol<R>(epsilon: f64, delta: f64, master_seed: u64, runner: R) -> Result<ProtocolOutcome>
where
    R: FnMut(u64) -> Result<Sample>,
{
    let k = repetitions(epsilon, delta)?;
    repeat_k(k, master_seed, runner)
}

fn repeat_k<R>(k: usize, master_seed: u64, mut runner: R) -> Result<ProtocolOutcome>
where
    R: FnMut(u64) -> Result<Sample>,
{
    let samples = (0..k as u64).map(|r| runner(run_seed(master_seed, r))).collect::<Result<Vec<_>>>()?;
    let min_cost_observed = samples.iter().map(|s| s.cost).fold(f64::INFINITY, f64::min);
    Ok(ProtocolOutcome { k, samples, min_cost_observed })
}

/// Report of an evolve-and-measure experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    #[serde(rename = "T")]
    pub t_total: f64,
    pub dt: f64,
    pub integrator: &'static str,
    pub schedule: String,
    pub ground_population: f64,
    pub runs: usize,
    pub samples: Vec<Sample>,
    pub min_cost_observed: f64,
    pub oracle_min_cost: f64,
    pub matches_oracle: bool,
}

/// Evolve the uniform state once, then measure it in `runs` independent runs.
///
/// The evolution is deterministic, so every run measures the same final state;
/// only the measurement seed differs between runs.
pub fn run_protocol(reg: Register, hp: &ProblemDiagonal, cfg: &EvolutionConfig, runs: usize) -> Result<RunReport> {
    if hp.qubits() != reg.qubits() {
        return Err(Error::input("register and diagonal disagree on the qubit count"));
    }
    if runs == 0 {
        return Err(Error::input("at least one run is required"));
    }
    let (_, dt) = cfg.steps(hp)?;
    let psi = evolve(&StateVector::uniform(hp.qubits())?, hp, cfg)?;
    let ground = hp.ground_indices(1e-9);
    let oracle_min_cost = hp.min();
    let outcome = repeat_k(runs, cfg.seed, |seed| {
        let idx = sample(&psi, seed, 1)[0];
        Ok(Sample::new(reg, idx, hp.energies()[idx]))
    })?;
    Ok(RunReport {
        t_total: cfg.t_total,
        dt,
        integrator: cfg.integrator.name(),
        schedule: cfg.schedule.name().to_string(),
        ground_population: ground_population(&psi, &ground),
        runs,
        min_cost_observed: outcome.min_cost_observed,
        matches_oracle: outcome.min_cost_observed == oracle_min_cost,
        samples: outcome.samples,
        oracle_min_cost,
    })
}
