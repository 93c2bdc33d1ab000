use super::StateVector;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::hamiltonian::{apply_into, Linear, ProblemDiagonal, Schedule};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Largest `|‖ψ(T)‖ − 1|` accepted at the end of an evolution.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Integrator {
    /// Second-order split: exact diagonal phase half-steps around exact
    /// single-qubit rotations, coefficients at the step midpoint.
    #[default]
    SplitOperator,
    /// Classical fourth-order Runge–Kutta on the full equation.
    Rk4,
}

impl Integrator {
    pub fn name(self) -> &'static str {
        match self {
            Integrator::SplitOperator => "split-operator",
            Integrator::Rk4 => "rk4",
        }
    }
}

impl std::str::FromStr for Integrator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split-operator" | "split" => Ok(Integrator::SplitOperator),
            "rk4" => Ok(Integrator::Rk4),
            _ => Err(Error::input(format!("unknown integrator {s:?} (split-operator, rk4)"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvolutionConfig {
    /// Total time `T`.
    pub t_total: f64,
    /// Requested step; `None` picks [`default_dt`]. The step actually used is `T / ⌈T / dt⌉`.
    pub dt: Option<f64>,
    pub schedule: Arc<dyn Schedule>,
    pub integrator: Integrator,
    /// Master seed for measurements made after the evolution.
    pub seed: u64,
    pub exec: Exec,
}

impl EvolutionConfig {
    pub fn new(t_total: f64) -> Self {
        EvolutionConfig {
            t_total,
            dt: None,
            schedule: Arc::new(Linear),
            integrator: Integrator::default(),
            seed: 0,
            exec: Exec::default(),
        }
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = Some(dt);
        self
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> Self {
        self.integrator = integrator;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Step count and step size used for `hp`.
    pub fn steps(&self, hp: &ProblemDiagonal) -> Result<(usize, f64)> {
        if !(self.t_total > 0.0 && self.t_total.is_finite()) {
            return Err(Error::input(format!("total time T = {} must be positive", self.t_total)));
        }
        let dt = self.dt.unwrap_or_else(|| default_dt(hp));
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::input(format!("dt = {dt} must be positive")));
        }
        let n = (self.t_total / dt - 1e-9).ceil().max(1.0) as usize;
        Ok((n, self.t_total / n as f64))
    }
}

/// Step with `dt · (max cost + L) = 0.05`.
pub fn default_dt(hp: &ProblemDiagonal) -> f64 {
    0.05 / (hp.max() + hp.qubits() as f64)
}

/// Integrate `i dψ/dt = H(t/T) ψ` from `0` to `T` (ħ = 1).
pub fn evolve(psi0: &StateVector, hp: &ProblemDiagonal, cfg: &EvolutionConfig) -> Result<StateVector> {
    if psi0.dim() != hp.dim() {
        return Err(Error::input(format!("state has {} amplitudes, diagonal has {}", psi0.dim(), hp.dim())));
    }
    let n0 = psi0.norm_with(cfg.exec);
    if (n0 - 1.0).abs() > 1e-9 {
        return Err(Error::contract(format!("initial state norm {n0} is not 1")));
    }
    let (steps, dt) = cfg.steps(hp)?;
    let mut psi = psi0.clone();
    match cfg.integrator {
        Integrator::SplitOperator => split_operator(&mut psi, hp, cfg, steps, dt),
        Integrator::Rk4 => rk4(&mut psi, hp, cfg, steps, dt),
    }
    let drift = (psi.norm_with(cfg.exec) - 1.0).abs();
    if drift > NORM_DRIFT_LIMIT {
        return Err(Error::numerical(format!(
            "norm drifted by {drift:.3e} over {steps} steps of dt = {dt:.3e} with {}; use a smaller dt",
            cfg.integrator.name()
        )));
    }
    Ok(psi)
}

/// Energies as indices into a short table of distinct levels, when that table is small.
struct LevelTable {
    levels: Vec<f64>,
    index: Vec<u32>,
}

impl LevelTable {
    const MAX_LEVELS: usize = 1 << 16;

    fn new(hp: &ProblemDiagonal) -> Option<Self> {
        let mut levels = hp.energies().to_vec();
        levels.sort_by(f64::total_cmp);
        levels.dedup();
        if levels.len() > Self::MAX_LEVELS {
            return None;
        }
        let index = hp
            .energies()
            .iter()
            .map(|e| levels.binary_search_by(|l| l.total_cmp(e)).expect("level present") as u32)
            .collect();
        Some(LevelTable { levels, index })
    }
}

/// `ψ_b ← ψ_b · g · exp(−iθ E_b)`.
fn apply_phase(psi: &mut [Complex64], hp: &ProblemDiagonal, table: Option<&LevelTable>, theta: f64, global: Complex64, exec: Exec) {
    match table {
        Some(t) => {
            let factors: Vec<Complex64> = t.levels.iter().map(|&e| global * Complex64::from_polar(1.0, -theta * e)).collect();
            exec.for_each_mut(psi, |i, a| *a *= factors[t.index[i] as usize]);
        }
        None => {
            let e = hp.energies();
            exec.for_each_mut(psi, |i, a| *a *= global * Complex64::from_polar(1.0, -theta * e[i]));
        }
    }
}

/// `exp(−iφ(I − X))` on every qubit, without the global factor `e^{−iLφ}`.
fn apply_mixer(psi: &mut [Complex64], qubits: usize, phi: f64, exec: Exec) {
    let (c, s) = (phi.cos(), phi.sin());
    let is = Complex64::new(0.0, s);
    let rot = |x0: &mut Complex64, x1: &mut Complex64| {
        let (a, b) = (*x0, *x1);
        *x0 = a * c + b * is;
        *x1 = b * c + a * is;
    };
    for l in 0..qubits {
        let stride = 1usize << l;
        let blocks = psi.len() / (2 * stride);
        if blocks >= 64 || !exec.is_parallel() {
            exec.for_each_chunk(psi, 2 * stride, |chunk| {
                let (lo, hi) = chunk.split_at_mut(stride);
                lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| rot(a, b));
            });
        } else {
            for chunk in psi.chunks_mut(2 * stride) {
                let (lo, hi) = chunk.split_at_mut(stride);
                exec.zip_mut(lo, hi, rot);
            }
        }
    }
}

fn split_operator(psi: &mut StateVector, hp: &ProblemDiagonal, cfg: &EvolutionConfig, steps: usize, dt: f64) {
    let exec = exec::for_len(cfg.exec, psi.dim());
    let table = LevelTable::new(hp);
    let qubits = hp.qubits();
    let sched = cfg.schedule.as_ref();
    let one = Complex64::new(1.0, 0.0);
    let amps = psi.amplitudes_mut();
    for k in 0..steps {
        let sm = (k as f64 + 0.5) * dt / cfg.t_total;
        let (a, b) = (sched.a(sm), sched.b(sm));
        let phi = 0.5 * a * dt;
        apply_phase(amps, hp, table.as_ref(), 0.5 * b * dt, one, exec);
        apply_mixer(amps, qubits, phi, exec);
        let global = Complex64::from_polar(1.0, -(qubits as f64) * phi);
        apply_phase(amps, hp, table.as_ref(), 0.5 * b * dt, global, exec);
    }
}

fn rk4(psi: &mut StateVector, hp: &ProblemDiagonal, cfg: &EvolutionConfig, steps: usize, dt: f64) {
    let exec = exec::for_len(cfg.exec, psi.dim());
    let sched = cfg.schedule.as_ref();
    let dim = psi.dim();
    let zero = Complex64::default();
    let minus_i = Complex64::new(0.0, -1.0);
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) = (vec![zero; dim], vec![zero; dim], vec![zero; dim], vec![zero; dim], vec![zero; dim]);
    // k = −i·H(s)·x
    let deriv = |s: f64, x: &[Complex64], out: &mut [Complex64]| {
        apply_into(sched.a(s), sched.b(s), hp.energies(), x, out, exec);
        exec.for_each_mut(out, |_, v| *v *= minus_i);
    };
    let amps = psi.amplitudes_mut();
    for k in 0..steps {
        let t = k as f64 * dt;
        let s = |tt: f64| tt / cfg.t_total;
        deriv(s(t), amps, &mut k1);
        exec.fill(&mut tmp, |i| amps[i] + k1[i] * (0.5 * dt));
        deriv(s(t + 0.5 * dt), &tmp, &mut k2);
        exec.fill(&mut tmp, |i| amps[i] + k2[i] * (0.5 * dt));
        deriv(s(t + 0.5 * dt), &tmp, &mut k3);
        exec.fill(&mut tmp, |i| amps[i] + k3[i] * dt);
        deriv(s(t + dt), &tmp, &mut k4);
        exec.for_each_mut(amps, |i, v| *v += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::ground_population;

    fn k2() -> ProblemDiagonal {
        ProblemDiagonal::from_energies(vec![5.0, 0.0, 0.0, 5.0]).unwrap()
    }

    #[test]
    fn zero_diagonal_keeps_uniform_state() {
        let hp = ProblemDiagonal::from_energies(vec![0.0; 8]).unwrap();
        let u = StateVector::uniform(3).unwrap();
        let out = evolve(&u, &hp, &EvolutionConfig::new(3.0).with_dt(0.01)).unwrap();
        assert!((u.inner(&out).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k2_slow_evolution_reaches_ground_space() {
        let out = evolve(&StateVector::uniform(2).unwrap(), &k2(), &EvolutionConfig::new(100.0).with_dt(0.001)).unwrap();
        assert!(ground_population(&out, &[1, 2]) >= 0.99);
    }

    #[test]
    fn sudden_limit_leaves_uniform_overlap() {
        let hp = k2();
        let cfg = EvolutionConfig::new(1e-3).with_dt(1e-3);
        assert_eq!(cfg.steps(&hp).unwrap().0, 1);
        let out = evolve(&StateVector::uniform(2).unwrap(), &hp, &cfg).unwrap();
        assert!((ground_population(&out, &[1, 2]) - 0.5).abs() < 1e-3);
    }

    #[test]
    fn integrators_agree() {
        let hp = ProblemDiagonal::from_energies(vec![2.0, 0.0, 3.0, 1.0, 1.0, 4.0, 0.0, 2.0]).unwrap();
        let u = StateVector::uniform(3).unwrap();
        let split = evolve(&u, &hp, &EvolutionConfig::new(2.0).with_dt(1e-4)).unwrap();
        let rk = evolve(&u, &hp, &EvolutionConfig::new(2.0).with_dt(1e-4).with_integrator(Integrator::Rk4)).unwrap();
        assert!(split.max_abs_diff(&rk) < 1e-6, "{}", split.max_abs_diff(&rk));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let energies: Vec<f64> = (0..1 << 13).map(|i| (i % 7) as f64).collect();
        let hp = ProblemDiagonal::from_energies(energies).unwrap();
        let u = StateVector::uniform(13).unwrap();
        let cfg = EvolutionConfig::new(0.5).with_dt(0.01);
        let a = evolve(&u, &hp, &cfg.clone().with_exec(Exec::Sequential)).unwrap();
        let b = evolve(&u, &hp, &cfg.with_exec(Exec::Parallel)).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn rejects_bad_config() {
        let u = StateVector::uniform(2).unwrap();
        assert!(evolve(&u, &k2(), &EvolutionConfig::new(0.0)).is_err());
        assert!(evolve(&u, &k2(), &EvolutionConfig::new(1.0).with_dt(-1.0)).is_err());
        let mut bad = u.clone();
        bad.scale(2.0);
        assert!(matches!(evolve(&bad, &k2(), &EvolutionConfig::new(1.0)), Err(Error::Contract(_))));
    }

    #[test]
    fn rk4_drift_is_reported() {
        // A coarse RK4 step on a stiff diagonal is not norm-preserving.
        let hp = ProblemDiagonal::from_energies(vec![0.0, 50.0]).unwrap();
        let cfg = EvolutionConfig::new(5.0).with_dt(0.05).with_integrator(Integrator::Rk4);
        assert!(matches!(evolve(&StateVector::uniform(1).unwrap(), &hp, &cfg), Err(Error::Numerical(_))));
    }
}
