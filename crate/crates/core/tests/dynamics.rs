mod common;

use aqgi::cost::GiInstance;
use aqgi::dynamics::{
    evolve, ground_population, repeat_protocol, repetitions, run_protocol, sample, EvolutionConfig, Integrator, Sample, StateVector,
};
use aqgi::graphs::{fixtures, make_cycle};
use aqgi::hamiltonian::{build_problem_diagonal, BuildConfig, ProblemDiagonal};
use aqgi::Exec;
use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn max_diff(psi: &StateVector, y: &DVector<Complex64>) -> f64 {
    psi.amplitudes().iter().zip(y.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

fn self_diag(name: &str) -> ProblemDiagonal {
    let g = fixtures::single(name).unwrap();
    build_problem_diagonal(&GiInstance::automorphism(g).unwrap(), &BuildConfig::default()).unwrap()
}

#[test]
fn matrix_free_matches_dense_integration() {
    let cases: Vec<Vec<f64>> = vec![
        vec![5.0, 0.0, 0.0, 5.0],
        vec![3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0],
        (0..16).map(|i| ((i * 7) % 5) as f64).collect(),
    ];
    for e in cases {
        let hp = ProblemDiagonal::from_energies(e.clone()).unwrap();
        let t = 4.0;
        let oracle = common::dense_rk4(&e, t, 40_000);
        let psi0 = StateVector::uniform(hp.qubits()).unwrap();
        for integ in [Integrator::SplitOperator, Integrator::Rk4] {
            let cfg = EvolutionConfig::new(t).with_dt(2e-4).with_integrator(integ);
            let psi = evolve(&psi0, &hp, &cfg).unwrap();
            let d = max_diff(&psi, &oracle);
            assert!(d < 1e-6, "{} on L = {}: {d:e}", integ.name(), hp.qubits());
        }
    }
}

#[test]
fn ground_population_grows_with_time() {
    for name in ["k2", "c4"] {
        let hp = self_diag(name);
        let ground = hp.ground_indices(1e-9);
        let psi0 = StateVector::uniform(hp.qubits()).unwrap();
        let mut t = 1.0;
        let mut prev = 0.0;
        let mut reached = None;
        for _ in 0..=10 {
            let psi = evolve(&psi0, &hp, &EvolutionConfig::new(t)).unwrap();
            assert!((psi.norm() - 1.0).abs() <= 1e-6);
            let p = ground_population(&psi, &ground);
            assert!(p >= prev - 0.02, "{name}: population fell from {prev} to {p} at T = {t}");
            prev = p;
            if p >= 0.9 {
                reached = Some(t);
                break;
            }
            t *= 2.0;
        }
        assert!(reached.is_some(), "{name}: population stayed below 0.9");
    }
}

#[test]
fn population_is_monotone_on_a_coarse_time_grid() {
    for name in ["k2", "c4"] {
        let hp = self_diag(name);
        let ground = hp.ground_indices(1e-9);
        let psi0 = StateVector::uniform(hp.qubits()).unwrap();
        let pops: Vec<f64> =
            [1.0, 5.0, 25.0, 125.0].iter().map(|&t| ground_population(&evolve(&psi0, &hp, &EvolutionConfig::new(t)).unwrap(), &ground)).collect();
        assert!(pops.windows(2).all(|w| w[1] >= w[0] - 0.02), "{name}: {pops:?}");
    }
}

#[test]
fn long_k2_evolution_is_adiabatic() {
    let hp = self_diag("k2");
    let psi = evolve(&StateVector::uniform(2).unwrap(), &hp, &EvolutionConfig::new(100.0).with_dt(1e-3)).unwrap();
    assert!(ground_population(&psi, &hp.ground_indices(1e-9)) >= 0.99);
}

#[test]
fn fig2_samples_decode_to_the_isomorphisms() {
    let (g, gp) = fixtures::fig2();
    let inst = GiInstance::new(g, gp).unwrap();
    let hp = build_problem_diagonal(&inst, &BuildConfig::default()).unwrap();
    let psi = evolve(&StateVector::uniform(8).unwrap(), &hp, &EvolutionConfig::new(64.0)).unwrap();
    let shots = sample(&psi, 5, 2000);
    let isos = ["0132", "0231", "3102", "3201"];
    let hits = shots
        .iter()
        .filter(|&&i| isos.contains(&aqgi::encoding::IntegerString::from_basis_index(inst.register(), i).to_string().as_str()))
        .count();
    assert!(hits as f64 / shots.len() as f64 >= 0.9, "{hits} of {}", shots.len());
}

#[test]
fn sequential_and_parallel_evolution_agree() {
    let hp = self_diag("c4");
    let psi0 = StateVector::uniform(8).unwrap();
    let a = evolve(&psi0, &hp, &EvolutionConfig::new(3.0).with_exec(Exec::Sequential)).unwrap();
    let b = evolve(&psi0, &hp, &EvolutionConfig::new(3.0).with_exec(Exec::Parallel)).unwrap();
    assert!(a.max_abs_diff(&b) < 1e-12);
}

#[test]
fn sampling_follows_born_rule() {
    let amps: Vec<Complex64> = [0.1, 0.2, 0.3, 0.4, 0.0, 0.5, 0.6, 0.3].iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    let psi = StateVector::from_amplitudes(amps.iter().map(|a| a / norm).collect()).unwrap();
    let shots = 200_000;
    let mut counts = [0usize; 8];
    sample(&psi, 2024, shots).into_iter().for_each(|i| counts[i] += 1);
    assert_eq!(counts[4], 0);
    let probs = psi.probabilities();
    let chi2: f64 = (0..8)
        .filter(|&i| probs[i] > 0.0)
        .map(|i| {
            let e = probs[i] * shots as f64;
            (counts[i] as f64 - e).powi(2) / e
        })
        .sum();
    let p_value = 1.0 - ChiSquared::new(6.0).unwrap().cdf(chi2);
    assert!(p_value > 1e-3, "chi2 = {chi2}, p = {p_value}");
}

#[test]
fn protocol_is_reproducible_and_finds_ground_state() {
    let inst = GiInstance::automorphism(make_cycle(4).unwrap()).unwrap();
    let hp = build_problem_diagonal(&inst, &BuildConfig::default()).unwrap();
    let cfg = EvolutionConfig::new(64.0).with_seed(9);
    let a = run_protocol(inst.register(), &hp, &cfg, 10).unwrap();
    let b = run_protocol(inst.register(), &hp, &cfg, 10).unwrap();
    assert_eq!(a, b);
    assert!(a.matches_oracle);
    assert_eq!(a.oracle_min_cost, 0.0);
    let c = run_protocol(inst.register(), &hp, &cfg.clone().with_seed(10), 10).unwrap();
    assert_eq!(a.ground_population, c.ground_population);
}

#[test]
fn protocol_repetition_count() {
    assert_eq!(repetitions(0.5, 0.999).unwrap(), 10);
    let reg = aqgi::encoding::Register::new(2).unwrap();
    let out = repeat_protocol(0.5, 0.999, 1, |seed| Ok(Sample::new(reg, (seed % 4) as usize, (seed % 3) as f64))).unwrap();
    assert_eq!(out.k, 10);
    assert_eq!(out.samples.len(), 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn evolution_preserves_norm(e in proptest::collection::vec(0.0f64..6.0, 8), t in 0.5f64..8.0) {
        let hp = ProblemDiagonal::from_energies(e).unwrap();
        let psi = evolve(&StateVector::uniform(3).unwrap(), &hp, &EvolutionConfig::new(t)).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn repetitions_meet_the_target(eps in 0.01f64..0.99, frac in 0.01f64..0.99) {
        // δ strictly inside (1 − ε, 1).
        let delta = 1.0 - eps * frac;
        let k = repetitions(eps, delta).unwrap();
        prop_assert!(1.0 - eps.powi(k as i32) >= delta - 1e-12);
        if k > 1 {
            prop_assert!(1.0 - eps.powi(k as i32 - 1) < delta + 1e-12);
        }
    }
}
