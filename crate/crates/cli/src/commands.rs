use crate::args::{CommonArgs, CompileArgs, DynamicsArgs, InstanceArgs, IntegratorArg};
use crate::instance::{load_gi, load_graphs, load_sgi};
use crate::CliError;
use aqgi::autgroup::{decode_ground_strings, group_report, published_generators, GroupReport};
use aqgi::compile::{
    embed_minor, exhaustive_minimum, expand_cost_parts, quadratize_with_budget, term_stats, ChimeraGraph, EmbedOptions, EmbedOutcome,
    EmbeddingReport, ExpandConfig, LocalityReport, MuPolicy, ProgramMinimum, QuadraticProgram, Qubo, TermStats,
};
use aqgi::cost::{brute_force_ground, GiInstance, GroundSummary, Objective, OracleConfig};
use aqgi::dynamics::{repetitions, run_protocol, EvolutionConfig, Integrator, RunReport};
use aqgi::encoding::Register;
use aqgi::hamiltonian::{build_problem_diagonal, min_gap_scan, BuildConfig, Energy, Linear, RuntimeBound, SpectrumOptions};
use aqgi::Exec;
use serde::Serialize;
use std::fmt::Write;

/// Result of a subcommand before printing.
pub struct Outcome {
    pub code: u8,
    pub report: serde_json::Value,
    pub text: String,
    /// Extra files for `--out`, as `(name, contents)`.
    pub artifacts: Vec<(&'static str, String)>,
}

impl Outcome {
    fn new<R: Serialize>(code: u8, report: &R, text: String) -> Result<Self, CliError> {
        Ok(Outcome { code, report: serde_json::to_value(report)?, text, artifacts: Vec::new() })
    }
}

fn oracle_config(common: &CommonArgs) -> OracleConfig {
    let mut cfg = OracleConfig::default();
    if let Some(l) = common.limit_qubits {
        cfg.max_bits = l;
    }
    cfg
}

fn build_config(common: &CommonArgs) -> BuildConfig {
    let mut cfg = BuildConfig::default();
    if let Some(l) = common.limit_qubits {
        cfg.max_qubits = l;
    }
    cfg
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn run_dynamics<O>(inst: &O, t: f64, args: &DynamicsArgs, common: &CommonArgs) -> Result<RunReport, CliError>
where
    O: Objective,
    O::Value: Energy,
{
    let hp = build_problem_diagonal(inst, &build_config(common))?;
    let runs = match args.runs {
        Some(r) => r,
        None => repetitions(args.epsilon, args.delta)?,
    };
    let integrator = match args.integrator {
        IntegratorArg::Split => Integrator::SplitOperator,
        IntegratorArg::Rk4 => Integrator::Rk4,
    };
    let mut cfg = EvolutionConfig::new(t).with_seed(common.seed).with_integrator(integrator);
    if let Some(dt) = args.dt {
        cfg = cfg.with_dt(dt);
    }
    Ok(run_protocol(inst.register(), &hp, &cfg, runs)?)
}

fn dynamics_text(out: &mut String, r: &RunReport) {
    let _ = writeln!(out, "evolution: T = {}, dt = {:.3e}, {} ({} schedule)", r.t_total, r.dt, r.integrator, r.schedule);
    let _ = writeln!(out, "ground population: {:.6}", r.ground_population);
    let _ = writeln!(out, "runs: {}, lowest measured cost: {} (oracle {})", r.runs, r.min_cost_observed, r.oracle_min_cost);
}

fn summary_text(out: &mut String, name: &str, reg: Register, s: &GroundSummary) {
    let _ = writeln!(out, "instance: {name} (N = {}, L = {} qubits)", reg.n, reg.qubits());
    let _ = writeln!(out, "min cost: {}", s.min_cost);
    let _ = writeln!(out, "degeneracy: {}", s.degeneracy);
    let _ = writeln!(out, "minimizers: {}", joined(&s.minimizers));
}

#[derive(Serialize)]
struct DecisionReport<'a> {
    instance: &'a str,
    n: usize,
    qubits: usize,
    #[serde(flatten)]
    summary: &'a GroundSummary,
    decision: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dynamics: Option<RunReport>,
}

#[derive(Serialize)]
struct Witness {
    string: String,
    subset: Vec<usize>,
}

pub fn gi(common: &CommonArgs, input: &InstanceArgs, evolve: Option<f64>, dynamics: &DynamicsArgs) -> Result<Outcome, CliError> {
    let (name, inst) = load_gi(input)?;
    let summary = brute_force_ground(&inst, &oracle_config(common))?;
    let dynamics = evolve.map(|t| run_dynamics(&inst, t, dynamics, common)).transpose()?;
    let decision = if summary.is_isomorphic { "isomorphic" } else { "non-isomorphic" };
    let reg = inst.register();
    let mut text = String::new();
    summary_text(&mut text, &name, reg, &summary);
    if let Some(d) = &dynamics {
        dynamics_text(&mut text, d);
    }
    let _ = writeln!(text, "decision: {decision}");
    let report = DecisionReport { instance: &name, n: reg.n, qubits: reg.qubits(), summary: &summary, decision, witness: None, dynamics };
    Outcome::new(if summary.is_isomorphic { 0 } else { 1 }, &report, text)
}

pub fn sgi(
    common: &CommonArgs,
    paths: &[std::path::PathBuf],
    fixture: Option<&str>,
    evolve: Option<f64>,
    dynamics: &DynamicsArgs,
) -> Result<Outcome, CliError> {
    let (name, inst) = load_sgi(paths, fixture)?;
    let summary = brute_force_ground(&inst, &oracle_config(common))?;
    let dynamics = evolve.map(|t| run_dynamics(&inst, t, dynamics, common)).transpose()?;
    let witness = summary
        .minimizers
        .first()
        .filter(|_| summary.is_isomorphic)
        .and_then(|s| inst.witness(s).map(|a| Witness { string: s.to_string(), subset: a.to_vec() }));
    let decision = if summary.is_isomorphic { "contained" } else { "not contained" };
    let reg = inst.register();
    let mut text = String::new();
    summary_text(&mut text, &name, reg, &summary);
    if let Some(w) = &witness {
        let _ = writeln!(text, "witness: string {} subset {:?}", w.string, w.subset);
    }
    if let Some(d) = &dynamics {
        dynamics_text(&mut text, d);
    }
    let _ = writeln!(text, "decision: {decision}");
    let report = DecisionReport { instance: &name, n: reg.n, qubits: reg.qubits(), summary: &summary, decision, witness, dynamics };
    Outcome::new(if summary.is_isomorphic { 0 } else { 1 }, &report, text)
}

pub fn oracle(common: &CommonArgs, input: &InstanceArgs) -> Result<Outcome, CliError> {
    let (name, inst) = load_gi(input)?;
    let summary = brute_force_ground(&inst, &oracle_config(common))?;
    let reg = inst.register();
    let mut text = String::new();
    summary_text(&mut text, &name, reg, &summary);
    #[derive(Serialize)]
    struct Report<'a> {
        instance: &'a str,
        n: usize,
        qubits: usize,
        #[serde(flatten)]
        summary: &'a GroundSummary,
    }
    Outcome::new(0, &Report { instance: &name, n: reg.n, qubits: reg.qubits(), summary: &summary }, text)
}

pub fn aut(common: &CommonArgs, input: &InstanceArgs) -> Result<Outcome, CliError> {
    let (name, g, gp) = load_graphs(input)?;
    if gp.is_some() {
        return Err(CliError::Usage("aut takes a single graph".into()));
    }
    let inst = GiInstance::automorphism(g)?;
    let summary = brute_force_ground(&inst, &oracle_config(common))?;
    let perms = decode_ground_strings(&summary)?;
    let preferred: Vec<_> = input.fixture.as_deref().and_then(published_generators).map(|(a, b, _)| (a, b)).into_iter().collect();
    let group = group_report(&perms, &preferred);
    let mut text = String::new();
    let _ = writeln!(text, "instance: {name} (N = {}, L = {} qubits)", inst.register().n, inst.register().qubits());
    let _ = writeln!(text, "order: {}", group.order);
    let _ = writeln!(text, "elements: {}", joined(&group.elements));
    let _ = writeln!(text, "closed under composition: {}", group.closed);
    match (&group.generators, group.dihedral_n, &group.relations_checked) {
        (Some(gens), Some(n), Some(rel)) => {
            let _ = writeln!(text, "dihedral: n = {n}, alpha = {}, beta = {}, relations hold: {}", gens.alpha, gens.beta, rel.all());
        }
        _ => {
            let _ = writeln!(text, "dihedral: no generating pair found");
        }
    }
    #[derive(Serialize)]
    struct Report<'a> {
        instance: &'a str,
        n: usize,
        #[serde(flatten)]
        group: &'a GroupReport,
    }
    Outcome::new(0, &Report { instance: &name, n: inst.register().n, group: &group }, text)
}

pub fn gapscan(common: &CommonArgs, input: &InstanceArgs, grid: usize) -> Result<Outcome, CliError> {
    let (name, inst) = load_gi(input)?;
    let hp = build_problem_diagonal(&inst, &build_config(common))?;
    let scan = min_gap_scan(&hp, &Linear, grid, &SpectrumOptions::default())?;
    #[derive(Serialize)]
    struct Report<'a> {
        instance: &'a str,
        qubits: usize,
        grid: usize,
        argmin_s: f64,
        #[serde(flatten)]
        bound: RuntimeBound,
    }
    let report = Report { instance: &name, qubits: hp.qubits(), grid, argmin_s: scan.argmin_s, bound: scan.bound };
    let tsv = scan.to_tsv();
    let mut out = Outcome::new(0, &report, tsv.clone())?;
    out.artifacts.push(("gapscan.tsv", tsv));
    Ok(out)
}

pub fn evolve(common: &CommonArgs, input: &InstanceArgs, t: f64, dynamics: &DynamicsArgs) -> Result<Outcome, CliError> {
    let (name, inst) = load_gi(input)?;
    let run = run_dynamics(&inst, t, dynamics, common)?;
    let mut text = String::new();
    let _ = writeln!(text, "instance: {name} (L = {} qubits)", inst.register().qubits());
    dynamics_text(&mut text, &run);
    let _ = writeln!(text, "measured: {}", joined(&run.samples.iter().map(|s| &s.string).collect::<Vec<_>>()));
    #[derive(Serialize)]
    struct Report<'a> {
        instance: &'a str,
        qubits: usize,
        #[serde(flatten)]
        run: &'a RunReport,
    }
    Outcome::new(0, &Report { instance: &name, qubits: inst.register().qubits(), run: &run }, text)
}

#[derive(Serialize)]
struct ProgramStats {
    variables: usize,
    originals: usize,
    ancillas: usize,
    linear_terms: usize,
    quadratic_terms: usize,
    mu: String,
}

#[derive(Serialize)]
struct EmbedSummary {
    chimera: [usize; 3],
    hardware_qubits: usize,
    chain_strength: f64,
    found: bool,
    attempts: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    layout: Option<EmbeddingReport>,
}

#[derive(Serialize)]
struct CompileReport<'a> {
    instance: &'a str,
    n: usize,
    qubits: usize,
    terms: TermStats,
    locality: LocalityReport,
    program: ProgramStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_minimum: Option<ProgramMinimum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    embedding: Option<EmbedSummary>,
}

fn largest_coefficient(qp: &QuadraticProgram) -> f64 {
    qp.linear.iter().chain(qp.quadratic.values()).fold(0.0, |m, c| m.max(c.abs()))
}

pub fn compile(common: &CommonArgs, input: &InstanceArgs, args: &CompileArgs) -> Result<Outcome, CliError> {
    let (name, inst) = load_gi(input)?;
    let reg = inst.register();
    let parts = expand_cost_parts(&inst, &ExpandConfig { max_vertices: args.max_vertices, ..Default::default() })?;
    let poly = parts.total();
    let terms = term_stats(&poly, reg);
    let locality = parts.locality();
    let mu = args.mu.map_or(MuPolicy::Adaptive, MuPolicy::Fixed);
    let qp = quadratize_with_budget(&poly, reg.qubits(), mu, args.max_ancillas)?;
    let exact_minimum = args.verify.then(|| exhaustive_minimum(&qp, Exec::default())).transpose()?;
    let program = ProgramStats {
        variables: qp.num_vars(),
        originals: qp.originals,
        ancillas: qp.ancillas.len(),
        linear_terms: qp.linear.iter().filter(|c| **c != 0.0).count(),
        quadratic_terms: qp.quadratic.len(),
        mu: args.mu.map_or_else(|| "adaptive".to_string(), |m| m.to_string()),
    };
    let mut artifacts = vec![("program.qubo", Qubo::from_program(&qp).to_text())];
    let mut code = 0;
    let embedding = if args.embed {
        let hw = ChimeraGraph::new(args.chimera_rows, args.chimera_cols, args.chimera_half, [])?;
        let strength = args.chain_strength.unwrap_or(2.0 * largest_coefficient(&qp));
        let opts = EmbedOptions { tries: args.tries, seed: common.seed };
        let mut summary = EmbedSummary {
            chimera: [args.chimera_rows, args.chimera_cols, args.chimera_half],
            hardware_qubits: hw.num_qubits(),
            chain_strength: strength,
            found: false,
            attempts: args.tries,
            layout: None,
        };
        match embed_minor(&qp, &hw, strength, opts) {
            EmbedOutcome::Found(emb) => {
                artifacts.push(("embedded.qubo", Qubo::from_embedding(&qp, &emb, &hw)?.to_text()));
                summary.found = true;
                summary.layout = Some(emb.report(&hw));
            }
            EmbedOutcome::NotFound { attempts } => {
                summary.attempts = attempts;
                code = 1;
            }
        }
        Some(summary)
    } else {
        None
    };

    let mut text = String::new();
    let c = &terms.structured;
    let _ = writeln!(text, "instance: {name} (N = {}, L = {} qubits)", reg.n, reg.qubits());
    let _ = writeln!(text, "structured terms: T1 = {}, T2 = {}, T3 = {}, total {} (T/L^2 = {:.3})", c.t1, c.t2, c.t3, c.total, c.ratio);
    let _ = writeln!(text, "polynomial: {} monomials, degree {}", terms.monomials, terms.max_degree);
    let _ = writeln!(
        text,
        "locality: C1 {}, C2 {}, C3 {} (2U bound {})",
        locality.c1_degree, locality.c2_degree, locality.c3_degree, locality.two_u_bound
    );
    let _ = writeln!(
        text,
        "quadratic program: {} variables ({} ancillas), {} quadratic terms, mu {}",
        program.variables, program.ancillas, program.quadratic_terms, program.mu
    );
    if let Some(m) = &exact_minimum {
        let _ = writeln!(
            text,
            "exact minimum: {} at {} assignments, constraints hold: {}",
            m.min_value,
            m.minimizers.len(),
            m.constraints_hold_at_minimum
        );
    }
    if let Some(e) = &embedding {
        match &e.layout {
            Some(l) => {
                let _ = writeln!(text, "embedding: found on {} qubits, longest chain {}", e.hardware_qubits, l.max_chain_length);
            }
            None => {
                let _ = writeln!(text, "embedding: none found on {} qubits after {} attempts", e.hardware_qubits, e.attempts);
            }
        }
    }
    let report = CompileReport { instance: &name, n: reg.n, qubits: reg.qubits(), terms, locality, program, exact_minimum, embedding };
    let mut out = Outcome::new(code, &report, text)?;
    out.artifacts = artifacts;
    Ok(out)
}
