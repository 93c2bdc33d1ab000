use aqgi::compile::{
    brute_force_min_over_ancillas, delta_bit_poly, embed_graph, embed_minor, exhaustive_minimum, expand_cost, expand_cost_parts, penalty,
    quadratize, quadratize_term, structured_term_counts, AncillaSolver, BitRef, ChimeraGraph, EmbedOptions, EmbedOutcome, Embedding,
    ExpandConfig, Monomial, MuPolicy, Polynomial, QuadraticProgram, Qubo,
};
use aqgi::cost::{brute_force_ground, cost_gi, GiInstance, Norm, OracleConfig};
use aqgi::encoding::{IntegerString, Register};
use aqgi::graphs::{fixtures, make_cycle};
use aqgi::Exec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gi(name: &str) -> GiInstance {
    let (g, gp) = fixtures::pair(name).unwrap();
    GiInstance::new(g, gp).unwrap()
}

fn cost_at(inst: &GiInstance, x: u64) -> f64 {
    cost_gi(&IntegerString::from_basis_index(inst.register(), x as usize), inst) as f64
}

#[test]
fn expansion_equals_truth_table_interpolation() {
    // The multilinear form is unique, so the symbolic expansion must match the
    // Möbius interpolation of the cost function coefficient by coefficient.
    for inst in [gi("fig1"), gi("fig2"), gi("fig6"), GiInstance::automorphism(make_cycle(4).unwrap()).unwrap()] {
        for norm in [Norm::L1, Norm::SquaredL2] {
            let inst = inst.clone().with_norm(norm);
            let symbolic = expand_cost(&inst).unwrap();
            let interp = Polynomial::from_fn(8, |x| cost_at(&inst, x)).unwrap();
            assert_eq!(symbolic, interp);
        }
    }
}

#[test]
fn five_vertex_expansion_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for inst in [gi("fig7"), GiInstance::automorphism(make_cycle(5).unwrap()).unwrap()] {
        let parts = expand_cost_parts(&inst, &ExpandConfig::default()).unwrap();
        let p = parts.total();
        for _ in 0..10_000 {
            let x = rng.gen_range(0..1u64 << 15);
            assert_eq!(p.eval(x), cost_at(&inst, x));
        }
        let loc = parts.locality();
        assert!(loc.c1_c2_within_bound());
        assert!(loc.conjugate_degree <= loc.conjugate_bound.unwrap());
    }
}

#[test]
fn power_of_two_orders_have_no_out_of_range_part() {
    let parts = expand_cost_parts(&gi("fig2"), &ExpandConfig::default()).unwrap();
    assert!(parts.c1.is_zero());
    let loc = parts.locality();
    assert!(loc.power_of_two);
    assert_eq!(loc.conjugate_bound, None);
    assert_eq!(loc.c2_degree, 4);
}

#[test]
fn term_ratio_is_bounded() {
    let ratios: Vec<f64> = (4..=16).map(|n| structured_term_counts(Register::new(n).unwrap()).ratio).collect();
    assert!(ratios.iter().all(|&r| r > 0.0 && r < 1.0), "{ratios:?}");
}

#[test]
fn penalty_is_zero_exactly_on_products() {
    for x in [false, true] {
        for y in [false, true] {
            for b in [false, true] {
                let v = penalty(x, y, b);
                if b == (x && y) {
                    assert_eq!(v, 0);
                } else {
                    assert!(v >= 1);
                }
            }
        }
    }
}

#[test]
fn monomials_of_degree_three_to_six() {
    for k in 3..=6 {
        let vars: Vec<usize> = (0..k).collect();
        for c in [1.0, -2.5] {
            let qp = quadratize_term(&vars, c, k, MuPolicy::Adaptive).unwrap();
            assert_eq!(qp.ancillas.len(), k - 2);
            let solver = AncillaSolver::new(&qp).unwrap();
            let full = (1u64 << k) - 1;
            for x in 0..=full {
                let want = if x == full { c } else { 0.0 };
                assert_eq!(brute_force_min_over_ancillas(&qp, x).unwrap(), want, "k = {k}, x = {x:b}");
                assert_eq!(solver.min_over_ancillas(x, None), want);
            }
            assert!(exhaustive_minimum(&qp, Exec::Sequential).unwrap().constraints_hold_at_minimum);
        }
    }
}

#[test]
fn gi_program_reproduces_oracle() {
    for name in ["fig1", "fig2", "fig6"] {
        let inst = gi(name);
        let poly = expand_cost(&inst).unwrap();
        let qp = quadratize(&poly, 8, MuPolicy::Adaptive).unwrap();
        let solver = AncillaSolver::new(&qp).unwrap();
        for x in 0..256 {
            assert_eq!(solver.min_over_ancillas(x, None), cost_at(&inst, x), "{name} x = {x}");
        }
        let m = exhaustive_minimum(&qp, Exec::default()).unwrap();
        let oracle = brute_force_ground(&inst, &OracleConfig::default()).unwrap();
        assert_eq!(m.min_value, oracle.min_cost.to_string().parse::<f64>().unwrap(), "{name}");
        let idx: Vec<u64> = oracle.minimizers.iter().map(|s| s.basis_index() as u64).collect();
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        assert_eq!(m.minimizers, sorted, "{name}");
        assert!(m.constraints_hold_at_minimum, "{name}");
    }
}

#[test]
fn delta_polynomial_checks() {
    let d = delta_bit_poly(BitRef::Var(0), BitRef::Const(true));
    assert_eq!(d, Polynomial::var(0));
    let d = delta_bit_poly(BitRef::Var(0), BitRef::Const(false));
    assert_eq!(d.eval(0), 1.0);
    assert_eq!(d.eval(1), 0.0);
}

#[test]
fn chimera_structure() {
    let hw = ChimeraGraph::standard();
    assert_eq!(hw.num_qubits(), 128);
    for r in 1..3 {
        for c in 1..3 {
            for k in 0..8 {
                assert_eq!(hw.degree(hw.index(r, c, k)), 6);
            }
        }
    }
    // Bipartite within each cell.
    for &(a, b) in hw.edges() {
        let (ra, ca, ka) = hw.coords(a);
        let (rb, cb, kb) = hw.coords(b);
        if (ra, ca) == (rb, cb) {
            assert!((ka < 4) != (kb < 4));
        } else {
            assert_eq!(ka, kb);
        }
    }
    for (r, c, h) in [(1, 1, 4), (2, 3, 4), (16, 16, 4), (3, 2, 2)] {
        assert_eq!(ChimeraGraph::new(r, c, h, []).unwrap().edges().len(), ChimeraGraph::full_edge_count(r, c, h));
    }
}

#[test]
fn embedded_program_keeps_energies() {
    let hw = ChimeraGraph::new(2, 2, 4, []).unwrap();
    let mut qp = QuadraticProgram::new(3);
    qp.add_quadratic(0, 1, 1.5);
    qp.add_quadratic(0, 2, -2.0);
    qp.add_quadratic(1, 2, 0.75);
    qp.add_linear(0, 0.5);
    qp.add_linear(2, -1.0);
    qp.offset = 0.25;
    let emb = embed_minor(&qp, &hw, 4.0, EmbedOptions::default()).found().unwrap();
    assert_eq!(emb.verify(3, &[(0, 1), (0, 2), (1, 2)], &hw), Ok(()));
    let hq = Qubo::from_embedding(&qp, &emb, &hw).unwrap();
    for x in 0..8u64 {
        let logical: Vec<bool> = (0..3).map(|i| x >> i & 1 == 1).collect();
        let mut hwx = vec![false; hw.num_qubits()];
        for (v, chain) in &emb.chains {
            chain.iter().for_each(|&q| hwx[q] = logical[*v]);
        }
        assert!((hq.eval(&hwx) - qp.eval(&logical)).abs() < 1e-12);
    }
    let text = hq.to_text();
    assert_eq!(Qubo::parse(&text).unwrap().to_text(), text);
}

#[test]
fn triangle_on_one_cell() {
    let hw = ChimeraGraph::new(1, 1, 4, []).unwrap();
    let edges = [(0, 1), (1, 2), (0, 2)];
    let emb = embed_graph(3, &edges, &hw, 1.0, EmbedOptions::default()).found().unwrap();
    assert_eq!(emb.verify(3, &edges, &hw), Ok(()));
    assert!(emb.chains.values().any(|c| c.len() >= 2));
    let report = emb.report(&hw);
    assert_eq!(report.unused_qubits.len(), 8 - emb.chains.values().map(Vec::len).sum::<usize>());
}

#[test]
fn gi_program_exports_round_trip() {
    let qp = quadratize(&expand_cost(&gi("fig2")).unwrap(), 8, MuPolicy::Adaptive).unwrap();
    let text = Qubo::from_program(&qp).to_text();
    let parsed = Qubo::parse(&text).unwrap();
    assert_eq!(parsed.to_text(), text);
    assert_eq!(parsed.num_vars, qp.num_vars());
    // The larger grid leaves room for the 121-variable program.
    let hw = ChimeraGraph::new(16, 16, 4, []).unwrap();
    match embed_minor(&qp, &hw, 50.0, EmbedOptions { tries: 4, seed: 3 }) {
        EmbedOutcome::Found(emb) => {
            let edges = aqgi::compile::logical_edges(&qp);
            assert_eq!(emb.verify(qp.num_vars(), &edges, &hw), Ok(()));
            let t = Qubo::from_embedding(&qp, &emb, &hw).unwrap().to_text();
            assert_eq!(Qubo::parse(&t).unwrap().to_text(), t);
        }
        // An incomplete heuristic may fail; failure must be reported, not hidden.
        EmbedOutcome::NotFound { attempts } => assert_eq!(attempts, 4),
    }
}

#[test]
fn published_chain_geometry() {
    let hw = ChimeraGraph::standard();
    let emb = Embedding { chains: [(0, vec![103, 106, 111]), (1, vec![74])].into_iter().collect(), chain_strength: 1.0 };
    assert_eq!(emb.verify(2, &[(0, 1)], &hw), Ok(()));
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((0u64..1 << 7, -4i32..=4), 1..12)
        .prop_map(|terms| Polynomial::from_terms(terms.into_iter().map(|(m, c)| (Monomial(m), c as f64))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadratization_min_equivalence(p in arb_poly()) {
        let qp = quadratize(&p, 7, MuPolicy::Adaptive).unwrap();
        prop_assert!(qp.max_degree() <= 2);
        let solver = AncillaSolver::new(&qp).unwrap();
        for x in 0..128u64 {
            let dp = solver.min_over_ancillas(x, None);
            prop_assert_eq!(dp, p.eval(x));
            if qp.ancillas.len() <= 12 {
                prop_assert_eq!(brute_force_min_over_ancillas(&qp, x).unwrap(), dp);
            }
            let consistent = qp.consistent_assignment(x);
            prop_assert_eq!(qp.eval(&consistent), p.eval(x));
            prop_assert!(qp.violated(&consistent).is_empty());
        }
        prop_assert!(exhaustive_minimum(&qp, Exec::Sequential).unwrap().constraints_hold_at_minimum);
    }

    #[test]
    fn qubo_text_round_trip(p in arb_poly()) {
        let qp = quadratize(&p, 7, MuPolicy::Adaptive).unwrap();
        let text = Qubo::from_program(&qp).to_text();
        prop_assert_eq!(Qubo::parse(&text).unwrap().to_text(), text);
    }
}
