mod common;

use aqgi::autgroup::{
    check_dihedral, compose, decode_ground_strings, find_dihedral_generators, generate_from, group_report, match_group, published_generators,
    verify_closure, Permutation,
};
use aqgi::cost::{brute_force_ground, conjugate_adjacency, GiInstance, OracleConfig};
use aqgi::graphs::fixtures;
use aqgi::Error;
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Published tables: powers of α in order, then the β coset in the order listed.
const TABLES: &[(&str, &[&str], &[&str])] = &[
    ("c4", &["3012", "2301", "1230", "0123"], &["0321", "3210", "2103", "1032"]),
    ("c5", &["40123", "34012", "23401", "12340", "01234"], &["04321", "10432", "21043", "32104", "43210"]),
    (
        "c6",
        &["501234", "450123", "345012", "234501", "123450", "012345"],
        &["105432", "210543", "321054", "432105", "543210", "054321"],
    ),
    (
        "c7",
        &["6012345", "5601234", "4560123", "3456012", "2345601", "1234560", "0123456"],
        &["0654321", "1065432", "2106543", "3210654", "4321065", "5432106", "6543210"],
    ),
    ("g23", &["452301", "012345"], &["103254", "543210"]),
    (
        "w7",
        &["5012346", "4501236", "3450126", "2345016", "1234506", "0123456"],
        &["1054326", "2105436", "3210546", "4321056", "5432106", "0543216"],
    ),
];

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn decoded(name: &str) -> Vec<Permutation> {
    let g = fixtures::single(name).unwrap();
    let summary = brute_force_ground(&GiInstance::automorphism(g).unwrap(), &OracleConfig::default()).unwrap();
    let perms = decode_ground_strings(&summary).unwrap();
    assert_eq!(perms.len(), summary.degeneracy);
    perms
}

fn set(v: impl IntoIterator<Item = Permutation>) -> BTreeSet<Permutation> {
    v.into_iter().collect()
}

#[test]
fn ground_sets_equal_published_tables() {
    let orders = [("c4", 8), ("c5", 10), ("c6", 12), ("c7", 14), ("g23", 4), ("w7", 12)];
    for &(name, rotations, reflections) in TABLES {
        let got = decoded(name);
        let want = set(rotations.iter().chain(reflections).map(|s| p(s)));
        assert_eq!(set(got.clone()), want, "{name}");
        assert_eq!(got.len(), orders.iter().find(|o| o.0 == name).unwrap().1);
        assert_eq!(verify_closure(&got), Ok(()), "{name}");
        // Independent oracle: adjacency-preserving permutations of all N!.
        let brute: Vec<String> = common::brute_automorphisms(&fixtures::single(name).unwrap());
        assert_eq!(got.iter().map(ToString::to_string).collect::<Vec<_>>(), brute, "{name}");
    }
}

#[test]
fn published_generators_rebuild_the_tables() {
    for &(name, rotations, reflections) in TABLES {
        let (a, b, n) = published_generators(name).unwrap();
        assert!(check_dihedral(&a, &b, n).unwrap(), "{name}");
        let table = generate_from(&a, &b, n).unwrap();
        assert!(table.collapsed.is_empty(), "{name}");
        assert_eq!(table.order(), 2 * n);
        let want: Vec<Permutation> = rotations.iter().chain(reflections).map(|s| p(s)).collect();
        assert!(match_group(&want, &table), "{name}");
        // α powers are listed in order.
        for (i, s) in rotations.iter().enumerate() {
            assert_eq!(a.pow(i + 1), p(s), "{name} α^{}", i + 1);
        }
    }
}

#[test]
fn coset_labels() {
    // The C4 table labels its coset α^iβ with the right-to-left product.
    let (a, b, _) = published_generators("c4").unwrap();
    for (i, s) in ["0321", "3210", "2103", "1032"].iter().enumerate() {
        assert_eq!(compose(&a.pow(i), &b).unwrap(), p(s));
    }
    // The other tables list their coset so that the i-th entry equals β∘α^i.
    for name in ["c5", "c6", "c7", "w7"] {
        let (a, b, _) = published_generators(name).unwrap();
        let (_, _, reflections) = TABLES.iter().find(|t| t.0 == name).unwrap();
        for (i, s) in reflections.iter().enumerate() {
            assert_eq!(compose(&b, &a.pow(i)).unwrap(), p(s), "{name} entry {i}");
        }
    }
}

#[test]
fn klein_group_commutes() {
    let (a, b, _) = published_generators("g23").unwrap();
    assert_eq!(compose(&a, &b).unwrap(), compose(&b, &a).unwrap());
    assert_eq!(compose(&a, &b).unwrap(), p("543210"));
}

#[test]
fn wheel_automorphisms_fix_the_hub() {
    assert!(decoded("w7").iter().all(|q| q.images()[6] == 6));
}

#[test]
fn fig2_zero_cost_strings() {
    let (g, gp) = fixtures::fig2();
    let summary = brute_force_ground(&GiInstance::new(g.clone(), gp.clone()).unwrap(), &OracleConfig::default()).unwrap();
    let perms = decode_ground_strings(&summary).unwrap();
    assert_eq!(set(perms), set(["0231", "3201", "3102", "0132"].map(p)));
    for s in &summary.minimizers {
        let b = conjugate_adjacency(s, &g);
        assert!(b.iter().zip(gp.adjacency()).all(|(&x, &y)| x == y as i64));
    }
}

#[test]
fn non_isomorphic_summary_is_rejected() {
    let (g, gp) = fixtures::fig1();
    let summary = brute_force_ground(&GiInstance::new(g, gp).unwrap(), &OracleConfig::default()).unwrap();
    assert!(matches!(decode_ground_strings(&summary), Err(Error::Contract(_))));
}

#[test]
fn generator_search_and_report() {
    let perms = decoded("c6");
    let (a, b, n) = find_dihedral_generators(&perms, &[]).unwrap();
    assert_eq!(n, 6);
    assert!(check_dihedral(&a, &b, n).unwrap());
    let (pa, pb, _) = published_generators("c6").unwrap();
    let report = group_report(&perms, &[(pa.clone(), pb.clone())]);
    assert_eq!(report.order, 12);
    assert!(report.closed);
    assert_eq!(report.dihedral_n, Some(6));
    let gens = report.generators.as_ref().unwrap();
    assert_eq!((&gens.alpha, &gens.beta), (&pa, &pb));
    assert!(report.relations_checked.unwrap().all());
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["elements"][0], "012345");
    assert_eq!(json["generators"]["alpha"], "501234");
}

fn arb_perm_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1usize..9).prop_flat_map(|n| {
        let base: Vec<usize> = (0..n).collect();
        let one = Just(base).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap());
        (one.clone(), one.clone(), one)
    })
}

proptest! {
    #[test]
    fn composition_laws((x, y, z) in arb_perm_triple()) {
        let xy_z = compose(&compose(&x, &y).unwrap(), &z).unwrap();
        let x_yz = compose(&x, &compose(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        let e = Permutation::identity(x.len());
        prop_assert_eq!(compose(&x, &e).unwrap(), x.clone());
        prop_assert_eq!(compose(&e, &x).unwrap(), x.clone());
        prop_assert!(compose(&x, &x.inverse()).unwrap().is_identity());
        // Right factor acts first.
        let c = compose(&x, &y).unwrap();
        for i in 0..x.len() {
            prop_assert_eq!(c.images()[i], x.images()[y.images()[i]]);
        }
    }

    #[test]
    fn cyclic_subgroups_are_closed((x, _, _) in arb_perm_triple()) {
        let elems: Vec<Permutation> = (0..x.order()).map(|k| x.pow(k)).collect();
        prop_assert_eq!(verify_closure(&elems), Ok(()));
    }
}
