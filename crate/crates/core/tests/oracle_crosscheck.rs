use num_bigint::BigUint;
use pairstab::harness::enumerate::{graphs_of_order, graphs_up_to};
use pairstab::io::{emit_graph6, parse_graph6};
use pairstab::search::{are_isomorphic, canonical_form, full_automorphism_group};
use pairstab::stability::{coprimality, coprime::factorizations, find_sigma_automorphism, find_two_fold, CoprimalityAnswer};
use pairstab::{direct_product, Graph, Limits};
use pairstab_oracle as oracle;

const B: u64 = pairstab::config::DEFAULT_NODE_BUDGET;

fn looped_matrix(g: &Graph, loops: &[bool]) -> Vec<Vec<bool>> {
    let mut m = g.adjacency_matrix();
    for (i, &l) in loops.iter().enumerate() {
        m[i][i] = l;
    }
    m
}

#[test]
fn class_counts_match_brute_force() {
    for n in 1..=5 {
        assert_eq!(graphs_of_order(n, B).unwrap().len(), oracle::isomorphism_class_count(n), "n = {n}");
    }
}

#[test]
fn group_orders_up_to_seven() {
    let graphs = graphs_up_to(7, B).unwrap();
    assert_eq!(graphs.len(), 1 + 2 + 4 + 11 + 34 + 156 + 1044);
    for g in &graphs {
        let got = full_automorphism_group(g, B).unwrap();
        let want = oracle::automorphism_count(&g.adjacency_matrix());
        assert_eq!(*got.order(), BigUint::from(want), "{}", emit_graph6(g));
        assert!(got.verify_chain());
    }
}

#[test]
fn canonical_forms_separate_classes() {
    for n in 1..=6 {
        let graphs = graphs_of_order(n, B).unwrap();
        for (i, g) in graphs.iter().enumerate() {
            for h in &graphs[i + 1..] {
                assert!(!oracle::isomorphic(&g.adjacency_matrix(), &h.adjacency_matrix()));
                assert!(!are_isomorphic(g, h, B).unwrap());
            }
            let mut image: Vec<usize> = (0..n).collect();
            image.rotate_left(1);
            image.swap(0, n - 1);
            let r = g.relabel(&image);
            assert_eq!(canonical_form(&r, B).unwrap(), *g);
        }
    }
}

#[test]
fn bipartite_iff_no_odd_cycle() {
    for g in graphs_up_to(6, B).unwrap() {
        let m = g.adjacency_matrix();
        assert_eq!(g.is_bipartite(), !oracle::has_odd_cycle(&m));
        assert_eq!(g.is_r_thin(), !oracle::has_twins(&m));
        assert_eq!(g.components().len(), oracle::component_count(&m));
    }
}

#[test]
fn graph6_round_trip() {
    for g in graphs_up_to(6, B).unwrap() {
        assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
    }
}

#[test]
fn products_match_definition() {
    let graphs = graphs_up_to(4, B).unwrap();
    for g in &graphs {
        for s in &graphs {
            let p = direct_product(g, s, 4096).unwrap();
            assert_eq!(
                p.graph().adjacency_matrix(),
                oracle::direct_product(&g.adjacency_matrix(), &s.adjacency_matrix())
            );
        }
    }
}

#[test]
fn two_fold_search_matches_pair_enumeration() {
    let l = Limits::default();
    for g in graphs_up_to(6, B).unwrap() {
        let m = g.adjacency_matrix();
        let w = find_two_fold(&g, &l).unwrap();
        assert_eq!(w.is_some(), oracle::has_nontrivial_two_fold(&m), "{}", emit_graph6(&g));
        if let Some(w) = w {
            assert!(oracle::is_two_fold(&m, w.alpha().images(), w.beta().images()));
        }
    }
}

#[test]
fn sigma_search_matches_tuple_enumeration() {
    let l = Limits::default();
    let gammas = graphs_up_to(4, B).unwrap();
    let sigmas = graphs_up_to(3, B).unwrap();
    for g in &gammas {
        for s in &sigmas {
            let got = find_sigma_automorphism(g, s, &l).unwrap();
            let want = oracle::has_nondiagonal_sigma_automorphism(&g.adjacency_matrix(), &s.adjacency_matrix());
            assert_eq!(got.is_some(), want, "({}, {})", emit_graph6(g), emit_graph6(s));
        }
    }
}

#[test]
fn factorizations_match_brute_force() {
    for n in [4, 6] {
        for g in graphs_of_order(n, B).unwrap().into_iter().filter(|g| g.edge_count() > 0) {
            for d in (2..n).filter(|d| n % d == 0) {
                let got = factorizations(&g, d, B).unwrap();
                let want = oracle::looped_divisors(&g.adjacency_matrix(), d);
                let mut deltas: Vec<Vec<Vec<bool>>> = Vec::new();
                for (a, delta) in &got {
                    let dm = looped_matrix(delta.graph(), delta.loops());
                    let am = looped_matrix(a.graph(), a.loops());
                    assert!(oracle::isomorphic(&oracle::direct_product(&am, &dm), &g.adjacency_matrix()));
                    if !deltas.iter().any(|x| oracle::isomorphic(x, &dm)) {
                        deltas.push(dm);
                    }
                }
                assert_eq!(deltas.len(), want.len(), "{} with d = {d}", emit_graph6(&g));
                for w in &want {
                    assert!(deltas.iter().any(|x| oracle::isomorphic(x, w)));
                }
            }
        }
    }
}

#[test]
fn coprimality_matches_brute_force() {
    let small: Vec<Graph> = [2, 4]
        .into_iter()
        .flat_map(|n| graphs_of_order(n, B).unwrap())
        .filter(|g| g.edge_count() > 0)
        .collect();
    for g in &small {
        for s in &small {
            let got = coprimality(g, s, 4, B).unwrap();
            let shared = oracle::share_factor(&g.adjacency_matrix(), &s.adjacency_matrix(), 4);
            match got {
                CoprimalityAnswer::Coprime { .. } => assert!(!shared, "({}, {})", emit_graph6(g), emit_graph6(s)),
                CoprimalityAnswer::NotCoprime { .. } => assert!(shared, "({}, {})", emit_graph6(g), emit_graph6(s)),
                CoprimalityAnswer::Unknown { .. } => panic!("undecided at tiny orders"),
            }
        }
    }
}
