mod common;

use common::*;
use matroid_shift::brute::{brute_shifted, brute_weighted_max, enumerate_common_members, BruteLimits};
use matroid_shift::intersection::{
    fiber_bipartite_matching, shifted_value_intersection, weighted_matroid_intersection_max, IntersectionInstance,
};
use matroid_shift::shifted::solve_shifted;
use matroid_shift::{equivalent, is_independent, Error, MatroidDesc, MatroidKind, Weights};
use rand::Rng;

#[test]
fn weighted_intersection_matches_brute_force() {
    let mut rng = rng(41);
    let lim = BruteLimits::default();
    for idx in 0..400 {
        let d = rng.gen_range(1..=8);
        let m1 = random_matroid(&mut rng, ALL_KINDS[idx % 5], d);
        let m2 = random_matroid(&mut rng, ALL_KINDS[(idx / 5) % 5], d);
        let w = Weights::new((0..d).map(|_| rng.gen_range(-9..=9)).collect()).unwrap();
        let sys = enumerate_common_members(&m1, &m2, false, &lim).unwrap();
        let (want, _) = brute_weighted_max(&sys, &w).unwrap();
        let got = weighted_matroid_intersection_max(&m1, &m2, &w).unwrap();
        assert!(is_independent(&m1, &got).unwrap() && is_independent(&m2, &got).unwrap());
        assert_eq!(w.total(&got), want, "{m1:?} {m2:?} {w:?}");
    }
}

#[test]
fn intersection_of_a_matroid_with_itself() {
    let mut rng = rng(42);
    for idx in 0..100 {
        let d = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=3);
        let kind = [MatroidKind::Uniform, MatroidKind::Partition, MatroidKind::Transversal][idx % 3];
        let m = random_matroid(&mut rng, kind, d);
        let c = random_profits(&mut rng, d, n, -5, 5);
        let want = solve_shifted(&m, n, &c, false).unwrap().value();
        let inst = IntersectionInstance::new(m.clone(), m, n, c).unwrap();
        assert_eq!(shifted_value_intersection(&inst).unwrap(), want);
    }
}

#[test]
fn intersection_value_matches_brute_force_with_uniform() {
    let mut rng = rng(43);
    let lim = BruteLimits::default();
    for _ in 0..100 {
        let d = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=3);
        let m1 = random_matroid(&mut rng, MatroidKind::Uniform, d);
        let m2 = random_matroid(&mut rng, MatroidKind::Transversal, d);
        let c = random_profits(&mut rng, d, n, -5, 5);
        let sys = enumerate_common_members(&m1, &m2, false, &lim).unwrap();
        let (want, _) = brute_shifted(&sys, n, &c, &lim).unwrap();
        let inst = IntersectionInstance::new(m1, m2, n, c).unwrap();
        assert_eq!(shifted_value_intersection(&inst).unwrap(), want);
    }
}

#[test]
fn non_sbo_kinds_are_rejected() {
    let g = MatroidDesc::graphic(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    let u = MatroidDesc::uniform(3, 2).unwrap();
    let c = random_profits(&mut rng(0), 3, 2, -1, 1);
    let err = IntersectionInstance::new(g, u, 2, c).unwrap_err();
    assert!(matches!(err, Error::DisallowedKind(_)));
    assert!(err.to_string().contains("strongly base orderable"));
}

#[test]
fn bipartite_fiber_properties() {
    let mut rng = rng(44);
    for g in bipartite_graphs(5) {
        let (m1, m2) = g.matching_matroids().unwrap();
        for n in 1..=3 {
            let mut cols = Vec::new();
            for _ in 0..n {
                let w = Weights::new((0..g.edges().len()).map(|_| rng.gen_range(-2..=5)).collect()).unwrap();
                cols.push(weighted_matroid_intersection_max(&m1, &m2, &w).unwrap());
            }
            let y = matroid_shift::Matrix01::from_columns(g.edges().len(), &cols).unwrap();
            let x = shuffle_rows(&mut rng, &y);
            let got = fiber_bipartite_matching(&g, n, &x).unwrap();
            assert!(equivalent(&got, &x).unwrap());
            assert!(got.columns().iter().all(|c| g.is_matching(c)), "{g:?} {x:?} -> {got:?}");
        }
    }
}

#[test]
fn bipartite_fiber_rejects_overloaded_vertices() {
    let g = matroid_shift::intersection::BipartiteGraph::new(1, 2, vec![(0, 0), (0, 1)]).unwrap();
    let x = matroid_shift::Matrix01::from_int_rows(&[vec![1], vec![1]]).unwrap();
    assert!(matches!(fiber_bipartite_matching(&g, 1, &x), Err(Error::NotInShuffleSet(_))));
}
