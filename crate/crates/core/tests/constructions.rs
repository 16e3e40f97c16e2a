mod common;

use cone_spanner::constructions::{
    check_nonconvex_properties, gen_convex_lb, gen_molla, gen_nonconvex, gen_random_convex,
    gen_random_general, layout_nonconvex, nonconvex_delta_bound, validate_convex_lb,
    validate_molla, ConstructionFamily, ConstructionSpec,
};
use cone_spanner::geometry::{is_convex_position, is_general_position};
use cone_spanner::graph::{build_theta, build_yao, filter_incoming};
use cone_spanner::io::{parse_points, render_points};
use cone_spanner::ConeSystem;

#[test]
fn strip_zigzag_survives_theta_theta() {
    let set = gen_molla(4, 0.02, 1e-4).unwrap();
    let tt = filter_incoming(&build_theta(&set.points, &ConeSystem::six())).unwrap();
    for i in 2..=4 {
        assert!(
            tt.contains(set.role('b', i - 1), set.role('a', i)),
            "b_{} -> a_{i}",
            i - 1
        );
        assert!(
            tt.contains(set.role('a', i), set.role('b', i)),
            "a_{i} -> b_{i}"
        );
    }
}

#[test]
fn strip_yao_yao_path_is_hamiltonian() {
    for n in [4, 6] {
        let set = gen_molla(n, 0.02, 1e-4).unwrap();
        let yy = filter_incoming(&build_yao(&set.points, &ConeSystem::six())).unwrap();
        let r = cone_spanner::analysis::shortest_path(
            &yy,
            set.role('a', n),
            set.role('b', n),
            cone_spanner::analysis::Directedness::Undirected,
        )
        .unwrap()
        .unwrap();
        assert_eq!(r.vertices.len(), 2 * n);
        assert!(r.length >= (2 * n - 1) as f64);
        let a_side = |v: usize| v < n;
        let ab: Vec<_> = yy
            .undirected_edge_set()
            .into_iter()
            .filter(|&(u, v)| a_side(u) != a_side(v))
            .collect();
        assert_eq!(ab, vec![(set.role('a', 1), set.role('b', 1))]);
    }
}

#[test]
fn strip_is_convex_and_general() {
    for (alpha, eps) in [(0.02, 1e-4), (0.05, 1e-3), (0.01, 1e-5)] {
        for n in [2, 5, 16] {
            let set = gen_molla(n, alpha, eps).unwrap();
            assert!(is_convex_position(&set.points));
            assert!(is_general_position(&set.points, &ConeSystem::six()));
        }
    }
}

#[test]
fn convex_lb_theta_structure() {
    let set = gen_convex_lb(1e-6).unwrap();
    let a = set.id("a").unwrap();
    let theta = build_theta(&set.points, &ConeSystem::six());
    for i in 1..=4 {
        assert!(theta.contains(a, set.role('b', i)), "a -> b_{i}");
    }
    let tt = filter_incoming(&theta).unwrap();
    assert!(!tt.contains(a, set.role('b', 1)));
    for i in 2..=4 {
        assert!(
            tt.contains(set.role('b', i), set.role('b', i - 1)),
            "b_{i} -> b_{}",
            i - 1
        );
    }
}

#[test]
fn nonconvex_layout_is_not_convex() {
    for n in [2, 3, 7] {
        let set = gen_nonconvex(n, 0.01, 0.5).unwrap();
        assert!(!is_convex_position(&set.points));
        assert_eq!(set.points.len(), 4 * n);
        let tt = filter_incoming(&build_theta(&set.points, &ConeSystem::six())).unwrap();
        // every path edge is kept in both directions
        assert_eq!(tt.edges().len(), 2 * (4 * n - 1));
    }
}

#[test]
fn nonconvex_properties_break_for_large_delta() {
    let bound = nonconvex_delta_bound(6, 0.01).unwrap();
    let set = layout_nonconvex(6, 0.01, 20.0 * bound).unwrap();
    assert!(check_nonconvex_properties(&set, 6, 20.0 * bound).is_err());
}

#[test]
fn validation_survives_text_round_trip() {
    let strip = gen_molla(6, 0.02, 1e-4).unwrap();
    let back = parse_points(&render_points(&strip)).unwrap();
    validate_molla(&back, 6).unwrap();

    let lb = gen_convex_lb(1e-5).unwrap();
    validate_convex_lb(&parse_points(&render_points(&lb)).unwrap(), 1e-5).unwrap();

    let n = 5;
    let delta = 0.5 * nonconvex_delta_bound(n, 0.01).unwrap();
    let nc = gen_nonconvex(n, 0.01, 0.5).unwrap();
    check_nonconvex_properties(&parse_points(&render_points(&nc)).unwrap(), n, delta).unwrap();
}

#[test]
fn random_convex_fixtures_pass_predicates() {
    let sys = ConeSystem::six();
    for seed in 0..50 {
        let s = gen_random_convex(100, seed).unwrap();
        assert!(is_convex_position(&s), "seed {seed}");
        assert!(is_general_position(&s, &sys), "seed {seed}");
    }
}

#[test]
fn random_general_fixture_passes_predicate() {
    let s = gen_random_general(200, 3).unwrap();
    assert!(is_general_position(&s, &ConeSystem::six()));
    assert!(s
        .iter()
        .all(|p| (0.0..1.0).contains(&p.x) && (0.0..1.0).contains(&p.y)));
}

#[test]
fn spec_defaults_generate() {
    for family in ConstructionFamily::ALL {
        let set = ConstructionSpec::new(family).generate().unwrap();
        assert_eq!(set.labels.len(), set.points.len());
        let labeled = set.labels.iter().flatten().count();
        assert!(labeled == 0 || labeled == set.points.len(), "{family}");
    }
}
