//! Every solver against the exhaustive oracle on random instances of every
//! family, plus pairwise agreement between solvers on shared instances.

mod common;

use bcs_core::interval::solve_interval_bcs;
use bcs_core::io::{gen_random, Family, GenConfig};
use bcs_core::oracle::{brute_force_bcs, brute_force_wbcs};
use bcs_core::steiner::solve_exact_bcs;
use bcs_core::tree::{solve_path_bcs, solve_tree_bcs, solve_tree_wbcs};
use bcs_core::treewidth::{build_heuristic_decomposition, solve_tw_bcs};
use common::{check_witness, rng, sweep};
use rand::Rng;

#[test]
fn trees_match_oracle() {
    for inst in sweep(Family::Tree, 200, 14, 1) {
        let g = &inst.graph;
        let want = brute_force_bcs(g).unwrap().objective;
        let r = solve_tree_bcs(g).unwrap();
        check_witness(g, &r);
        assert_eq!(r.objective, want);
        let td = build_heuristic_decomposition(g);
        assert!(g.len() == 1 || td.width() == 1);
        let t = solve_tw_bcs(g, &td).unwrap();
        check_witness(g, &t);
        let e = solve_exact_bcs(g).unwrap();
        check_witness(g, &e);
        assert_eq!((t.objective, e.objective), (want, want));
    }
}

#[test]
fn weighted_trees_match_oracle() {
    let mut r = rng(2);
    for _ in 0..100 {
        let cfg = GenConfig::new(Family::Tree, r.gen_range(1..=10), r.gen()).with_max_weight(5);
        let g = gen_random(&cfg).unwrap().graph;
        let got = solve_tree_wbcs(&g).unwrap();
        check_witness(&g, &got);
        assert_eq!(got.objective, brute_force_wbcs(&g).unwrap().objective);
    }
}

#[test]
fn paths_match_oracle_and_tree_solver() {
    for inst in sweep(Family::Path, 200, 14, 3) {
        let g = &inst.graph;
        let p = solve_path_bcs(g).unwrap();
        check_witness(g, &p);
        assert_eq!(p.objective, brute_force_bcs(g).unwrap().objective);
        assert_eq!(p.objective, solve_tree_bcs(g).unwrap().objective);
    }
}

#[test]
fn interval_graphs_match_oracle_and_exact() {
    for inst in sweep(Family::Interval, 200, 12, 4) {
        let g = &inst.graph;
        let want = brute_force_bcs(g).unwrap().objective;
        let r = solve_interval_bcs(g, inst.intervals.as_ref().unwrap()).unwrap();
        check_witness(g, &r);
        let e = solve_exact_bcs(g).unwrap();
        check_witness(g, &e);
        assert_eq!((r.objective, e.objective), (want, want));
    }
}

#[test]
fn treewidth_matches_oracle_on_all_families() {
    for (k, family) in [Family::General, Family::Split, Family::Bipartite, Family::Interval]
        .into_iter()
        .enumerate()
    {
        for inst in sweep(family, 200, 12, 10 + k as u64) {
            let g = &inst.graph;
            let r = solve_tw_bcs(g, &build_heuristic_decomposition(g)).unwrap();
            check_witness(g, &r);
            assert_eq!(r.objective, brute_force_bcs(g).unwrap().objective, "{family}");
        }
    }
}

#[test]
fn exact_matches_oracle_up_to_fourteen_vertices() {
    for (k, family) in [Family::General, Family::Split, Family::Bipartite].into_iter().enumerate() {
        for inst in sweep(family, 300, 14, 20 + k as u64) {
            let g = &inst.graph;
            let r = solve_exact_bcs(g).unwrap();
            check_witness(g, &r);
            assert_eq!(r.objective, brute_force_bcs(g).unwrap().objective, "{family}");
        }
    }
}

#[test]
fn oracle_optimum_is_even_and_witnessed() {
    for family in Family::ALL {
        for inst in sweep(family, 50, 12, 30) {
            let r = brute_force_bcs(&inst.graph).unwrap();
            assert_eq!(r.objective % 2, 0);
            check_witness(&inst.graph, &r);
        }
    }
}
