mod common;

use common::*;
use plbea::engines::{dominates, Dominance, OnePlusOneEa};
use plbea::fitness::{self, Problem, Sense};
use plbea::generators::{generate, GenSpec};
use plbea::graph::{DominationState, Graph, Solution};
use plbea::plb::{self, check_plb, fit_c1, ratio_bounds, PlbParams};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..0.6f64, any::<u64>()).prop_map(|(n, p, seed)| random_graph(n, p, seed))
}

fn graph_and_solution(max_n: usize) -> impl Strategy<Value = (Graph, Solution)> {
    graph_strategy(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(any::<bool>(), n).prop_map(Solution::from_bits))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn incremental_domination_matches_recompute(
        (g, x) in graph_and_solution(64),
        flips in proptest::collection::vec(any::<prop::sample::Index>(), 0..40),
    ) {
        let mut state = DominationState::new(&g, x.clone()).unwrap();
        let mut y = x;
        for f in flips {
            let v = f.index(g.n());
            state.apply_flip(&g, v).unwrap();
            y.flip(v);
            prop_assert_eq!(state.undominated(), g.undominated_count(&y).unwrap());
        }
        for v in 0..g.n() {
            let covering = std::iter::once(v).chain(g.neighbors(v).iter().copied()).filter(|&u| y.get(u)).count();
            prop_assert_eq!(state.cover_count(v) as usize, covering);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn graph_counters((g, x) in graph_and_solution(40)) {
        let conflicts = g.conflict_count(&x).unwrap();
        let internal = g.edges().iter().filter(|&&(u, v)| x.get(u) && x.get(v)).count();
        prop_assert_eq!(conflicts, 2 * internal);
        let comps = g.selected_component_count(&x).unwrap();
        prop_assert!(comps <= x.count_ones());
        prop_assert_eq!(comps == x.count_ones(), internal == 0);
        prop_assert_eq!(g.undominated_count(&Solution::ones(g.n())).unwrap(), 0);
    }

    #[test]
    fn scalar_and_bi_objective_agree((g, x) in graph_and_solution(30)) {
        let n = g.n() as i64;
        let mds = fitness::mds_bi(&g, &x).unwrap();
        prop_assert_eq!(fitness::mds_scalar(&g, &x).unwrap(), n * mds.0 + mds.1);
        let mvc = fitness::mvc_bi(&g, &x).unwrap();
        prop_assert_eq!(fitness::mvc_scalar(&g, &x).unwrap(), (n + 1) * mvc.0 + mvc.1);
        let mis = fitness::mis_bi(&g, &x).unwrap();
        prop_assert_eq!(fitness::mis_scalar(&g, &x).unwrap(), mis.0 + n * mis.1);
        if g.is_connected() {
            let cds = fitness::cds_bi(&g, &x).unwrap();
            prop_assert_eq!(fitness::cds_scalar(&g, &x).unwrap(), n * n * (cds.0 - 1) + cds.1);
        }
    }

    #[test]
    fn mds_feasibility_is_monotone((g, x) in graph_and_solution(30), v in any::<prop::sample::Index>()) {
        let mut y = x.clone();
        y.set(v.index(g.n()), true);
        if fitness::is_feasible(&g, &x, Problem::Mds).unwrap() {
            prop_assert!(fitness::is_feasible(&g, &y, Problem::Mds).unwrap());
        }
    }

    #[test]
    fn dominance_is_consistent(a in (-5i64..5, -5i64..5), b in (-5i64..5, -5i64..5)) {
        use plbea::fitness::ObjectiveVector as V;
        let (p, q) = (V(a.0, a.1), V(b.0, b.1));
        for sense in [Sense::Minimize, Sense::Maximize] {
            let pq = dominates(p, q, sense);
            let qp = dominates(q, p, sense);
            if p == q {
                prop_assert_eq!(pq, Dominance::Weak);
            } else {
                prop_assert!(!(pq.at_least_weak() && qp.at_least_weak()));
            }
        }
    }

    #[test]
    fn fitted_c1_is_tight(n in 5usize..60, m in 1usize..4, seed in any::<u64>(), beta in 1.5..3.5f64, t in 0.0..3.0f64) {
        let g = generate(&GenSpec::pa(n.max(m + 2), m, seed)).unwrap();
        let c1 = fit_c1(&g, beta, t).unwrap();
        prop_assert!(check_plb(&g, &PlbParams::new(beta, t, c1).unwrap()).unwrap().holds);
        prop_assert!(!check_plb(&g, &PlbParams::new(beta, t, c1 * (1.0 - 1e-6)).unwrap()).unwrap().holds);
        let sum = plb::degree_sum_bound(&PlbParams::new(beta, t, c1).unwrap(), g.n(), g.max_degree()).unwrap();
        prop_assert!(g.degree_sum() as f64 <= sum.finite_sum * (1.0 + 1e-12));
    }

    #[test]
    fn ratio_bounds_grow_with_c1(beta in 2.05..4.0f64, t in 0.0..3.0f64, c1 in 0.1..50.0f64, k in 1.0..3.0f64) {
        let lo = ratio_bounds(&PlbParams::new(beta, t, c1).unwrap()).unwrap();
        let hi = ratio_bounds(&PlbParams::new(beta, t, c1 * k).unwrap()).unwrap();
        let lo_ab = plb::constants_ab(&PlbParams::new(beta, t, c1).unwrap()).unwrap();
        let hi_ab = plb::constants_ab(&PlbParams::new(beta, t, c1 * k).unwrap()).unwrap();
        prop_assert_eq!(lo_ab.a, hi_ab.a);
        prop_assert!(hi_ab.b >= lo_ab.b);
        for (l, h) in [
            (lo.mds_ea, hi.mds_ea), (lo.mds_gsemo, hi.mds_gsemo), (lo.mvc_ea, hi.mvc_ea),
            (lo.mvc_gsemo, hi.mvc_gsemo), (lo.cds_ea, hi.cds_ea), (lo.cds_gsemo, hi.cds_gsemo),
            (lo.mis_ea, hi.mis_ea), (lo.mis_gsemo, hi.mis_gsemo),
        ] {
            prop_assert!(h >= l);
        }
    }

    #[test]
    fn ea_fitness_is_monotone(g in graph_strategy(24), seed in any::<u64>(), pi in 0usize..4) {
        let p = [Problem::Mds, Problem::Mvc, Problem::Mis, Problem::MvcDom][pi];
        let mut ea = OnePlusOneEa::new(&g, p, seed).unwrap();
        let mut last = ea.fitness();
        for _ in 0..300 {
            ea.step();
            let f = ea.fitness();
            match p.sense() {
                Sense::Minimize => prop_assert!(f <= last),
                Sense::Maximize => prop_assert!(f >= last),
            }
            prop_assert_eq!(f, fitness::scalar(&g, ea.incumbent(), p).unwrap());
            last = f;
        }
        prop_assert_eq!(ea.evaluations(), 301);
    }
}

#[test]
fn penalty_layers_are_separated() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            let all: Vec<Solution> = (0u64..1 << n).map(|m| Solution::from_mask(n, m)).collect();
            for p in [Problem::Mds, Problem::Mvc] {
                let (feasible, infeasible): (Vec<&Solution>, Vec<&Solution>) =
                    all.iter().partition(|x| fitness::is_feasible(&g, x, p).unwrap());
                let worst_feasible = feasible.iter().map(|x| fitness::scalar(&g, x, p).unwrap()).max();
                let best_infeasible = infeasible.iter().map(|x| fitness::scalar(&g, x, p).unwrap()).min();
                if let (Some(f), Some(i)) = (worst_feasible, best_infeasible) {
                    // MDS: only the full set can tie an infeasible solution's score.
                    let f_minus_full = feasible
                        .iter()
                        .filter(|x| x.count_ones() < n)
                        .map(|x| fitness::scalar(&g, x, p).unwrap())
                        .max();
                    match p {
                        Problem::Mvc => assert!(f < i, "n={n} {g:?}"),
                        _ => assert!(f_minus_full.is_none_or(|f| f < i) && f <= i, "n={n}"),
                    }
                }
            }
        }
    }
}

#[test]
fn lemma_ratio_holds_for_all_dominating_sets() {
    for seed in 0..25 {
        let g = pa(6 + seed as usize % 7, 1 + seed as usize % 2, 40 + seed);
        for (beta, t) in [(2.5, 0.0), (3.0, 0.0)] {
            let params = PlbParams::new(beta, t, fit_c1(&g, beta, t).unwrap()).unwrap();
            for d in all_dominating_sets(&g) {
                assert!(plb::verify_domset_ratio(&g, &params, &d).unwrap().within_bound);
            }
        }
    }
}
