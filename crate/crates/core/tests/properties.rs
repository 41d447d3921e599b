use proptest::prelude::*;
use tufair::algorithms::{
    cover_of_orientation, forward_greedy, greedy_orientation, impact_matrix, impact_matrix_is, reverse_greedy,
    z_decomposition,
};
use tufair::exact::{
    decide_fairness, enumerate_covers, enumerate_covers_parallel, extremal_covers, is_extremal, min_entropy_among,
    min_entropy_orientation, packing_over_covers, Caps,
};
use tufair::games::{
    check_cover, check_supermodular, dual_game, shapley_general, shapley_is, Coalition, Cover, ExplicitGame, Game,
    IsGame,
};
use tufair::generate::random_convex_game;
use tufair::instance::{parse_instance, serialize_instance, AnyGame};
use tufair::measures::{renyi_divergence, renyi_entropy, Distribution, Order};
use tufair::Rational;

/// An IS game on `n` vertices with a weight (possibly zero) for each listed pair,
/// plus a unit edge for every vertex that ends up with no adjacent weight.
fn is_game(max_n: usize, max_w: i64) -> impl Strategy<Value = IsGame> {
    (2..=max_n).prop_flat_map(move |n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::option::weighted(0.6, 0..=max_w), pairs).prop_map(move |ws| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if let Some(w) = ws[k] {
                        edges.push((u, v, w));
                    }
                    k += 1;
                }
            }
            for u in 0..n {
                let adjacent: i64 = edges.iter().filter(|e| e.0 == u || e.1 == u).map(|e| e.2).sum();
                if adjacent == 0 {
                    let v = (u + 1) % n;
                    match edges.iter_mut().find(|e| (e.0, e.1) == (u.min(v), u.max(v))) {
                        Some(e) => e.2 = 1,
                        None => edges.push((u.min(v), u.max(v), 1)),
                    }
                }
            }
            IsGame::from_edges(n, &edges).expect("valid by construction")
        })
    })
}

/// An arbitrary table with `v(∅) = 0` and small nonnegative values.
fn any_table(max_n: usize) -> impl Strategy<Value = ExplicitGame> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0..=6i64, (1usize << n) - 1).prop_map(move |mut v| {
            v.insert(0, 0);
            ExplicitGame::new(n, v).unwrap()
        })
    })
}

fn convex_game(max_n: usize, max_total: i64) -> impl Strategy<Value = ExplicitGame> {
    (1..=max_n, any::<u64>()).prop_map(move |(n, seed)| random_convex_game(n, max_total, seed).unwrap())
}

fn supermodular_brute_force(g: &ExplicitGame) -> bool {
    let n = g.players();
    Coalition::all(n).all(|s| {
        Coalition::all(n).all(|t| g.value(s.union(t)) + g.value(s.intersection(t)) >= g.value(s) + g.value(t))
    })
}

/// Generate-and-filter: every nonnegative integer vector summing to `v(N)`
/// that satisfies every coalition constraint.
fn covers_brute_force(g: &ExplicitGame) -> Vec<Cover> {
    let n = g.players();
    let total = g.grand_value();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(g: &ExplicitGame, x: &mut Vec<i64>, k: usize, left: i64, out: &mut Vec<Cover>) {
        let n = x.len();
        if k + 1 == n {
            x[k] = left;
            let c = Cover::new(x.clone()).unwrap();
            if Coalition::all(n).all(|s| c.sum_over(s) >= g.value(s)) {
                out.push(c);
            }
            return;
        }
        for v in 0..=left {
            x[k] = v;
            rec(g, x, k + 1, left - v, out);
        }
    }
    rec(g, &mut x, 0, total, &mut out);
    out
}

fn order() -> impl Strategy<Value = Order> {
    prop_oneof![Just(0.5), Just(1.0), Just(2.0), Just(3.0), 0.1f64..5.0].prop_map(|l| Order::new(l).unwrap())
}

fn distribution(n: usize) -> impl Strategy<Value = Distribution> {
    proptest::collection::vec(0.0f64..1.0, n)
        .prop_filter("positive mass", |w| w.iter().sum::<f64>() > 1e-3)
        .prop_map(|w| Distribution::normalize(&w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shapley_closed_form_matches_permutation_average(g in is_game(7, 5)) {
        let table = g.to_explicit().unwrap();
        prop_assert_eq!(shapley_is(&g), shapley_general(&table).unwrap());
        let total: Rational = shapley_is(&g).into_iter().sum();
        prop_assert_eq!(total, Rational::from_integer(g.total_weight() as i128));
    }

    #[test]
    fn dual_is_an_involution(g in any_table(5)) {
        prop_assert_eq!(dual_game(&dual_game(&g)), g);
    }

    #[test]
    fn is_games_are_supermodular(g in is_game(7, 5)) {
        let table = g.to_explicit().unwrap();
        prop_assert!(check_supermodular(&table).holds);
        prop_assert!(table.monotonicity_violation().is_none());
    }

    #[test]
    fn local_supermodularity_matches_all_pairs(g in any_table(4)) {
        let check = check_supermodular(&g);
        prop_assert_eq!(check.holds, supermodular_brute_force(&g));
        if let Some((s, t)) = check.witness {
            prop_assert!(g.value(s.union(t)) + g.value(s.intersection(t)) < g.value(s) + g.value(t));
        }
    }

    #[test]
    fn local_supermodularity_matches_all_pairs_on_convex_games(g in convex_game(4, 30)) {
        prop_assert!(check_supermodular(&g).holds);
        prop_assert!(supermodular_brute_force(&g));
    }

    #[test]
    fn reverse_greedy_returns_a_cover(g in convex_game(6, 40)) {
        let (x, t) = reverse_greedy(&g);
        prop_assert!(check_cover(&g, &x).unwrap().is_cover());
        prop_assert_eq!(t.deltas.iter().sum::<i64>(), g.grand_value());
        prop_assert!(t.deltas.iter().all(|&d| d > 0));
    }

    #[test]
    fn reverse_greedy_is_forward_greedy_on_the_dual(g in convex_game(6, 40)) {
        let (x, t) = reverse_greedy(&g);
        let (y, order) = forward_greedy(&dual_game(&g));
        prop_assert_eq!(x, y);
        prop_assert_eq!(t.order, order);
    }

    #[test]
    fn greedy_orientation_matches_reverse_greedy(g in is_game(8, 5)) {
        let (x, t) = reverse_greedy(&g);
        let (o, ot) = greedy_orientation(&g);
        prop_assert_eq!(cover_of_orientation(&g, &o).unwrap(), x);
        prop_assert_eq!(ot, t);
    }

    #[test]
    fn cover_enumeration_matches_brute_force(g in convex_game(4, 12)) {
        let covers = enumerate_covers(&g, Caps::default()).unwrap();
        prop_assert_eq!(&covers, &covers_brute_force(&g));
        prop_assert_eq!(&enumerate_covers_parallel(&g, Caps::default()).unwrap(), &covers);
    }

    #[test]
    fn cover_enumeration_on_arbitrary_tables(g in any_table(3)) {
        let covers = enumerate_covers(&g, Caps::default()).unwrap();
        prop_assert_eq!(covers, covers_brute_force(&g));
    }

    #[test]
    fn extremal_covers_are_tight_vertices(g in convex_game(4, 12)) {
        let covers = enumerate_covers(&g, Caps::default()).unwrap();
        let extremal = extremal_covers(&g, &covers);
        prop_assert!(!extremal.is_empty());
        // the greedy marginal vector is a vertex of the core
        let (x, _) = reverse_greedy(&g);
        prop_assert!(is_extremal(&g, &x));
        for e in &extremal {
            prop_assert!(covers.contains(e));
        }
    }

    #[test]
    fn impact_coefficients_are_nonnegative(g in convex_game(6, 40)) {
        let (_, t) = reverse_greedy(&g);
        let a = impact_matrix(&g, &t).unwrap();
        prop_assert!(a.rows.iter().flatten().all(|&v| v >= 0));
    }

    #[test]
    fn impact_closed_form_matches_general(g in is_game(7, 5)) {
        let (_, t) = reverse_greedy(&g);
        prop_assert_eq!(impact_matrix_is(&g, &t).unwrap(), impact_matrix(&g, &t).unwrap());
    }

    #[test]
    fn z_decomposition_invariants(g in is_game(5, 3), o in order()) {
        prop_assume!(g.edges().len() <= 10);
        let (rg, t) = greedy_orientation(&g);
        let a = impact_matrix_is(&g, &t).unwrap();
        for opt in min_entropy_orientation(&g, o).unwrap().optima {
            let z = z_decomposition(&g, &opt, &rg, &t).unwrap();
            prop_assert!(z.is_consistent(&a));
            prop_assert_eq!(z.stage_sums(), t.deltas.clone());
            prop_assert_eq!(z.cover, cover_of_orientation(&g, &opt).unwrap());
        }
    }

    #[test]
    fn packing_constants_bracket_one(g in convex_game(4, 14)) {
        let (_, t) = reverse_greedy(&g);
        let covers = enumerate_covers(&g, Caps::default()).unwrap();
        let s = packing_over_covers(&g, &covers, &t).unwrap();
        let one = Rational::from_integer(1);
        for (_, p) in &s.per_cover {
            prop_assert!(p.beta <= one && one <= p.alpha);
            let within = p.alpha_witness.z.iter().zip(&t.deltas).all(|(row, &d)| {
                Rational::from_integer(row.iter().sum::<i64>() as i128) <= p.alpha * Rational::from_integer(d as i128)
            });
            prop_assert!(within);
        }
    }

    #[test]
    fn packing_constants_are_one_on_is_optima(g in is_game(5, 3), o in order()) {
        let table = g.to_explicit().unwrap();
        prop_assume!(g.total_weight() <= 20);
        let (_, t) = reverse_greedy(&g);
        let covers = enumerate_covers(&table, Caps::default()).unwrap();
        let optima = min_entropy_among(&covers, o).unwrap().optima;
        let s = packing_over_covers(&g, &optima, &t).unwrap();
        prop_assert_eq!(s.alpha, Rational::from_integer(1));
        prop_assert_eq!(s.beta, Rational::from_integer(1));
    }

    #[test]
    fn fairness_decision_is_monotone_in_eta(g in is_game(4, 3), lo in 0.0f64..2.0, step in 0.0f64..1.0) {
        let table = g.to_explicit().unwrap();
        let q = Distribution::uniform(g.players());
        let hi = lo + step;
        let caps = Caps::default();
        if decide_fairness(&table, &q, Order::SHANNON, hi, caps).unwrap() {
            prop_assert!(decide_fairness(&table, &q, Order::SHANNON, lo, caps).unwrap());
        }
    }

    #[test]
    fn instance_files_round_trip(g in is_game(6, 9), t in any_table(3)) {
        for game in [AnyGame::Is(g), AnyGame::Explicit(t)] {
            let text = serialize_instance(&game, None);
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(&back.game, &game);
            prop_assert_eq!(serialize_instance(&back.game, None), text);
        }
    }

    #[test]
    fn entropy_is_bounded_by_support_size(p in (1usize..8).prop_flat_map(distribution), o in order()) {
        let h = renyi_entropy(&p, o);
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= (p.support().len() as f64).log2() + 1e-9);
    }

    #[test]
    fn divergence_is_nonnegative_and_zero_on_itself(
        (p, q) in (1usize..8).prop_flat_map(|n| (distribution(n), distribution(n))),
        o in order(),
    ) {
        let d = renyi_divergence(&p, &q, o).unwrap();
        prop_assert!(d >= -1e-9 || d.is_infinite());
        prop_assert!(renyi_divergence(&p, &p, o).unwrap().abs() < 1e-9);
    }
}
