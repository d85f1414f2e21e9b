mod common;

use common::{naive_deficit, naive_optimal_cs_value};
use cos_core::approx::{additive_fptas, fptas, proportional_payoff, rounded_separation, FptasParams, Separation};
use cos_core::cos::{cos_cs, cos_exact, cos_exact_wvg, cos_with_cs, lp_star, optimal_cs_value};
use cos_core::format::{parse_game, serialize_game};
use cos_core::game::{
    is_anonymous, is_super_additive, Coalition, CoalitionStructure, CoalitionalGame, Game, SuperImputation,
    TabularGame, WeightedVotingGame,
};
use cos_core::generators::{gen_anonymous_majority, gen_partition_wvg, gen_projective_plane};
use cos_core::lp::simplex_min;
use cos_core::par::ExecutionMode;
use cos_core::rational::{ge_sqrt_times, int, le_sqrt_times, ratio, uint, Rational};
use cos_core::stability::{
    is_stable, least_core_value, max_deficit_brute, max_deficit_wvg_dp, simple_core_nonempty, wvg_veto_agents,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn wvg_strategy(n_max: usize, w_max: u64) -> impl Strategy<Value = WeightedVotingGame> {
    (prop::collection::vec(0..=w_max, 1..=n_max), any::<u64>()).prop_map(move |(mut weights, seed)| {
        if weights.iter().all(|&w| w == 0) {
            weights[0] = 1;
        }
        let total: u64 = weights.iter().sum();
        WeightedVotingGame::new(weights, 1 + seed % total).unwrap()
    })
}

fn payoff_strategy(n: usize) -> impl Strategy<Value = SuperImputation> {
    prop::collection::vec((0..=6i64, 1..=4i64), n)
        .prop_map(|v| SuperImputation::new(v.into_iter().map(|(a, b)| ratio(a, b)).collect()).unwrap())
}

fn game_and_payoff(n_max: usize, w_max: u64) -> impl Strategy<Value = (WeightedVotingGame, SuperImputation)> {
    wvg_strategy(n_max, w_max).prop_flat_map(|g| {
        let n = g.weights().len();
        (Just(g), payoff_strategy(n))
    })
}

fn tabular_strategy(n_max: usize) -> impl Strategy<Value = TabularGame> {
    (1..=n_max).prop_flat_map(|n| {
        prop::collection::vec((0..=4i64, 1..=3i64, 0..3u8), 1usize << n).prop_map(move |cells| {
            TabularGame::from_fn(n, |c| {
                let (a, b, keep) = cells[c.mask() as usize];
                if keep == 0 {
                    Rational::zero()
                } else {
                    ratio(a, b)
                }
            })
            .unwrap()
        })
    })
}

fn epsilon_strategy() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![ratio(1, 2), ratio(1, 3), ratio(1, 5), ratio(2, 7)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dp_and_enumeration_agree((g, p) in game_and_payoff(10, 8)) {
        let dp = max_deficit_wvg_dp(&g, &p).unwrap();
        let brute = max_deficit_brute(&g, &p).unwrap();
        prop_assert_eq!(&dp.max_deficit, &brute.max_deficit);
        prop_assert_eq!(&dp.max_deficit, &naive_deficit(&g, &p).max(Rational::zero()));
        for w in [dp.witness, brute.witness] {
            prop_assert_eq!(g.value(w) - p.sum_over(w), dp.max_deficit.clone());
        }
    }

    #[test]
    fn deficit_is_never_negative((g, p) in game_and_payoff(8, 8)) {
        prop_assert!(!max_deficit_wvg_dp(&g, &p).unwrap().max_deficit.is_negative());
    }

    #[test]
    fn stability_is_monotone((g, p) in game_and_payoff(8, 6), extra in prop::collection::vec(0..=3i64, 8)) {
        let game = Game::from(g);
        let raised = SuperImputation::new(
            p.payoffs().iter().zip(&extra).map(|(a, &b)| a + ratio(b, 2)).collect(),
        ).unwrap();
        if is_stable(&game, &p).unwrap() {
            prop_assert!(is_stable(&game, &raised).unwrap());
        }
    }

    #[test]
    fn exact_routes_agree(g in wvg_strategy(7, 6)) {
        let generated = cos_exact_wvg(&g).unwrap();
        let tab = Game::from(g.clone()).to_tabular().unwrap();
        let packed = cos_exact(&tab).unwrap();
        let literal = simplex_min(&lp_star(&g, &Rational::one()).unwrap()).objective_value;
        prop_assert_eq!(&generated.cos, &packed.cos);
        prop_assert_eq!(&generated.cos, &literal);
        for w in [&generated.witness, &packed.witness] {
            prop_assert_eq!(w.total(), &generated.cos + int(1));
            prop_assert!(naive_deficit(&g, w) <= Rational::zero());
        }
    }

    #[test]
    fn tabular_witness_is_optimal(t in tabular_strategy(5)) {
        let r = cos_exact(&t).unwrap();
        let grand = t.value(t.grand_coalition());
        let literal = simplex_min(&lp_star(&t, &grand).unwrap()).objective_value;
        prop_assert_eq!(&r.cos, &literal);
        prop_assert!(naive_deficit(&t, &r.witness) <= Rational::zero());
        prop_assert_eq!(r.witness.total(), &r.cos + grand);
    }

    #[test]
    fn fptas_sandwich(g in wvg_strategy(6, 6), eps in epsilon_strategy()) {
        let exact = cos_exact_wvg(&g).unwrap().cos;
        let a = fptas(&g, eps.clone()).unwrap();
        prop_assert!(a.value >= exact);
        prop_assert!(a.value <= &exact * (Rational::one() + &eps));
        prop_assert!(naive_deficit(&g, &a.witness) <= Rational::zero());
        prop_assert!(a.witness.total() <= &a.value + int(1));
        let additive = additive_fptas(&g, eps.clone()).unwrap();
        prop_assert!(additive.value >= exact && additive.value <= &exact + &eps);
        let step = FptasParams::new(eps).unwrap().epsilon_prime();
        prop_assert!((&additive.value / &step).is_integer());
    }

    #[test]
    fn rounding_moves_each_payoff_less_than_one_step((g, p) in game_and_payoff(6, 6), eps in epsilon_strategy()) {
        let params = FptasParams::new(eps).unwrap();
        let n = g.weights().len();
        // Payoffs are at most 6 each, so this budget covers any total.
        let k = n as u64 * params.x() * 6;
        match rounded_separation(&g, &p, &params, k).unwrap() {
            Separation::Feasible(rounded) => {
                for (a, b) in rounded.payoffs().iter().zip(p.payoffs()) {
                    prop_assert!(a >= b && a - b < params.grid_step(n));
                }
                prop_assert!(naive_deficit(&g, &rounded) <= Rational::zero());
            }
            Separation::Violated(c) => {
                prop_assert!(g.wins(c));
                prop_assert!(p.sum_over(c) < Rational::one());
            }
            Separation::OverBudget => prop_assert!(false, "budget {k} is never exceeded"),
        }
    }

    #[test]
    fn grid_parameters(a in 1..=50i64, b in 0..=50i64) {
        let eps = ratio(a, a + b);
        let params = FptasParams::new(eps.clone()).unwrap();
        let e = params.epsilon_prime();
        prop_assert!(&eps / int(4) <= e && e <= &eps / int(2));
    }

    #[test]
    fn proportional_is_stable_and_within_two(g in wvg_strategy(8, 8)) {
        let p = proportional_payoff(&g);
        prop_assert!(naive_deficit(&g, &p) <= Rational::zero());
        let optimal = cos_exact_wvg(&g).unwrap().cos + int(1);
        prop_assert!(p.total() <= int(2) * optimal);
    }

    #[test]
    fn positive_cost_is_at_least_one_over_n(g in wvg_strategy(10, 8)) {
        let c = cos_exact_wvg(&g).unwrap().cos;
        prop_assert_eq!(c.is_zero(), simple_core_nonempty(&Game::from(g.clone())).unwrap());
        if wvg_veto_agents(&g).is_empty() {
            prop_assert!(c >= ratio(1, g.weights().len() as i64));
        } else {
            prop_assert!(c.is_zero());
        }
    }

    #[test]
    fn least_core_bounds_cost(t in tabular_strategy(5)) {
        let game = Game::Tabular(t.clone());
        let eps = least_core_value(&game).unwrap().value;
        let c = cos_exact(&t).unwrap().cos;
        prop_assert_eq!(eps.is_positive(), c.is_positive());
        prop_assert!(c <= uint(t.num_players() as u64) * eps);
    }

    #[test]
    fn best_structure_matches_partition_enumeration(g in wvg_strategy(7, 6), t in tabular_strategy(6)) {
        let w = Game::from(g.clone());
        prop_assert_eq!(optimal_cs_value(&w).unwrap().0, naive_optimal_cs_value(&g));
        let tab = Game::Tabular(w.to_tabular().unwrap());
        prop_assert_eq!(optimal_cs_value(&tab).unwrap().0, naive_optimal_cs_value(&g));
        prop_assert_eq!(optimal_cs_value(&Game::Tabular(t.clone())).unwrap().0, naive_optimal_cs_value(&t));
    }

    #[test]
    fn structure_supplements_add_up(g in wvg_strategy(7, 6)) {
        let game = Game::from(g.clone());
        let (value, cs) = optimal_cs_value(&game).unwrap();
        let r = cos_cs(&game, &cs).unwrap();
        prop_assert_eq!(&r.structure_value, &value);
        prop_assert_eq!(r.deltas.iter().sum::<Rational>(), r.result.cos.clone());
        prop_assert!(r.deltas.iter().all(|d| !d.is_negative()));
        prop_assert!(naive_deficit(&g, &r.result.witness) <= Rational::zero());
        let grand = cos_cs(&game, &CoalitionStructure::grand(g.weights().len())).unwrap();
        prop_assert!(r.result.witness.total() == grand.result.witness.total());
    }

    #[test]
    fn best_structure_is_never_costlier(g in wvg_strategy(6, 5), labels in prop::collection::vec(prop::collection::vec(0..6usize, 6), 20)) {
        let game = Game::from(g.clone());
        let n = g.weights().len();
        let best = cos_with_cs(&game).unwrap().result.cos;
        for label in labels {
            let mut parts = vec![0u64; n];
            for (i, &l) in label.iter().take(n).enumerate() {
                parts[l % n] |= 1 << i;
            }
            let parts: Vec<Coalition> = parts.into_iter().filter(|&m| m != 0).map(Coalition::from_mask).collect();
            let cs = CoalitionStructure::new(n, parts).unwrap();
            prop_assert!(best <= cos_cs(&game, &cs).unwrap().result.cos);
        }
    }

    #[test]
    fn parallel_and_sequential_agree(g in wvg_strategy(11, 4), t in tabular_strategy(6)) {
        prop_assert_eq!(
            is_super_additive(&g, ExecutionMode::Sequential).unwrap(),
            is_super_additive(&g, ExecutionMode::Parallel).unwrap()
        );
        let p = SuperImputation::new(vec![ratio(1, 3); g.weights().len()]).unwrap();
        prop_assert_eq!(
            cos_core::stability::max_deficit_brute_with(&g, &p, ExecutionMode::Sequential).unwrap(),
            cos_core::stability::max_deficit_brute_with(&g, &p, ExecutionMode::Parallel).unwrap()
        );
        prop_assert_eq!(
            is_super_additive(&t, ExecutionMode::Sequential).unwrap(),
            is_super_additive(&t, ExecutionMode::Parallel).unwrap()
        );
    }

    #[test]
    fn files_round_trip(g in wvg_strategy(12, 1000), t in tabular_strategy(5)) {
        for game in [Game::from(g), Game::Tabular(t)] {
            prop_assert_eq!(parse_game(&serialize_game(&game)).unwrap(), game);
        }
    }

    #[test]
    fn coalition_algebra(mask in 0u64..1 << 12, other in 0u64..1 << 12) {
        let n = 12;
        let c = Coalition::from_mask(mask);
        let d = Coalition::from_mask(other);
        prop_assert_eq!(c.complement(n).complement(n), c);
        prop_assert!(c.is_disjoint(c.complement(n)));
        prop_assert_eq!(c.union(d).len() + c.intersection(d).len(), c.len() + d.len());
        prop_assert_eq!(c.subsets().count(), 1usize << c.len());
        prop_assert!(c.subsets().all(|s| s.is_subset_of(c)));
        prop_assert_eq!(Coalition::parse_one_based(&c.to_one_based(), n).unwrap(), c);
    }

    #[test]
    fn majority_is_anonymous(k in 1usize..=4, seed in any::<u64>(), mask in any::<u64>()) {
        let g = gen_anonymous_majority(k).unwrap();
        let n = 2 * k + 1;
        let c = Coalition::from_mask(mask & ((1 << n) - 1));
        // A seeded rotation and reflection of the players.
        let shift = (seed % n as u64) as usize;
        let image = Coalition::from_members(c.members().map(|i| (n - 1 - i + shift) % n));
        prop_assert_eq!(g.value(c), g.value(image));
    }
}

#[test]
fn generated_games_are_super_additive() {
    for k in 1..=4 {
        let g = gen_anonymous_majority(k).unwrap();
        assert!(is_super_additive(&g, ExecutionMode::Sequential).unwrap());
        assert!(is_anonymous(&g).unwrap());
        let c = cos_exact_wvg(&g).unwrap().cos;
        assert!(le_sqrt_times(&c, g.weights().len() as u64, &int(1)));
    }
    for order in [2, 3] {
        let plane = gen_projective_plane(order).unwrap();
        assert!(is_super_additive(&plane, ExecutionMode::Sequential).unwrap());
        let n = plane.num_players() as u64;
        let c = cos_exact(&plane).unwrap().cos;
        assert!(le_sqrt_times(&c, n, &int(1)));
        // Within two of the square-root bound.
        assert!(ge_sqrt_times(&(c + int(2)), n, &int(1)));
    }
}

#[test]
fn partition_payment_is_exact() {
    for a in [vec![1, 1, 2], vec![3, 5, 2, 2], vec![8, 8], vec![0, 2]] {
        let k = a.iter().sum::<u64>() / 2;
        let (g, delta) = gen_partition_wvg(&a).unwrap();
        assert_eq!(g.quota(), k);
        assert_eq!(delta, Rational::new((k - 1).into(), (k + 1).into()));
    }
}
