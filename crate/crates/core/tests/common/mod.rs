#![allow(dead_code)]

use cos_core::game::{Coalition, CoalitionalGame, SuperImputation, TabularGame, WeightedVotingGame};
use cos_core::rational::{ratio, Rational};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weights in `0..=w_max` (at least one positive), quota uniform in `1..=w(I)`.
pub fn random_wvg(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize, w_max: u64) -> WeightedVotingGame {
    let n = rng.gen_range(n_min..=n_max);
    let mut weights: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=w_max)).collect();
    if weights.iter().all(|&w| w == 0) {
        weights[0] = rng.gen_range(1..=w_max);
    }
    let total: u64 = weights.iter().sum();
    let quota = rng.gen_range(1..=total);
    WeightedVotingGame::new(weights, quota).unwrap()
}

/// Values `a/b` with `a` in `0..=4`, `b` in `1..=3`; about a third are zero.
pub fn random_tabular(rng: &mut ChaCha8Rng, n_max: usize) -> TabularGame {
    let n = rng.gen_range(1..=n_max);
    let values: Vec<Rational> = (0..1u64 << n)
        .map(|m| {
            if m == 0 || rng.gen_range(0..3) == 0 {
                Rational::zero()
            } else {
                ratio(rng.gen_range(0..=4), rng.gen_range(1..=3))
            }
        })
        .collect();
    TabularGame::from_fn(n, |c| values[c.mask() as usize].clone()).unwrap()
}

/// Payoffs `a/b` with `a` in `0..=6`, `b` in `1..=4`.
pub fn random_payoff(rng: &mut ChaCha8Rng, n: usize) -> SuperImputation {
    SuperImputation::new(
        (0..n)
            .map(|_| ratio(rng.gen_range(0..=6), rng.gen_range(1..=4)))
            .collect(),
    )
    .unwrap()
}

/// `max_C v(C) - p(C)` by plain enumeration.
pub fn naive_deficit<G: CoalitionalGame + ?Sized>(game: &G, p: &SuperImputation) -> Rational {
    (0..1u64 << game.num_players())
        .map(|m| {
            let c = Coalition::from_mask(m);
            let paid: Rational = c.members().map(|i| p.payoffs()[i].clone()).sum();
            game.value(c) - paid
        })
        .max()
        .unwrap()
}

pub fn subset_sum_exists(a: &[u64], target: u64) -> bool {
    (0..1u64 << a.len()).any(|m| (0..a.len()).filter(|i| m >> i & 1 == 1).map(|i| a[i]).sum::<u64>() == target)
}

/// Every set partition of `{0, .., n-1}`, as lists of bit masks.
pub fn set_partitions(n: usize) -> Vec<Vec<u64>> {
    fn extend(i: usize, n: usize, parts: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == n {
            out.push(parts.clone());
            return;
        }
        for j in 0..parts.len() {
            parts[j] |= 1 << i;
            extend(i + 1, n, parts, out);
            parts[j] &= !(1 << i);
        }
        parts.push(1 << i);
        extend(i + 1, n, parts, out);
        parts.pop();
    }
    let mut out = Vec::new();
    extend(0, n, &mut Vec::new(), &mut out);
    out
}

/// `max` over all partitions of the summed part values.
pub fn naive_optimal_cs_value<G: CoalitionalGame + ?Sized>(game: &G) -> Rational {
    set_partitions(game.num_players())
        .into_iter()
        .map(|parts| {
            parts
                .into_iter()
                .map(|m| game.value(Coalition::from_mask(m)))
                .sum::<Rational>()
        })
        .max()
        .unwrap()
}
