//! Stability tests: veto players, maximum deficit, CS-core membership and
//! the least core.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{
    adjust_game_cs, ensure_enumerable, is_imputation, is_simple, Coalition, CoalitionStructure, CoalitionalGame, Game,
    SuperImputation, WeightedVotingGame,
};
use crate::lp::{solve_with_separation, Constraint, LinearProgram, LpStatus, Relation};
use crate::par::{self, ExecutionMode};
use crate::rational::Rational;

/// Largest `players × (total weight + 1)` table the weight DP will allocate.
pub const DP_CELL_BUDGET: u64 = 1 << 26;

/// The largest excess `v(C) - p(C)` over all coalitions, and a coalition attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficitReport {
    pub max_deficit: Rational,
    pub witness: Coalition,
}

impl DeficitReport {
    pub fn is_stable(&self) -> bool {
        !self.max_deficit.is_positive()
    }
}

/// Players without whom no coalition wins. Requires a simple game.
pub fn veto_agents(game: &Game) -> Result<Vec<usize>> {
    match game {
        Game::Weighted(g) => Ok(wvg_veto_agents(g)),
        Game::Tabular(g) => {
            if !is_simple(g)? {
                return Err(Error::Precondition(
                    "veto players are only defined for simple games".into(),
                ));
            }
            let n = g.num_players();
            let grand = Coalition::grand(n);
            // In an increasing game every subset of I∖{i} loses iff I∖{i} loses.
            Ok((0..n).filter(|&i| g.value(grand.without(i)).is_zero()).collect())
        }
    }
}

pub fn wvg_veto_agents(game: &WeightedVotingGame) -> Vec<usize> {
    let total = game.total_weight();
    (0..game.weights().len())
        .filter(|&i| total - game.weights()[i] < game.quota())
        .collect()
}

/// Nonempty core of a simple game ⇔ it has a veto player.
pub fn simple_core_nonempty(game: &Game) -> Result<bool> {
    Ok(!veto_agents(game)?.is_empty())
}

/// Exhaustive maximum deficit; ties go to the smallest bit mask.
pub fn max_deficit_brute<G: CoalitionalGame + ?Sized>(game: &G, p: &SuperImputation) -> Result<DeficitReport> {
    max_deficit_brute_with(game, p, ExecutionMode::default())
}

pub fn max_deficit_brute_with<G: CoalitionalGame + ?Sized>(
    game: &G,
    p: &SuperImputation,
    mode: ExecutionMode,
) -> Result<DeficitReport> {
    let n = game.num_players();
    ensure_enumerable(n)?;
    p.check_len(n)?;
    let payoffs = p.payoffs();
    let pick = |a: (Rational, u64), b: (Rational, u64)| match a.0.cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    };
    let (max_deficit, mask) = par::map_reduce(
        mode,
        0..1u64 << n,
        (Rational::zero(), 0),
        |mask| {
            let c = Coalition::from_mask(mask);
            let paid: Rational = c.members().map(|i| &payoffs[i]).sum();
            (game.value(c) - paid, mask)
        },
        pick,
    );
    Ok(DeficitReport {
        max_deficit,
        witness: Coalition::from_mask(mask),
    })
}

/// Maximum deficit of a weighted voting game by the pseudo-polynomial weight DP.
///
/// `best[w]` holds the cheapest payment of a coalition of exact weight `w`
/// among the players processed so far (`None` when no such coalition exists).
/// Adding player `i` relaxes `best[w]` with `p_i + best[w - w_i]`; ties prefer
/// taking the player. The minimum over `w >= q` is the cheapest winning
/// coalition, recovered by backtracking through the per-player take bits.
pub fn max_deficit_wvg_dp(game: &WeightedVotingGame, p: &SuperImputation) -> Result<DeficitReport> {
    let n = game.weights().len();
    p.check_len(n)?;
    let total = usize::try_from(game.total_weight())
        .map_err(|_| Error::Resource("total weight exceeds addressable memory".into()))?;
    check_dp_budget(game)?;
    let width = total + 1;
    let mut best: Vec<Option<Rational>> = vec![None; width];
    best[0] = Some(Rational::zero());
    let mut take = vec![false; n * width];

    for (i, (&weight, price)) in game.weights().iter().zip(p.payoffs()).enumerate() {
        let weight = weight as usize;
        for w in (weight..width).rev() {
            let Some(candidate) = best[w - weight].as_ref().map(|b| b + price) else {
                continue;
            };
            let better = match &best[w] {
                None => true,
                Some(current) => candidate <= *current,
            };
            if better {
                best[w] = Some(candidate);
                take[i * width + w] = true;
            }
        }
    }

    let quota = game.quota() as usize;
    let mut cheapest: Option<(usize, &Rational)> = None;
    for (w, value) in best.iter().enumerate().skip(quota) {
        if let Some(value) = value {
            if cheapest.is_none_or(|(_, c)| value < c) {
                cheapest = Some((w, value));
            }
        }
    }
    let (mut w, cheapest) = cheapest.expect("the grand coalition wins");
    let deficit = Rational::one() - cheapest;
    if !deficit.is_positive() {
        return Ok(DeficitReport {
            max_deficit: Rational::zero(),
            witness: Coalition::EMPTY,
        });
    }
    let mut witness = Coalition::EMPTY;
    for i in (0..n).rev() {
        if take[i * width + w] {
            witness = witness.with(i);
            w -= game.weights()[i] as usize;
        }
    }
    debug_assert_eq!(w, 0);
    Ok(DeficitReport {
        max_deficit: deficit,
        witness,
    })
}

pub(crate) fn dp_fits_budget(game: &WeightedVotingGame) -> bool {
    let cells = (game.weights().len() as u128) * (game.total_weight() as u128 + 1);
    cells <= DP_CELL_BUDGET as u128
}

fn check_dp_budget(game: &WeightedVotingGame) -> Result<()> {
    if dp_fits_budget(game) {
        Ok(())
    } else {
        Err(Error::Resource(format!(
            "weight table of {} players × {} weights exceeds the budget of {DP_CELL_BUDGET} cells; \
             use brute-force enumeration for few players or the FPTAS for large weights",
            game.weights().len(),
            game.total_weight() as u128 + 1
        )))
    }
}

/// Maximum deficit, by the weight DP for weighted voting games within budget
/// and by enumeration otherwise.
pub fn max_deficit(game: &Game, p: &SuperImputation) -> Result<DeficitReport> {
    match game {
        Game::Weighted(g) if dp_fits_budget(g) => max_deficit_wvg_dp(g, p),
        Game::Weighted(g) if g.weights().len() <= crate::game::ENUMERATION_CAP => max_deficit_brute(g, p),
        Game::Weighted(g) => max_deficit_wvg_dp(g, p),
        Game::Tabular(g) => max_deficit_brute(g, p),
    }
}

/// `p(C) >= v(C)` for every coalition.
pub fn is_stable(game: &Game, p: &SuperImputation) -> Result<bool> {
    Ok(max_deficit(game, p)?.is_stable())
}

/// Deficit of `p` in `G(deltas)` after checking that `p` is an imputation for
/// `cs` in that adjusted game.
pub fn cs_core_check(
    game: &Game,
    cs: &CoalitionStructure,
    deltas: &[Rational],
    p: &SuperImputation,
) -> Result<DeficitReport> {
    let adjusted = adjust_game_cs(game, cs, deltas)?;
    p.check_len(game.num_players())?;
    if !is_imputation(&adjusted, cs, p) {
        return Err(Error::Precondition(
            "payoff vector is not an imputation for the structure in the adjusted game".into(),
        ));
    }
    match game {
        // Parts have deficit -delta <= 0 in the base game and exactly 0 in the
        // adjusted one, so a positive base deficit is attained off the parts
        // and the two games share the same maximum.
        Game::Weighted(_) => max_deficit(game, p),
        Game::Tabular(_) => max_deficit_brute(&adjusted, p),
    }
}

/// Whether `(cs, p)` is in the CS-core of `G(deltas)`.
pub fn cs_core_membership(
    game: &Game,
    cs: &CoalitionStructure,
    deltas: &[Rational],
    p: &SuperImputation,
) -> Result<bool> {
    Ok(cs_core_check(game, cs, deltas, p)?.is_stable())
}

/// Least-core value together with an imputation attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeastCore {
    pub value: Rational,
    pub imputation: SuperImputation,
    pub cuts_generated: usize,
}

/// `ε(G)`: the smallest achievable maximum deficit over efficient payoff vectors.
///
/// Solved over `(p, ε)` with `p(I) = v(I)`, `p >= 0`, `ε >= 0` (the empty
/// coalition) and `p(C) + ε >= v(C)` added lazily from the maximum-deficit
/// oracle. Individual rationality is not imposed separately: the singleton
/// rows already bound `v({i}) - p_i` by `ε`.
pub fn least_core_value(game: &Game) -> Result<LeastCore> {
    let n = game.num_players();
    let grand_value = game.value(game.grand_coalition());
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    let bounds = vec![Some(Rational::zero()); n].into_iter().chain([None]).collect();
    let mut lp = LinearProgram::with_bounds(objective, bounds)?;
    let mut sum_row = vec![Rational::one(); n + 1];
    sum_row[n] = Rational::zero();
    lp.add_constraint(Constraint::new(sum_row, Relation::Eq, grand_value))?;
    let mut epsilon_row = vec![Rational::zero(); n + 1];
    epsilon_row[n] = Rational::one();
    lp.add_constraint(Constraint::new(epsilon_row, Relation::Ge, Rational::zero()))?;

    let outcome = solve_with_separation(&lp, |x| {
        let p = SuperImputation::new(x[..n].to_vec())?;
        let report = max_deficit(game, &p)?;
        if report.max_deficit <= x[n] {
            return Ok(None);
        }
        let mut coefficients: Vec<Rational> = (0..n)
            .map(|i| {
                if report.witness.contains(i) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        coefficients.push(Rational::one());
        Ok(Some(Constraint::new(
            coefficients,
            Relation::Ge,
            game.value(report.witness),
        )))
    })?;
    if outcome.solution.status != LpStatus::Optimal {
        return Err(Error::Oracle(format!(
            "least-core program ended with status {:?}",
            outcome.solution.status
        )));
    }
    let values = outcome.solution.values;
    Ok(LeastCore {
        value: values[n].clone(),
        imputation: SuperImputation::new(values[..n].to_vec())?,
        cuts_generated: outcome.cuts.len(),
    })
}
