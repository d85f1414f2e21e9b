//! Approximate cost of stability for weighted voting games, and a report of
//! the general bounds relating the cost of stability to other quantities.
//!
//! The additive scheme searches for the first feasible level of the programs
//! `L_k`: `p >= 0`, `p(I) <= b + ε'k`, `p(C) >= 1` for winning `C`, where `b`
//! is `1` for the grand coalition and `v(CS)` for a fixed structure. Each
//! level is solved by exact simplex over the winning-coalition rows found so
//! far; a candidate is passed to a rounding oracle that either returns a
//! violated row or proves the next level feasible.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cos::{cos, optimal_cs_value, CosResult};
use crate::error::{Error, Result};
use crate::game::{
    check_structure, cs_value, is_anonymous, is_simple, is_super_additive, max_value, Coalition, CoalitionStructure,
    CoalitionalGame, Game, SuperImputation, WeightedVotingGame,
};
use crate::lp::{simplex_min, Constraint, LinearProgram, LpStatus, Relation};
use crate::par::ExecutionMode;
use crate::rational::{self, le_sqrt_times, uint, Rational};
use crate::stability::{least_core_value, max_deficit_brute, wvg_veto_agents, DP_CELL_BUDGET};

/// Derived grid parameters for a target accuracy `ε`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FptasParams {
    epsilon: Rational,
    x: u64,
}

impl FptasParams {
    pub fn new(epsilon: Rational) -> Result<Self> {
        if !epsilon.is_positive() {
            return Err(Error::Domain(format!("ε must be positive, got {epsilon}")));
        }
        let x = (rational::ceil(&epsilon.recip()) * 2u32)
            .to_u64()
            .ok_or_else(|| Error::Resource(format!("ε = {epsilon} is too small")))?;
        Ok(FptasParams { epsilon, x })
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    /// `X = 2⌈1/ε⌉`.
    pub fn x(&self) -> u64 {
        self.x
    }

    /// `ε' = 1/X`.
    pub fn epsilon_prime(&self) -> Rational {
        Rational::new(BigInt::one(), self.x.into())
    }

    /// Rounding grid step `ε'/n`.
    pub fn grid_step(&self, n: usize) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.x) * BigInt::from(n))
    }

    fn budget(&self, baseline: &Rational, k: u64) -> Rational {
        baseline + self.epsilon_prime() * uint(k)
    }
}

/// Outcome of the rounding oracle for a candidate of `L_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    /// `p(I) > b + ε'k`.
    OverBudget,
    /// A winning coalition paid less than 1 even after rounding up.
    Violated(Coalition),
    /// The rounded vector, stable and within `b + ε'(k+1)`.
    Feasible(SuperImputation),
}

/// Rounding separation oracle for `L_k` with baseline `1`.
pub fn rounded_separation(
    game: &WeightedVotingGame,
    p: &SuperImputation,
    params: &FptasParams,
    k: u64,
) -> Result<Separation> {
    rounded_separation_from(game, p, params, k, &Rational::one())
}

fn rounded_separation_from(
    game: &WeightedVotingGame,
    p: &SuperImputation,
    params: &FptasParams,
    k: u64,
    baseline: &Rational,
) -> Result<Separation> {
    let n = game.weights().len();
    p.check_len(n)?;
    if p.total() > params.budget(baseline, k) {
        return Ok(Separation::OverBudget);
    }
    // p'_i = t_i·ε'/n with t_i = ⌈p_i·nX⌉; p'(C) < 1 ⇔ t(C) < nX.
    let scale = uint(n as u64 * params.x());
    let ticks: Vec<BigInt> = p.payoffs().iter().map(|v| rational::ceil(&(v * &scale))).collect();
    match cheapest_winning_below(game, &ticks, n as u64 * params.x())? {
        Some(c) => Ok(Separation::Violated(c)),
        None => {
            let step = params.grid_step(n);
            let rounded = ticks
                .iter()
                .map(|t| Rational::from_integer(t.clone()) * &step)
                .collect();
            Ok(Separation::Feasible(SuperImputation::new(rounded)?))
        }
    }
}

/// Payment-indexed knapsack: `heaviest[t]` is the largest weight of a
/// coalition whose rounded payments sum to exactly `t`, for `t < limit`.
/// Returns a winning coalition of smallest payment below `limit`, if any.
fn cheapest_winning_below(game: &WeightedVotingGame, ticks: &[BigInt], limit: u64) -> Result<Option<Coalition>> {
    let n = ticks.len();
    let width = limit as usize;
    if (n as u128) * (width as u128) > DP_CELL_BUDGET as u128 {
        return Err(Error::Resource(format!(
            "payment table of {n} players × {width} grid points exceeds the budget of {DP_CELL_BUDGET} cells"
        )));
    }
    let mut heaviest: Vec<Option<u64>> = vec![None; width];
    heaviest[0] = Some(0);
    let mut take = vec![false; n * width];
    for (i, tick) in ticks.iter().enumerate() {
        let Some(cost) = tick.to_usize().filter(|&c| c < width) else {
            continue;
        };
        let weight = game.weights()[i];
        for t in (cost..width).rev() {
            let Some(candidate) = heaviest[t - cost].map(|h| h + weight) else {
                continue;
            };
            if heaviest[t].is_none_or(|h| candidate > h) {
                heaviest[t] = Some(candidate);
                take[i * width + t] = true;
            }
        }
    }
    let Some(mut t) = (0..width).find(|&t| heaviest[t].is_some_and(|h| h >= game.quota())) else {
        return Ok(None);
    };
    let mut coalition = Coalition::EMPTY;
    for i in (0..n).rev() {
        if take[i * width + t] {
            coalition = coalition.with(i);
            t -= ticks[i].to_usize().expect("taken players have small ticks");
        }
    }
    Ok(Some(coalition))
}

/// An approximate cost of stability with the stable vector that certifies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub value: Rational,
    pub level: u64,
    /// Stable, with total at most `baseline + value`.
    pub witness: SuperImputation,
    pub cuts_generated: usize,
}

/// Additive scheme: `CoS(G) <= value <= CoS(G) + ε`.
pub fn additive_fptas(game: &WeightedVotingGame, epsilon: Rational) -> Result<Approximation> {
    additive_from(game, &FptasParams::new(epsilon)?, &Rational::one())
}

/// Additive scheme for a fixed structure: `CoS(CS, G) <= value <= CoS(CS, G) + ε`.
pub fn additive_fptas_cs(
    game: &WeightedVotingGame,
    cs: &CoalitionStructure,
    epsilon: Rational,
) -> Result<Approximation> {
    check_structure(game, cs)?;
    let baseline = cs_value(game, cs)?;
    additive_from(game, &FptasParams::new(epsilon)?, &baseline)
}

/// Multiplicative scheme: `CoS(G) <= value <= (1 + ε)·CoS(G)`.
///
/// A veto player makes the cost zero. Otherwise the cost is at least `1/n`,
/// so an additive error of `ε/n` is within a factor `1 + ε`.
pub fn fptas(game: &WeightedVotingGame, epsilon: Rational) -> Result<Approximation> {
    let n = game.weights().len();
    let params = FptasParams::new(epsilon.clone())?;
    if let Some(&veto) = wvg_veto_agents(game).first() {
        let mut payoffs = vec![Rational::zero(); n];
        payoffs[veto] = Rational::one();
        return Ok(Approximation {
            value: Rational::zero(),
            level: 0,
            witness: SuperImputation::new(payoffs)?,
            cuts_generated: 0,
        });
    }
    let scaled = FptasParams::new(params.epsilon() / uint(n as u64))?;
    additive_from(game, &scaled, &Rational::one())
}

fn additive_from(game: &WeightedVotingGame, params: &FptasParams, baseline: &Rational) -> Result<Approximation> {
    let n = game.weights().len();
    let step = params.epsilon_prime();
    let last = n as u64 * params.x();
    let mut relaxation = LinearProgram::nonnegative(vec![Rational::one(); n]);
    let mut k = 1u64;
    loop {
        let solution = simplex_min(&relaxation);
        if solution.status != LpStatus::Optimal {
            return Err(Error::Oracle(format!(
                "relaxation ended with status {:?}",
                solution.status
            )));
        }
        let p = SuperImputation::new(solution.values)?;
        let least = p.total();
        if least > params.budget(baseline, k) {
            // Every level up to ⌈(least - b)/ε'⌉ - 1 is infeasible on the current rows.
            k = rational::ceil(&((&least - baseline) / &step))
                .to_u64()
                .map_or(u64::MAX, |j| j.max(k + 1));
            if k > last {
                return Err(Error::Oracle(format!("no level up to {last} is feasible")));
            }
            continue;
        }
        match rounded_separation_from(game, &p, params, k, baseline)? {
            Separation::OverBudget => unreachable!("the relaxation optimum is within budget"),
            Separation::Violated(c) => {
                let row = (0..n)
                    .map(|i| {
                        if c.contains(i) {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
                relaxation.add_constraint(Constraint::new(row, Relation::Ge, Rational::one()))?;
            }
            Separation::Feasible(rounded) => {
                // The rounded vector is stable; it also fits L_k when its total allows.
                let level = if rounded.total() <= params.budget(baseline, k) {
                    k
                } else {
                    k + 1
                };
                return Ok(Approximation {
                    value: &step * uint(level),
                    level,
                    witness: rounded,
                    cuts_generated: relaxation.constraints().len(),
                });
            }
        }
    }
}

/// `p*_i = min(1, w_i/q)`: stable, and within twice the optimal total.
pub fn proportional_payoff(game: &WeightedVotingGame) -> SuperImputation {
    let q = uint(game.quota());
    let payoffs = game
        .weights()
        .iter()
        .map(|&w| (uint(w) / &q).min(Rational::one()))
        .collect();
    SuperImputation::new(payoffs).expect("weights and quota are nonnegative")
}

/// One inequality of the bounds report, with both sides evaluated exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub cos: CosResult,
    pub least_core: Rational,
    pub optimal_cs_value: Rational,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn check(
    name: &'static str,
    lhs: impl ToString,
    relation: &'static str,
    rhs: impl ToString,
    holds: bool,
) -> BoundCheck {
    BoundCheck {
        name,
        lhs: lhs.to_string(),
        relation,
        rhs: rhs.to_string(),
        holds,
    }
}

/// Exact cost of stability, least-core value and best structure value, and
/// every bound that applies to the game.
pub fn bounds_report(game: &Game) -> Result<BoundsReport> {
    let n = game.num_players();
    let exact = cos(game)?;
    let cos = exact.cos.clone();
    let grand = game.value(game.grand_coalition());
    let epsilon = least_core_value(game)?.value;
    let (best, _) = optimal_cs_value(game)?;
    let top = match game {
        Game::Weighted(_) => Rational::one(),
        Game::Tabular(g) => max_value(g)?,
    };
    let nn = uint(n as u64);

    let mut checks = vec![
        check(
            "welfare_lower_bound",
            format!("{}", &best - &grand),
            "<=",
            &cos,
            &best - &grand <= cos,
        ),
        check("max_value_upper_bound", &cos, "<=", &nn * &top, cos <= &nn * &top),
    ];
    if !epsilon.is_negative() {
        checks.push(check(
            "least_core_upper_bound",
            &cos,
            "<=",
            &nn * &epsilon,
            cos <= &nn * &epsilon,
        ));
    }
    let super_additive = match game {
        Game::Weighted(g) => is_super_additive(g, ExecutionMode::default())?,
        Game::Tabular(g) => is_super_additive(g, ExecutionMode::default())?,
    };
    if super_additive {
        let lhs = &cos + &grand;
        checks.push(check(
            "super_additive_bound",
            &cos,
            "<=",
            format!("(sqrt({n})-1)*{grand}"),
            le_sqrt_times(&lhs, n as u64, &grand),
        ));
        let anonymous = match game {
            Game::Weighted(g) => is_anonymous(g)?,
            Game::Tabular(g) => is_anonymous(g)?,
        };
        if anonymous {
            checks.push(check(
                "anonymous_bound",
                &cos,
                "<=",
                uint(2) * &grand,
                cos <= uint(2) * &grand,
            ));
        }
    }
    let simple = match game {
        Game::Weighted(_) => true,
        Game::Tabular(g) => is_simple(g)?,
    };
    if simple {
        let has_veto = !crate::stability::veto_agents(game)?.is_empty();
        checks.push(check(
            "zero_iff_veto",
            format!("cos_zero={}", cos.is_zero()),
            "==",
            format!("veto={has_veto}"),
            cos.is_zero() == has_veto,
        ));
    }
    checks.push(check(
        "positive_iff_least_core_positive",
        format!("cos_positive={}", cos.is_positive()),
        "==",
        format!("least_core_positive={}", epsilon.is_positive()),
        cos.is_positive() == epsilon.is_positive(),
    ));
    if let Game::Weighted(g) = game {
        let floor = Rational::new(BigInt::one(), BigInt::from(n));
        checks.push(check(
            "positive_cos_floor",
            &cos,
            ">=",
            format!("0 or {floor}"),
            cos.is_zero() || cos >= floor,
        ));
        let proportional = proportional_payoff(g);
        let optimal_total = &cos + &grand;
        checks.push(check(
            "proportional_stable",
            max_deficit_brute(g, &proportional)?.max_deficit,
            "<=",
            0,
            max_deficit_brute(g, &proportional)?.is_stable(),
        ));
        checks.push(check(
            "proportional_two_approximation",
            proportional.total(),
            "<=",
            uint(2) * &optimal_total,
            proportional.total() <= uint(2) * &optimal_total,
        ));
    }
    Ok(BoundsReport {
        cos: exact,
        least_core: epsilon,
        optimal_cs_value: best,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cos::cos_exact_wvg;
    use crate::game::TabularGame;
    use crate::rational::{int, ratio};

    fn wvg(w: &[u64], q: u64) -> WeightedVotingGame {
        WeightedVotingGame::new(w.to_vec(), q).unwrap()
    }

    #[test]
    fn params() {
        let p = FptasParams::new(ratio(1, 4)).unwrap();
        assert_eq!(p.x(), 8);
        assert_eq!(p.epsilon_prime(), ratio(1, 8));
        assert_eq!(p.grid_step(3), ratio(1, 24));
        let odd = FptasParams::new(ratio(2, 3)).unwrap();
        assert_eq!(odd.x(), 4);
        assert!(FptasParams::new(int(0)).is_err());
        assert!(FptasParams::new(int(-1)).is_err());
    }

    #[test]
    fn separation() {
        let g = wvg(&[1, 1, 1], 2);
        let params = FptasParams::new(ratio(1, 4)).unwrap();
        let zero = SuperImputation::new(vec![int(0); 3]).unwrap();
        match rounded_separation(&g, &zero, &params, 1).unwrap() {
            Separation::Violated(c) => assert!(g.wins(c)),
            other => panic!("{other:?}"),
        }
        let half = SuperImputation::new(vec![ratio(1, 2); 3]).unwrap();
        assert_eq!(
            rounded_separation(&g, &half, &params, 4).unwrap(),
            Separation::Feasible(half.clone())
        );
        assert_eq!(
            rounded_separation(&g, &half, &params, 3).unwrap(),
            Separation::OverBudget
        );
    }

    #[test]
    fn additive_examples() {
        let a = additive_fptas(&wvg(&[1, 1, 1], 2), ratio(1, 4)).unwrap();
        assert!(a.value >= ratio(1, 2) && a.value <= ratio(3, 4));
        assert!(a.witness.total() <= &a.value + int(1));
        let v = additive_fptas(&wvg(&[2, 1, 1], 3), ratio(1, 3)).unwrap();
        assert!(v.value >= int(0) && v.value <= ratio(1, 3));
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(fptas(&wvg(&[2, 1, 1], 3), ratio(1, 10)).unwrap().value, int(0));
        let a = fptas(&wvg(&[1, 1, 1], 2), ratio(1, 10)).unwrap();
        assert!(a.value >= ratio(1, 2) && a.value <= ratio(11, 20));
        let g = wvg(&[8, 8, 9, 9, 1], 10);
        let exact = cos_exact_wvg(&g).unwrap().cos;
        let a = fptas(&g, ratio(1, 5)).unwrap();
        assert!(a.value >= exact && a.value <= &exact * ratio(6, 5));
    }

    #[test]
    fn structure_variant() {
        let g = wvg(&[8, 8, 9, 9, 1], 10);
        let cs = CoalitionStructure::parse_one_based("1,2|3,4|5", 5).unwrap();
        let a = additive_fptas_cs(&g, &cs, ratio(1, 4)).unwrap();
        assert!(a.value >= ratio(1, 2) && a.value <= ratio(3, 4));
    }

    #[test]
    fn proportional() {
        assert_eq!(
            proportional_payoff(&wvg(&[2, 1, 1], 3)).payoffs(),
            &[ratio(2, 3), ratio(1, 3), ratio(1, 3)]
        );
        assert_eq!(proportional_payoff(&wvg(&[1, 1, 1], 2)).total(), ratio(3, 2));
        assert_eq!(proportional_payoff(&wvg(&[2, 2], 3)).total(), ratio(4, 3));
        assert_eq!(proportional_payoff(&wvg(&[7, 1], 3)).payoffs(), &[int(1), ratio(1, 3)]);
    }

    #[test]
    fn report() {
        let r = bounds_report(&wvg(&[1, 1, 1], 2).into()).unwrap();
        assert_eq!(r.cos.cos, ratio(1, 2));
        assert_eq!(r.least_core, ratio(1, 3));
        assert_eq!(r.optimal_cs_value, int(1));
        assert!(r.all_hold(), "{:?}", r.checks);

        let all_win = TabularGame::from_fn(4, |_| int(1)).unwrap();
        let r = bounds_report(&Game::Tabular(all_win)).unwrap();
        assert_eq!(r.cos.cos, int(3));
        let lc = r.checks.iter().find(|c| c.name == "least_core_upper_bound").unwrap();
        assert_eq!((lc.lhs.as_str(), lc.rhs.as_str()), ("3", "3"));
        assert!(r.all_hold());

        let vetoed = bounds_report(&wvg(&[2, 1, 1], 3).into()).unwrap();
        assert_eq!(vetoed.cos.cos, int(0));
        assert!(vetoed.all_hold());
    }
}
