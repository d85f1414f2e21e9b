//! Exact cost of stability.
//!
//! Every variant reduces to one quantity: the minimum total payment of a
//! stable super-imputation, `min p(I)` subject to `p >= 0` and
//! `p(C) >= v(C)` for all `C`. The cost of stabilizing the grand coalition is
//! that minimum minus `v(I)`; the cost of stabilizing a structure `CS` is the
//! same minimum minus `v(CS)`.
//!
//! Two independent routes compute it:
//! * tabular games: the packing dual `max Σ v(C)·λ_C` s.t. `Σ_{C∋i} λ_C <= 1`
//!   over all coalitions, with `p` read off the optimal multipliers;
//! * weighted voting games: the primal program with coalition rows generated
//!   lazily by the weight-DP separation oracle.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{
    check_structure, cs_value, ensure_enumerable, Coalition, CoalitionStructure, CoalitionalGame, Game,
    SuperImputation, TabularGame, WeightedVotingGame,
};
use crate::lp::{simplex_min, solve_with_separation, Constraint, LinearProgram, LpStatus, Relation};
use crate::par::{self, ExecutionMode};
use crate::rational::Rational;
use crate::stability::{max_deficit, max_deficit_brute};

/// Largest tabular game solved through the fully enumerated program; larger
/// ones (up to the enumeration cap) switch to constraint generation.
pub const FULL_LP_CAP: usize = 16;

/// Largest weighted voting game for the welfare-maximizing structure search.
pub const WVG_STRUCTURE_CAP: usize = 16;

/// Largest tabular game for the welfare-maximizing structure search.
pub const TABULAR_STRUCTURE_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CosMethod {
    ClosedForm,
    FullLp,
    ConstraintGeneration,
}

impl fmt::Display for CosMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CosMethod::ClosedForm => "closed_form",
            CosMethod::FullLp => "full_lp",
            CosMethod::ConstraintGeneration => "constraint_generation",
        })
    }
}

/// A cost of stability and a stable super-imputation paying exactly
/// `baseline + cos` in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosResult {
    pub cos: Rational,
    pub witness: SuperImputation,
    pub cuts_generated: usize,
    pub method: CosMethod,
}

/// Cost of stabilizing a particular coalition structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCos {
    pub structure: CoalitionStructure,
    pub structure_value: Rational,
    pub result: CosResult,
    /// Per-part supplements `p(C^j) - v(C^j)`, summing to `result.cos`.
    pub deltas: Vec<Rational>,
}

struct MinTotal {
    total: Rational,
    witness: SuperImputation,
    cuts: usize,
    method: CosMethod,
}

/// `CoS(G)` of a tabular game by the fully enumerated program.
pub fn cos_exact(game: &TabularGame) -> Result<CosResult> {
    let min = min_total_tabular(game, ExecutionMode::default())?;
    into_result(min, game.value(game.grand_coalition()))
}

/// `CoS(G)` of a weighted voting game by constraint generation with the
/// weight-DP separation oracle.
pub fn cos_exact_wvg(game: &WeightedVotingGame) -> Result<CosResult> {
    let grand = Game::Weighted(game.clone());
    let min = min_total_generated(&grand, None)?;
    into_result(min, Rational::one())
}

/// `CoS(G)` by whichever exact route fits the game.
pub fn cos(game: &Game) -> Result<CosResult> {
    match game {
        Game::Weighted(g) => cos_exact_wvg(g),
        Game::Tabular(g) => cos_exact(g),
    }
}

/// Exact costs for a batch of games, in input order.
pub fn cos_batch(games: &[Game], mode: ExecutionMode) -> Vec<Result<CosResult>> {
    par::map_slice(mode, games, cos)
}

/// `n / ⌈q/w⌉ - 1`: the cost of stability of `[w, .., w; q]` with `n` players.
pub fn cos_uniform(n: u64, weight: u64, quota: u64) -> Result<Rational> {
    if n == 0 || weight == 0 || quota == 0 {
        return Err(Error::Domain("players, weight and quota must be positive".into()));
    }
    let total = n
        .checked_mul(weight)
        .ok_or_else(|| Error::Malformed("n·w overflows 64 bits".into()))?;
    if quota > total {
        return Err(Error::Domain(format!("grand coalition loses: {n}·{weight} < {quota}")));
    }
    let min_winning = quota.div_ceil(weight);
    Ok(Rational::new(n.into(), min_winning.into()) - Rational::one())
}

/// `CoS(CS, G)` with the per-part supplements of an optimal witness.
pub fn cos_cs(game: &Game, cs: &CoalitionStructure) -> Result<StructureCos> {
    check_structure(game, cs)?;
    let structure_value = cs_value(game, cs)?;
    let min = match game {
        Game::Weighted(_) => min_total_generated(game, Some(cs))?,
        Game::Tabular(g) => min_total_tabular(g, ExecutionMode::default())?,
    };
    let result = into_result(min, structure_value.clone())?;
    let deltas = cs
        .parts()
        .iter()
        .map(|&c| result.witness.sum_over(c) - game.value(c))
        .collect();
    Ok(StructureCos {
        structure: cs.clone(),
        structure_value,
        result,
        deltas,
    })
}

/// `CoS_CS(G)`: the structure cost at a welfare-maximizing structure.
pub fn cos_with_cs(game: &Game) -> Result<StructureCos> {
    let (_, cs) = optimal_cs_value(game)?;
    cos_cs(game, &cs)
}

/// Maximum of `v(CS)` over all structures and a canonical structure attaining it.
///
/// Subset DP: the part holding the lowest remaining player is chosen among
/// all subsets containing it. For weighted voting games this counts disjoint
/// winning coalitions and gathers unused players into one losing part.
pub fn optimal_cs_value(game: &Game) -> Result<(Rational, CoalitionStructure)> {
    let n = game.num_players();
    let structure = match game {
        Game::Weighted(g) => {
            if n > WVG_STRUCTURE_CAP {
                return Err(structure_cap_error(n, WVG_STRUCTURE_CAP));
            }
            max_disjoint_winning(g)
        }
        Game::Tabular(g) => {
            if n > TABULAR_STRUCTURE_CAP {
                return Err(structure_cap_error(n, TABULAR_STRUCTURE_CAP));
            }
            max_welfare_partition(g)
        }
    };
    let cs = CoalitionStructure::new(n, structure)?.canonical();
    Ok((cs_value(game, &cs)?, cs))
}

fn structure_cap_error(n: usize, cap: usize) -> Error {
    Error::Resource(format!(
        "{n} players exceed the structure search cap of {cap} (the search is NP-hard)"
    ))
}

fn max_disjoint_winning(game: &WeightedVotingGame) -> Vec<Coalition> {
    let n = game.weights().len();
    let size = 1usize << n;
    let mut weight = vec![0u64; size];
    for m in 1..size {
        let i = m.trailing_zeros() as usize;
        weight[m] = weight[m & (m - 1)] + game.weights()[i];
    }
    let mut count = vec![0u32; size];
    // 0 marks "lowest player left over".
    let mut choice = vec![0u64; size];
    for s in 1..size as u64 {
        let lowest = s & s.wrapping_neg();
        let rest = Coalition::from_mask(s ^ lowest);
        let mut best = None::<(u32, u64)>;
        for extra in rest.subsets() {
            let part = extra.mask() | lowest;
            if weight[part as usize] >= game.quota() {
                let value = 1 + count[(s ^ part) as usize];
                if best.is_none_or(|(b, _)| value > b) {
                    best = Some((value, part));
                }
            }
        }
        let skip = count[(s ^ lowest) as usize];
        match best {
            Some((value, part)) if value >= skip => {
                count[s as usize] = value;
                choice[s as usize] = part;
            }
            _ => count[s as usize] = skip,
        }
    }
    let mut parts = Vec::new();
    let mut leftover = Coalition::EMPTY;
    let mut s = size as u64 - 1;
    while s != 0 {
        let part = choice[s as usize];
        if part == 0 {
            let lowest = s & s.wrapping_neg();
            leftover = leftover.union(Coalition::from_mask(lowest));
            s ^= lowest;
        } else {
            parts.push(Coalition::from_mask(part));
            s ^= part;
        }
    }
    if !leftover.is_empty() {
        parts.push(leftover);
    }
    parts
}

fn max_welfare_partition(game: &TabularGame) -> Vec<Coalition> {
    let n = game.num_players();
    let size = 1usize << n;
    let mut best: Vec<Rational> = vec![Rational::zero(); size];
    let mut choice = vec![0u64; size];
    for s in 1..size as u64 {
        let lowest = s & s.wrapping_neg();
        let rest = Coalition::from_mask(s ^ lowest);
        let mut top: Option<(Rational, u64)> = None;
        for extra in rest.subsets() {
            let part = extra.mask() | lowest;
            let value = game.value(Coalition::from_mask(part)) + &best[(s ^ part) as usize];
            if top.as_ref().is_none_or(|(b, _)| value > *b) {
                top = Some((value, part));
            }
        }
        let (value, part) = top.expect("a nonempty set has a part holding its lowest player");
        best[s as usize] = value;
        choice[s as usize] = part;
    }
    let mut parts = Vec::new();
    let mut s = size as u64 - 1;
    while s != 0 {
        parts.push(Coalition::from_mask(choice[s as usize]));
        s ^= choice[s as usize];
    }
    parts
}

fn into_result(min: MinTotal, baseline: Rational) -> Result<CosResult> {
    let cos = &min.total - baseline;
    if cos.is_negative() {
        return Err(Error::Oracle(format!(
            "minimum stable total {} is below the baseline",
            min.total
        )));
    }
    Ok(CosResult {
        cos,
        witness: min.witness,
        cuts_generated: min.cuts,
        method: min.method,
    })
}

fn min_total_tabular(game: &TabularGame, mode: ExecutionMode) -> Result<MinTotal> {
    let n = game.num_players();
    ensure_enumerable(n)?;
    if n > FULL_LP_CAP {
        return min_total_generated(&Game::Tabular(game.clone()), None);
    }
    let valued: Vec<(Coalition, Rational)> = par::map_range(mode, 1..1u64 << n, |m| {
        let c = Coalition::from_mask(m);
        (c, game.value(c))
    })
    .into_iter()
    .filter(|(_, v)| v.is_positive())
    .collect();

    let mut packing = LinearProgram::nonnegative(valued.iter().map(|(_, v)| -v).collect());
    for i in 0..n {
        let row = valued
            .iter()
            .map(|(c, _)| {
                if c.contains(i) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        packing.add_constraint(Constraint::new(row, Relation::Le, Rational::one()))?;
    }
    let solution = simplex_min(&packing);
    if solution.status != LpStatus::Optimal {
        return Err(Error::Oracle(format!(
            "packing program ended with status {:?}",
            solution.status
        )));
    }
    let payoffs: Vec<Rational> = solution.duals.iter().map(|y| -y).collect();
    let witness = SuperImputation::new(payoffs)?;
    let total = -solution.objective_value;
    debug_assert_eq!(total, witness.total());
    Ok(MinTotal {
        total,
        witness,
        cuts: 0,
        method: CosMethod::FullLp,
    })
}

/// The literal program over `(p_1, .., p_n, Δ)`: minimize `Δ` subject to
/// `Σ p = baseline + Δ`, `p, Δ >= 0` and one row `p(C) >= v(C)` per coalition
/// with positive value (the others are implied by `p >= 0`).
pub fn lp_star<G: CoalitionalGame + ?Sized>(game: &G, baseline: &Rational) -> Result<LinearProgram> {
    let n = game.num_players();
    ensure_enumerable(n)?;
    let mut lp = base_program(n, baseline)?;
    for m in 1..1u64 << n {
        let c = Coalition::from_mask(m);
        let v = game.value(c);
        if v.is_positive() {
            lp.add_constraint(coalition_row(n, c, v))?;
        }
    }
    Ok(lp)
}

fn base_program(n: usize, baseline: &Rational) -> Result<LinearProgram> {
    let mut objective = vec![Rational::zero(); n + 1];
    objective[n] = Rational::one();
    let mut lp = LinearProgram::nonnegative(objective);
    let mut sum_row = vec![Rational::one(); n + 1];
    sum_row[n] = -Rational::one();
    lp.add_constraint(Constraint::new(sum_row, Relation::Eq, baseline.clone()))?;
    Ok(lp)
}

fn coalition_row(n: usize, c: Coalition, value: Rational) -> Constraint {
    let coefficients = (0..=n)
        .map(|i| {
            if c.contains(i) && i < n {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    Constraint::new(coefficients, Relation::Ge, value)
}

fn min_total_generated(game: &Game, cs: Option<&CoalitionStructure>) -> Result<MinTotal> {
    let n = game.num_players();
    let baseline = match cs {
        Some(cs) => cs_value(game, cs)?,
        None => game.value(game.grand_coalition()),
    };
    let mut lp = base_program(n, &baseline)?;
    if let Some(cs) = cs {
        for &part in cs.parts() {
            let v = game.value(part);
            if v.is_positive() {
                lp.add_constraint(coalition_row(n, part, v))?;
            }
        }
    }
    let outcome = solve_with_separation(&lp, |x| {
        let p = SuperImputation::new(x[..n].to_vec())?;
        let report = match game {
            Game::Weighted(_) => max_deficit(game, &p)?,
            Game::Tabular(g) => max_deficit_brute(g, &p)?,
        };
        Ok((!report.is_stable()).then(|| coalition_row(n, report.witness, game.value(report.witness))))
    })?;
    if outcome.solution.status != LpStatus::Optimal {
        return Err(Error::Oracle(format!(
            "stabilization program ended with status {:?}",
            outcome.solution.status
        )));
    }
    let witness = SuperImputation::new(outcome.solution.values[..n].to_vec())?;
    Ok(MinTotal {
        total: witness.total(),
        witness,
        cuts: outcome.cuts.len(),
        method: CosMethod::ConstraintGeneration,
    })
}
