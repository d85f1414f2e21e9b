//! Coalitional games, coalitions, coalition structures and payoff vectors.
//!
//! Players are indexed from 0 internally. Everything user-facing (game files,
//! structure strings, reports) is 1-based; the conversion happens only in the
//! `parse_one_based` / `to_one_based` helpers below.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::par::{self, ExecutionMode};
use crate::rational::{self, Rational};

/// Hard limit imposed by the 64-bit coalition representation.
pub const MAX_PLAYERS: usize = 64;

/// Largest player count for which anything enumerates all `2^n` coalitions.
pub const ENUMERATION_CAP: usize = 20;

/// A set of players stored as a bit mask (bit `i` set iff player `i` is a member).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_mask(mask: u64) -> Self {
        Coalition(mask)
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    /// The grand coalition `{0, .., n-1}`.
    pub fn grand(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        if n == MAX_PLAYERS {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(player: usize) -> Self {
        debug_assert!(player < MAX_PLAYERS);
        Coalition(1u64 << player)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        members.into_iter().fold(Coalition::EMPTY, |c, i| c.with(i))
    }

    pub fn contains(self, player: usize) -> bool {
        player < MAX_PLAYERS && self.0 >> player & 1 == 1
    }

    pub fn with(self, player: usize) -> Self {
        Coalition(self.0 | 1u64 << player)
    }

    pub fn without(self, player: usize) -> Self {
        Coalition(self.0 & !(1u64 << player))
    }

    pub fn union(self, other: Self) -> Self {
        Coalition(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Coalition(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Coalition(self.0 & !other.0)
    }

    /// Complement relative to the player set `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        Coalition::grand(n).difference(self)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// True iff every member is below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Coalition::grand(n))
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in increasing order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    /// 1-based comma list, e.g. `2,3`. The empty coalition prints as `{}`.
    pub fn to_one_based(self) -> String {
        if self.is_empty() {
            return "{}".to_string();
        }
        self.members()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a 1-based comma list (or `{}`) against a game with `n` players.
    pub fn parse_one_based(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        if text == "{}" {
            return Ok(Coalition::EMPTY);
        }
        let mut coalition = Coalition::EMPTY;
        for token in text.split(',') {
            let token = token.trim();
            let index: usize = token
                .parse()
                .map_err(|_| Error::Malformed(format!("invalid player index `{token}`")))?;
            if index == 0 || index > n {
                return Err(Error::Malformed(format!("player index {index} out of range 1..={n}")));
            }
            if coalition.contains(index - 1) {
                return Err(Error::Malformed(format!("player {index} listed twice")));
            }
            coalition = coalition.with(index - 1);
        }
        Ok(coalition)
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Coalition;

    fn next(&mut self) -> Option<Coalition> {
        let current = self.next?;
        // Standard subset walk: next = (current - universe) & universe.
        let following = current.wrapping_sub(self.universe) & self.universe;
        self.next = (following != 0).then_some(following);
        Some(Coalition(current))
    }
}

/// A characteristic function over players `0..num_players()`.
pub trait CoalitionalGame: Sync {
    fn num_players(&self) -> usize;

    /// `v(c)`. Callers guarantee `c` fits the player count.
    fn value(&self, c: Coalition) -> Rational;

    fn grand_coalition(&self) -> Coalition {
        Coalition::grand(self.num_players())
    }
}

/// `[w_1, .., w_n; q]`: a coalition wins iff its total weight reaches the quota.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedVotingGame {
    weights: Vec<u64>,
    quota: u64,
    total: u64,
}

impl WeightedVotingGame {
    pub fn new(weights: Vec<u64>, quota: u64) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Malformed("a game needs at least one player".into()));
        }
        if weights.len() > MAX_PLAYERS {
            return Err(Error::Malformed(format!(
                "{} players exceed the supported maximum of {MAX_PLAYERS}",
                weights.len()
            )));
        }
        if quota == 0 {
            return Err(Error::Domain(
                "quota must be positive (the empty coalition must lose)".into(),
            ));
        }
        let total = weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w))
            .ok_or_else(|| Error::Malformed("total weight overflows 64 bits".into()))?;
        if total < quota {
            return Err(Error::Domain(format!(
                "grand coalition loses: total weight {total} is below quota {quota}"
            )));
        }
        Ok(WeightedVotingGame { weights, quota, total })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn quota(&self) -> u64 {
        self.quota
    }

    pub fn total_weight(&self) -> u64 {
        self.total
    }

    pub fn weight(&self, c: Coalition) -> u64 {
        // Cannot overflow: bounded by the checked total.
        c.members().map(|i| self.weights[i]).sum()
    }

    pub fn wins(&self, c: Coalition) -> bool {
        self.weight(c) >= self.quota
    }
}

impl CoalitionalGame for WeightedVotingGame {
    fn num_players(&self) -> usize {
        self.weights.len()
    }

    fn value(&self, c: Coalition) -> Rational {
        if self.wins(c) {
            Rational::one()
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for WeightedVotingGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        write!(f, "[{}; {}]", weights.join(", "), self.quota)
    }
}

/// A game given by an explicit coalition -> value table; unlisted coalitions are worth 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabularGame {
    n: usize,
    entries: BTreeMap<Coalition, Rational>,
}

impl TabularGame {
    pub fn new(n: usize, entries: BTreeMap<Coalition, Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("a game needs at least one player".into()));
        }
        if n > MAX_PLAYERS {
            return Err(Error::Malformed(format!(
                "{n} players exceed the supported maximum of {MAX_PLAYERS}"
            )));
        }
        let mut kept = BTreeMap::new();
        for (c, v) in entries {
            if !c.fits(n) {
                return Err(Error::Malformed(format!(
                    "coalition {} references a player beyond {n}",
                    c.to_one_based()
                )));
            }
            if v.is_negative() {
                return Err(Error::Domain(format!(
                    "coalition {} has negative value {v}",
                    c.to_one_based()
                )));
            }
            if c.is_empty() {
                if !v.is_zero() {
                    return Err(Error::Domain("the empty coalition must have value 0".into()));
                }
                continue;
            }
            kept.insert(c, v);
        }
        Ok(TabularGame { n, entries: kept })
    }

    /// Tabulates `value` over all nonempty coalitions, keeping nonzero entries.
    pub fn from_fn(n: usize, value: impl Fn(Coalition) -> Rational) -> Result<Self> {
        ensure_enumerable(n)?;
        let entries = (1..1u64 << n)
            .map(Coalition::from_mask)
            .map(|c| (c, value(c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        TabularGame::new(n, entries)
    }

    pub fn entries(&self) -> &BTreeMap<Coalition, Rational> {
        &self.entries
    }
}

impl CoalitionalGame for TabularGame {
    fn num_players(&self) -> usize {
        self.n
    }

    fn value(&self, c: Coalition) -> Rational {
        self.entries.get(&c).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Either kind of game the solvers accept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Game {
    Weighted(WeightedVotingGame),
    Tabular(TabularGame),
}

impl Game {
    pub fn as_weighted(&self) -> Option<&WeightedVotingGame> {
        match self {
            Game::Weighted(g) => Some(g),
            Game::Tabular(_) => None,
        }
    }

    /// The explicit characteristic function of this game.
    pub fn to_tabular(&self) -> Result<TabularGame> {
        match self {
            Game::Weighted(g) => TabularGame::from_fn(g.num_players(), |c| g.value(c)),
            Game::Tabular(g) => Ok(g.clone()),
        }
    }
}

impl CoalitionalGame for Game {
    fn num_players(&self) -> usize {
        match self {
            Game::Weighted(g) => g.num_players(),
            Game::Tabular(g) => g.num_players(),
        }
    }

    fn value(&self, c: Coalition) -> Rational {
        match self {
            Game::Weighted(g) => g.value(c),
            Game::Tabular(g) => g.value(c),
        }
    }
}

impl From<WeightedVotingGame> for Game {
    fn from(g: WeightedVotingGame) -> Self {
        Game::Weighted(g)
    }
}

impl From<TabularGame> for Game {
    fn from(g: TabularGame) -> Self {
        Game::Tabular(g)
    }
}

pub(crate) fn ensure_enumerable(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        Err(Error::Resource(format!(
            "{n} players exceed the enumeration cap of {ENUMERATION_CAP}"
        )))
    } else {
        Ok(())
    }
}

/// `v(c)` with a range check on `c`.
pub fn coalition_value<G: CoalitionalGame + ?Sized>(game: &G, c: Coalition) -> Result<Rational> {
    if !c.fits(game.num_players()) {
        return Err(Error::Malformed(format!(
            "coalition {} references a player beyond {}",
            c.to_one_based(),
            game.num_players()
        )));
    }
    Ok(game.value(c))
}

/// A partition of `{0, .., n-1}` into nonempty, pairwise disjoint parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoalitionStructure {
    n: usize,
    parts: Vec<Coalition>,
}

impl CoalitionStructure {
    pub fn new(n: usize, parts: Vec<Coalition>) -> Result<Self> {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::Malformed(format!("invalid player count {n}")));
        }
        let mut covered = Coalition::EMPTY;
        for part in &parts {
            if part.is_empty() {
                return Err(Error::Malformed("coalition structure has an empty part".into()));
            }
            if !part.fits(n) {
                return Err(Error::Malformed(format!(
                    "part {} references a player beyond {n}",
                    part.to_one_based()
                )));
            }
            if !part.is_disjoint(covered) {
                return Err(Error::Malformed(format!(
                    "part {} overlaps an earlier part",
                    part.to_one_based()
                )));
            }
            covered = covered.union(*part);
        }
        if covered != Coalition::grand(n) {
            return Err(Error::Malformed(format!(
                "parts do not cover players {}",
                covered.complement(n).to_one_based()
            )));
        }
        Ok(CoalitionStructure { n, parts })
    }

    /// The single-part structure `(I)`.
    pub fn grand(n: usize) -> Self {
        CoalitionStructure {
            n,
            parts: vec![Coalition::grand(n)],
        }
    }

    /// Parses `1,2|3` (1-based, parts separated by `|`).
    pub fn parse_one_based(text: &str, n: usize) -> Result<Self> {
        let parts = text
            .split('|')
            .map(|part| Coalition::parse_one_based(part, n))
            .collect::<Result<Vec<_>>>()?;
        CoalitionStructure::new(n, parts)
    }

    pub fn to_one_based(&self) -> String {
        self.parts
            .iter()
            .map(|c| c.to_one_based())
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Same partition with parts sorted by smallest member.
    pub fn canonical(&self) -> Self {
        let mut parts = self.parts.clone();
        parts.sort_by_key(|c| c.first());
        CoalitionStructure { n: self.n, parts }
    }

    pub fn num_players(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[Coalition] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// `v(CS)`: sum of the part values.
pub fn cs_value<G: CoalitionalGame + ?Sized>(game: &G, cs: &CoalitionStructure) -> Result<Rational> {
    check_structure(game, cs)?;
    Ok(cs.parts.iter().map(|&c| game.value(c)).sum())
}

pub(crate) fn check_structure<G: CoalitionalGame + ?Sized>(game: &G, cs: &CoalitionStructure) -> Result<()> {
    if cs.n != game.num_players() {
        return Err(Error::Malformed(format!(
            "structure is over {} players but the game has {}",
            cs.n,
            game.num_players()
        )));
    }
    Ok(())
}

/// A nonnegative payoff vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperImputation(Vec<Rational>);

impl SuperImputation {
    pub fn new(payoffs: Vec<Rational>) -> Result<Self> {
        if let Some((i, p)) = payoffs.iter().enumerate().find(|(_, p)| p.is_negative()) {
            return Err(Error::Domain(format!("payoff of player {} is negative ({p})", i + 1)));
        }
        Ok(SuperImputation(payoffs))
    }

    pub fn payoffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `p(c)`.
    pub fn sum_over(&self, c: Coalition) -> Rational {
        c.members().map(|i| &self.0[i]).sum()
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::Malformed(format!(
                "payoff vector has {} entries but the game has {n} players",
                self.0.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for SuperImputation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::format_list(&self.0))
    }
}

/// A game whose grand coalition, or whose structure parts, receive external supplements.
#[derive(Debug, Clone)]
pub struct AdjustedGame<'a, G: ?Sized> {
    base: &'a G,
    supplements: Vec<(Coalition, Rational)>,
}

impl<'a, G: CoalitionalGame + ?Sized> AdjustedGame<'a, G> {
    pub fn base(&self) -> &'a G {
        self.base
    }

    /// `(coalition, supplement)` pairs, in structure order.
    pub fn supplements(&self) -> &[(Coalition, Rational)] {
        &self.supplements
    }

    pub fn total_supplement(&self) -> Rational {
        self.supplements.iter().map(|(_, d)| d).sum()
    }
}

impl<G: CoalitionalGame + ?Sized> CoalitionalGame for AdjustedGame<'_, G> {
    fn num_players(&self) -> usize {
        self.base.num_players()
    }

    fn value(&self, c: Coalition) -> Rational {
        let base = self.base.value(c);
        match self.supplements.iter().find(|(part, _)| *part == c) {
            Some((_, delta)) => base + delta,
            None => base,
        }
    }
}

/// `G(delta)`: the grand coalition's value raised by `delta`.
pub fn adjust_game<G: CoalitionalGame + ?Sized>(game: &G, delta: Rational) -> Result<AdjustedGame<'_, G>> {
    if delta.is_negative() {
        return Err(Error::Domain(format!("supplement {delta} is negative")));
    }
    Ok(AdjustedGame {
        base: game,
        supplements: vec![(game.grand_coalition(), delta)],
    })
}

/// `G(deltas)`: part `j` of `cs` has its value raised by `deltas[j]`.
pub fn adjust_game_cs<'a, G: CoalitionalGame + ?Sized>(
    game: &'a G,
    cs: &CoalitionStructure,
    deltas: &[Rational],
) -> Result<AdjustedGame<'a, G>> {
    check_structure(game, cs)?;
    if deltas.len() != cs.len() {
        return Err(Error::Domain(format!(
            "{} supplements given for {} parts",
            deltas.len(),
            cs.len()
        )));
    }
    if let Some(d) = deltas.iter().find(|d| d.is_negative()) {
        return Err(Error::Domain(format!("supplement {d} is negative")));
    }
    Ok(AdjustedGame {
        base: game,
        supplements: cs.parts.iter().copied().zip(deltas.iter().cloned()).collect(),
    })
}

/// `p` is an imputation for `cs`: nonnegative and exactly distributing every
/// part's value. For the single-part structure, individual rationality
/// `p_i >= v({i})` is required as well.
pub fn is_imputation<G: CoalitionalGame + ?Sized>(game: &G, cs: &CoalitionStructure, p: &SuperImputation) -> bool {
    let n = game.num_players();
    if p.len() != n || cs.n != n {
        return false;
    }
    if p.payoffs().iter().any(|x| x.is_negative()) {
        return false;
    }
    if !cs.parts.iter().all(|&c| p.sum_over(c) == game.value(c)) {
        return false;
    }
    if cs.len() == 1 {
        return (0..n).all(|i| p.payoffs()[i] >= game.value(Coalition::singleton(i)));
    }
    true
}

/// `max_C v(C)`.
pub fn max_value<G: CoalitionalGame + ?Sized>(game: &G) -> Result<Rational> {
    ensure_enumerable(game.num_players())?;
    let n = game.num_players();
    Ok(par::map_reduce(
        ExecutionMode::default(),
        0..1u64 << n,
        Rational::zero(),
        |m| game.value(Coalition::from_mask(m)),
        |a, b| if a >= b { a } else { b },
    ))
}

impl Game {
    /// Largest coalition value; 1 for every weighted voting game.
    pub fn max_value(&self) -> Result<Rational> {
        match self {
            Game::Weighted(_) => Ok(Rational::one()),
            Game::Tabular(g) => Ok(g
                .entries
                .values()
                .cloned()
                .fold(Rational::zero(), |a, b| if a >= b { a } else { b })),
        }
    }
}

/// `v(C') <= v(C)` whenever `C' ⊆ C`.
pub fn is_increasing<G: CoalitionalGame + ?Sized>(game: &G) -> Result<bool> {
    let n = game.num_players();
    ensure_enumerable(n)?;
    Ok(par::all(ExecutionMode::default(), 0..1u64 << n, |m| {
        let c = Coalition::from_mask(m);
        let v = game.value(c);
        c.complement(n).members().all(|i| v <= game.value(c.with(i)))
    }))
}

/// Increasing with all values in {0, 1}.
pub fn is_simple<G: CoalitionalGame + ?Sized>(game: &G) -> Result<bool> {
    let n = game.num_players();
    ensure_enumerable(n)?;
    let zero_one = par::all(ExecutionMode::default(), 0..1u64 << n, |m| {
        let v = game.value(Coalition::from_mask(m));
        v.is_zero() || v.is_one()
    });
    Ok(zero_one && is_increasing(game)?)
}

/// `v(S) + v(T) <= v(S ∪ T)` for all disjoint `S`, `T`. Visits `3^n` pairs.
pub fn is_super_additive<G: CoalitionalGame + ?Sized>(game: &G, mode: ExecutionMode) -> Result<bool> {
    let n = game.num_players();
    ensure_enumerable(n)?;
    Ok(par::all(mode, 0..1u64 << n, |m| {
        let s = Coalition::from_mask(m);
        let vs = game.value(s);
        s.complement(n)
            .subsets()
            .filter(|t| t.mask() > s.mask())
            .all(|t| &vs + game.value(t) <= game.value(s.union(t)))
    }))
}

/// `v(C)` depends only on `|C|`.
pub fn is_anonymous<G: CoalitionalGame + ?Sized>(game: &G) -> Result<bool> {
    let n = game.num_players();
    ensure_enumerable(n)?;
    let by_size: Vec<Rational> = (0..=n).map(|k| game.value(Coalition::grand(k))).collect();
    Ok(par::all(ExecutionMode::default(), 0..1u64 << n, |m| {
        let c = Coalition::from_mask(m);
        game.value(c) == by_size[c.len()]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn wvg(w: &[u64], q: u64) -> WeightedVotingGame {
        WeightedVotingGame::new(w.to_vec(), q).unwrap()
    }

    #[test]
    fn coalition_algebra() {
        let a = Coalition::from_members([0, 2]);
        let b = Coalition::from_members([2, 3]);
        assert_eq!(a.union(b), Coalition::from_members([0, 2, 3]));
        assert_eq!(a.intersection(b), Coalition::singleton(2));
        assert_eq!(a.difference(b), Coalition::singleton(0));
        assert_eq!(a.complement(4), Coalition::from_members([1, 3]));
        assert_eq!(a.len(), 2);
        assert_eq!(a.members().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(Coalition::grand(3).subsets().count(), 8);
        assert_eq!(Coalition::EMPTY.subsets().count(), 1);
        assert_eq!(Coalition::grand(64).len(), 64);
    }

    #[test]
    fn one_based_text() {
        let c = Coalition::parse_one_based("2,3", 3).unwrap();
        assert_eq!(c, Coalition::from_members([1, 2]));
        assert_eq!(c.to_one_based(), "2,3");
        assert!(Coalition::parse_one_based("0", 3).is_err());
        assert!(Coalition::parse_one_based("4", 3).is_err());
        assert!(Coalition::parse_one_based("1,1", 3).is_err());
        let cs = CoalitionStructure::parse_one_based("1,2|3", 3).unwrap();
        assert_eq!(cs.to_one_based(), "1,2|3");
        assert!(CoalitionStructure::parse_one_based("1,2", 3).is_err());
        assert!(CoalitionStructure::parse_one_based("1,2|2,3", 3).is_err());
    }

    #[test]
    fn wvg_values() {
        let ex54 = wvg(&[1, 1, 1], 2);
        assert_eq!(coalition_value(&ex54, Coalition::from_members([0, 1])).unwrap(), int(1));
        assert_eq!(coalition_value(&ex54, Coalition::EMPTY).unwrap(), int(0));
        assert!(coalition_value(&ex54, Coalition::singleton(3)).is_err());
        let ex55 = wvg(&[8, 8, 9, 9, 1], 10);
        assert_eq!(ex55.value(Coalition::from_members([3, 4])), int(1));
        assert!(WeightedVotingGame::new(vec![1], 2).is_err());
        assert!(WeightedVotingGame::new(vec![1], 0).is_err());
        assert!(WeightedVotingGame::new(vec![u64::MAX, 1], 1).is_err());
    }

    #[test]
    fn structure_values() {
        let ex54 = wvg(&[1, 1, 1], 2);
        let cs = CoalitionStructure::parse_one_based("1,2|3", 3).unwrap();
        assert_eq!(cs_value(&ex54, &cs).unwrap(), int(1));
        let ex55 = wvg(&[8, 8, 9, 9, 1], 10);
        let cs = CoalitionStructure::parse_one_based("1,2|3,5|4", 5).unwrap();
        assert_eq!(cs_value(&ex55, &cs).unwrap(), int(2));
        assert_eq!(
            cs_value(&ex55, &CoalitionStructure::grand(5)).unwrap(),
            ex55.value(Coalition::grand(5))
        );
        assert!(cs_value(&ex54, &CoalitionStructure::grand(4)).is_err());
    }

    #[test]
    fn adjusted_games() {
        let ex54 = wvg(&[1, 1, 1], 2);
        let adjusted = adjust_game(&ex54, ratio(1, 2)).unwrap();
        assert_eq!(adjusted.value(Coalition::grand(3)), ratio(3, 2));
        assert_eq!(adjusted.value(Coalition::from_members([0, 1])), int(1));
        assert!(adjust_game(&ex54, ratio(-1, 2)).is_err());

        let partition = wvg(&[1, 1, 2], 2);
        let adjusted = adjust_game(&partition, ratio(1, 3)).unwrap();
        assert_eq!(adjusted.value(Coalition::grand(3)), ratio(4, 3));

        let cs = CoalitionStructure::parse_one_based("1,2|3", 3).unwrap();
        let adjusted = adjust_game_cs(&ex54, &cs, &[ratio(1, 2), int(0)]).unwrap();
        assert_eq!(adjusted.value(Coalition::from_members([0, 1])), ratio(3, 2));
        assert_eq!(adjusted.value(Coalition::singleton(2)), int(0));
        assert!(adjust_game_cs(&ex54, &cs, &[int(1)]).is_err());
        assert!(adjust_game_cs(&ex54, &cs, &[int(1), int(-1)]).is_err());

        let single = adjust_game_cs(&ex54, &CoalitionStructure::grand(3), &[ratio(1, 2)]).unwrap();
        let grand = adjust_game(&ex54, ratio(1, 2)).unwrap();
        for c in Coalition::grand(3).subsets() {
            assert_eq!(single.value(c), grand.value(c));
        }
    }

    #[test]
    fn zero_supplement_is_identity() {
        let ex55 = wvg(&[8, 8, 9, 9, 1], 10);
        let cs = CoalitionStructure::parse_one_based("1,2|3,4|5", 5).unwrap();
        let adjusted = adjust_game_cs(&ex55, &cs, &[int(0), int(0), int(0)]).unwrap();
        let grand = adjust_game(&ex55, int(0)).unwrap();
        for c in Coalition::grand(5).subsets() {
            assert_eq!(adjusted.value(c), ex55.value(c));
            assert_eq!(grand.value(c), ex55.value(c));
        }
    }

    #[test]
    fn imputations() {
        let ex54 = wvg(&[1, 1, 1], 2);
        let cs = CoalitionStructure::parse_one_based("1,2|3", 3).unwrap();
        let p = SuperImputation::new(vec![ratio(1, 2), ratio(1, 2), int(0)]).unwrap();
        assert!(is_imputation(&ex54, &cs, &p));
        let p = SuperImputation::new(vec![ratio(1, 2), ratio(1, 2), ratio(1, 2)]).unwrap();
        assert!(!is_imputation(&ex54, &cs, &p));
        let p = SuperImputation::new(vec![int(1), int(0), int(0)]).unwrap();
        assert!(is_imputation(&ex54, &CoalitionStructure::grand(3), &p));
        assert!(SuperImputation::new(vec![int(-1)]).is_err());
    }

    #[test]
    fn tabular_rules() {
        let mut entries = BTreeMap::new();
        entries.insert(Coalition::EMPTY, int(1));
        assert!(TabularGame::new(2, entries).is_err());
        let mut entries = BTreeMap::new();
        entries.insert(Coalition::singleton(0), int(-1));
        assert!(TabularGame::new(2, entries).is_err());
        let mut entries = BTreeMap::new();
        entries.insert(Coalition::singleton(2), int(1));
        assert!(TabularGame::new(2, entries).is_err());
        let g = TabularGame::new(2, BTreeMap::new()).unwrap();
        assert_eq!(g.value(Coalition::grand(2)), int(0));
    }

    #[test]
    fn structural_properties() {
        let maj = Game::from(wvg(&[1, 1, 1], 2));
        assert!(is_simple(&maj).unwrap());
        assert!(is_super_additive(&maj, ExecutionMode::Sequential).unwrap());
        assert!(is_anonymous(&maj).unwrap());
        let ex55 = wvg(&[8, 8, 9, 9, 1], 10);
        assert!(!is_super_additive(&ex55, ExecutionMode::Parallel).unwrap());
        assert!(!is_anonymous(&ex55).unwrap());
        let bumpy = TabularGame::from_fn(2, |c| if c.len() == 1 { int(2) } else { int(1) }).unwrap();
        assert!(!is_increasing(&bumpy).unwrap());
    }
}
