//! Constructions used as examples, tight instances and hardness reductions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::game::{Coalition, Game, TabularGame, WeightedVotingGame};
use crate::rational::{int, Rational};

/// `[w, .., w; q]` with `n` players.
pub fn gen_uniform(n: usize, weight: u64, quota: u64) -> Result<WeightedVotingGame> {
    if n == 0 || weight == 0 {
        return Err(Error::Domain("uniform games need n >= 1 and w >= 1".into()));
    }
    let total = (n as u128) * (weight as u128);
    if quota == 0 || quota as u128 > total {
        return Err(Error::Domain(format!("quota {quota} must lie in 1..={total}")));
    }
    WeightedVotingGame::new(vec![weight; n], quota)
}

/// Majority of `2k + 1` players: `[1, .., 1; k + 1]`.
pub fn gen_anonymous_majority(k: usize) -> Result<WeightedVotingGame> {
    if k == 0 {
        return Err(Error::Domain("majority games need k >= 1".into()));
    }
    gen_uniform(2 * k + 1, 1, k as u64 + 1)
}

/// `[a_1, .., a_n; K]` with `K = Σa/2`, and the payment `(K-1)/(K+1)` whose
/// adjusted game has an empty core exactly when `a` splits into two halves.
pub fn gen_partition_wvg(a: &[u64]) -> Result<(WeightedVotingGame, Rational)> {
    let sum = a
        .iter()
        .try_fold(0u64, |s, &x| s.checked_add(x))
        .ok_or_else(|| Error::Malformed("weights overflow 64 bits".into()))?;
    if a.is_empty() || sum % 2 == 1 || sum < 2 {
        return Err(Error::Domain(format!(
            "partition instances need a nonempty list with even sum >= 2, got sum {sum}"
        )));
    }
    let k = sum / 2;
    let delta = Rational::new(BigInt::from(k - 1), BigInt::from(k + 1));
    Ok((WeightedVotingGame::new(a.to_vec(), k)?, delta))
}

/// Every nonempty coalition is worth 1.
pub fn gen_all_nonempty_win(n: usize) -> Result<TabularGame> {
    if n == 0 {
        return Err(Error::Domain("need at least one player".into()));
    }
    TabularGame::from_fn(n, |_| Rational::one())
}

/// A projective plane of prime order `p` in homogeneous coordinates over GF(p).
///
/// Points and lines are both the normalized triples (first nonzero entry 1),
/// ordered `(0,0,1)`, then `(0,1,z)`, then `(1,y,z)`; a point lies on a line
/// when their dot product vanishes mod `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePlane {
    order: u64,
    lines: Vec<Coalition>,
}

impl ProjectivePlane {
    pub fn new(order: u64) -> Result<Self> {
        if !is_prime(order) {
            return Err(Error::Domain(format!("projective plane order {order} is not prime")));
        }
        let p = order;
        let points: Vec<[u64; 3]> = std::iter::once([0, 0, 1])
            .chain((0..p).map(|z| [0, 1, z]))
            .chain((0..p).flat_map(|y| (0..p).map(move |z| [1, y, z])))
            .collect();
        if points.len() > crate::game::MAX_PLAYERS {
            return Err(Error::Resource(format!(
                "a plane of order {order} has {} points, more than {} players",
                points.len(),
                crate::game::MAX_PLAYERS
            )));
        }
        let lines = points
            .iter()
            .map(|l| {
                Coalition::from_members(
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| (x[0] * l[0] + x[1] * l[1] + x[2] * l[2]) % p == 0)
                        .map(|(i, _)| i),
                )
            })
            .collect();
        let plane = ProjectivePlane { order, lines };
        plane.self_check()?;
        Ok(plane)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn num_points(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Coalition] {
        &self.lines
    }

    /// Line size and point degree are `order + 1`; any two lines meet.
    pub fn self_check(&self) -> Result<()> {
        let k = self.order as usize + 1;
        let broken = |what: &str| Err(Error::Oracle(format!("plane of order {}: {what}", self.order)));
        if self.lines.iter().any(|l| l.len() != k) {
            return broken("a line has the wrong size");
        }
        if (0..self.num_points()).any(|i| self.lines.iter().filter(|l| l.contains(i)).count() != k) {
            return broken("a point has the wrong degree");
        }
        for (a, l) in self.lines.iter().enumerate() {
            if self.lines[a + 1..].iter().any(|m| l.is_disjoint(*m)) {
                return broken("two lines are disjoint");
            }
        }
        Ok(())
    }

    /// The simple game whose winning coalitions contain a line.
    pub fn game(&self) -> Result<TabularGame> {
        TabularGame::from_fn(self.num_points(), |c| {
            int(self.lines.iter().any(|l| l.is_subset_of(c)) as i64)
        })
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The line game of the projective plane of prime order `order`.
pub fn gen_projective_plane(order: u64) -> Result<TabularGame> {
    ProjectivePlane::new(order)?.game()
}

/// Named small games: `ex54`, `ex55`, `tight2approx`, `fano`, `all_win3`.
pub fn fixtures() -> BTreeMap<&'static str, Game> {
    let wvg = |w: &[u64], q| Game::Weighted(WeightedVotingGame::new(w.to_vec(), q).expect("valid fixture"));
    BTreeMap::from([
        ("ex54", wvg(&[1, 1, 1], 2)),
        ("ex55", wvg(&[8, 8, 9, 9, 1], 10)),
        ("tight2approx", wvg(&[2, 2], 3)),
        ("fano", Game::Tabular(gen_projective_plane(2).expect("Fano plane"))),
        (
            "all_win3",
            Game::Tabular(gen_all_nonempty_win(3).expect("three players")),
        ),
    ])
}

/// A generator invocation as accepted by the `gen` command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    Uniform { n: usize, weight: u64, quota: u64 },
    ProjectivePlane { order: u64 },
    AnonymousMajority { k: usize },
    PartitionReduction { a: Vec<u64> },
    AllNonemptyWin { n: usize },
    Fixture { name: String },
}

impl GeneratorSpec {
    pub const KINDS: &'static str =
        "uniform N W Q | projective-plane ORDER | majority K | partition A1 A2 .. | all-win N | fixture NAME";

    pub fn parse(kind: &str, params: &[String]) -> Result<Self> {
        let ints = || {
            params
                .iter()
                .map(|s| {
                    s.parse::<u64>()
                        .map_err(|_| Error::Malformed(format!("invalid integer `{s}`")))
                })
                .collect::<Result<Vec<u64>>>()
        };
        let arity = |want: usize| -> Result<Vec<u64>> {
            let v = ints()?;
            if v.len() != want {
                return Err(Error::Malformed(format!("`{kind}` takes {want} integer parameter(s)")));
            }
            Ok(v)
        };
        Ok(match kind {
            "uniform" => {
                let v = arity(3)?;
                GeneratorSpec::Uniform {
                    n: v[0] as usize,
                    weight: v[1],
                    quota: v[2],
                }
            }
            "projective-plane" => GeneratorSpec::ProjectivePlane { order: arity(1)?[0] },
            "majority" => GeneratorSpec::AnonymousMajority {
                k: arity(1)?[0] as usize,
            },
            "partition" => GeneratorSpec::PartitionReduction { a: ints()? },
            "all-win" => GeneratorSpec::AllNonemptyWin {
                n: arity(1)?[0] as usize,
            },
            "fixture" => match params {
                [name] => GeneratorSpec::Fixture { name: name.clone() },
                _ => return Err(Error::Malformed("`fixture` takes one name".into())),
            },
            other => {
                return Err(Error::Malformed(format!(
                    "unknown generator `{other}`; kinds: {}",
                    Self::KINDS
                )))
            }
        })
    }

    /// The game, plus the payment `Δ` for partition instances.
    pub fn generate(&self) -> Result<(Game, Option<Rational>)> {
        Ok(match self {
            GeneratorSpec::Uniform { n, weight, quota } => (gen_uniform(*n, *weight, *quota)?.into(), None),
            GeneratorSpec::ProjectivePlane { order } => (Game::Tabular(gen_projective_plane(*order)?), None),
            GeneratorSpec::AnonymousMajority { k } => (gen_anonymous_majority(*k)?.into(), None),
            GeneratorSpec::PartitionReduction { a } => {
                let (g, delta) = gen_partition_wvg(a)?;
                (g.into(), Some(delta))
            }
            GeneratorSpec::AllNonemptyWin { n } => (Game::Tabular(gen_all_nonempty_win(*n)?), None),
            GeneratorSpec::Fixture { name } => {
                let game = fixtures()
                    .remove(name.as_str())
                    .ok_or_else(|| Error::Malformed(format!("unknown fixture `{name}`")))?;
                (game, None)
            }
        })
    }
}
