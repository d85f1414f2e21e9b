//! Line-oriented game files.
//!
//! ```text
//! # weighted voting game
//! wvg
//! weights 8 8 9 9 1
//! quota 10
//! ```
//!
//! ```text
//! tabular 2
//! coalition 1 value 1
//! coalition 1,2 value 3/2
//! ```
//!
//! `#` starts a comment. Player indices are 1-based; unlisted coalitions are
//! worth 0.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::game::{Coalition, CoalitionalGame, Game, TabularGame, WeightedVotingGame};
use crate::rational;

pub fn parse_game(text: &str) -> Result<Game> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty());
    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty game file".into(),
    })?;
    let header: Vec<&str> = header.split_whitespace().collect();
    match header.as_slice() {
        ["wvg"] => parse_wvg(header_line, lines),
        ["tabular", n] => {
            let n = n
                .parse()
                .map_err(|_| parse_error(header_line, format!("invalid player count `{n}`")))?;
            parse_tabular(header_line, n, lines)
        }
        _ => Err(parse_error(header_line, "expected `wvg` or `tabular N`")),
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        Error::Malformed(message) => parse_error(line, message),
        other => other,
    }
}

fn parse_wvg<'a>(header_line: usize, mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Game> {
    let (weights_line, text) = lines
        .next()
        .ok_or_else(|| parse_error(header_line + 1, "missing `weights` line"))?;
    let weights = match text.split_whitespace().collect::<Vec<_>>().split_first() {
        Some((&"weights", values)) if !values.is_empty() => values
            .iter()
            .map(|w| {
                w.parse::<u64>()
                    .map_err(|_| parse_error(weights_line, format!("invalid weight `{w}`")))
            })
            .collect::<Result<Vec<u64>>>()?,
        _ => return Err(parse_error(weights_line, "expected `weights W1 W2 ..`")),
    };
    let (quota_line, text) = lines
        .next()
        .ok_or_else(|| parse_error(weights_line + 1, "missing `quota` line"))?;
    let quota = match text.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["quota", q] => q
            .parse::<u64>()
            .map_err(|_| parse_error(quota_line, format!("invalid quota `{q}`")))?,
        _ => return Err(parse_error(quota_line, "expected `quota Q`")),
    };
    if let Some((line, _)) = lines.next() {
        return Err(parse_error(line, "unexpected content after `quota`"));
    }
    WeightedVotingGame::new(weights, quota)
        .map(Game::Weighted)
        .map_err(at_line(quota_line))
}

fn parse_tabular<'a>(header_line: usize, n: usize, lines: impl Iterator<Item = (usize, &'a str)>) -> Result<Game> {
    if n == 0 || n > crate::game::MAX_PLAYERS {
        return Err(parse_error(
            header_line,
            format!("player count must lie in 1..={}", crate::game::MAX_PLAYERS),
        ));
    }
    let mut entries = BTreeMap::new();
    for (line, text) in lines {
        let (coalition, value) = match text.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["coalition", c, "value", v] => (*c, *v),
            _ => return Err(parse_error(line, "expected `coalition I1,I2,.. value R`")),
        };
        let c = Coalition::parse_one_based(coalition, n).map_err(at_line(line))?;
        let v = rational::parse(value).map_err(at_line(line))?;
        if entries.insert(c, v).is_some() {
            return Err(parse_error(
                line,
                format!("coalition {} listed twice", c.to_one_based()),
            ));
        }
    }
    TabularGame::new(n, entries).map(Game::Tabular)
}

/// Canonical text of a game; `parse_game` inverts it exactly.
pub fn serialize_game(game: &Game) -> String {
    let mut out = String::new();
    match game {
        Game::Weighted(g) => {
            let weights: Vec<String> = g.weights().iter().map(u64::to_string).collect();
            writeln!(out, "wvg\nweights {}\nquota {}", weights.join(" "), g.quota()).unwrap();
        }
        Game::Tabular(g) => {
            writeln!(out, "tabular {}", g.num_players()).unwrap();
            for (c, v) in g.entries() {
                writeln!(out, "coalition {} value {v}", c.to_one_based()).unwrap();
            }
        }
    }
    out
}
