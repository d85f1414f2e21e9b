//! The `cos` command-line front end. Reports are `key value` lines with exact
//! rationals.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::approx::{additive_fptas, additive_fptas_cs, bounds_report, fptas, proportional_payoff, Approximation};
use crate::cos::{cos, cos_cs, cos_with_cs, StructureCos};
use crate::error::{Error, Result};
use crate::format::{parse_game, serialize_game};
use crate::game::{CoalitionStructure, CoalitionalGame, Game, SuperImputation, WeightedVotingGame};
use crate::generators::GeneratorSpec;
use crate::rational::{self, format_list};
use crate::stability::{cs_core_check, least_core_value, max_deficit, DeficitReport};

#[derive(Debug, Parser)]
#[command(name = "cos", about = "Cost of stability for cooperative games", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact cost of stabilizing the grand coalition.
    Cos { file: PathBuf },
    /// Exact cost of stabilizing a coalition structure.
    CosCs(CosCsArgs),
    /// Stability of a payoff vector, optionally in an adjusted game.
    Check(CheckArgs),
    /// FPTAS and proportional 2-approximation for weighted voting games.
    Approx(ApproxArgs),
    /// Least-core value.
    LeastCore { file: PathBuf },
    /// Exact quantities and every applicable bound.
    Report { file: PathBuf },
    /// Emit a generated game file.
    Gen {
        /// uniform | projective-plane | majority | partition | all-win | fixture
        kind: String,
        params: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct CosCsArgs {
    file: PathBuf,
    /// Parts separated by `|`, players 1-based, e.g. `1,2|3`.
    #[arg(long, conflicts_with = "best", required_unless_present = "best")]
    structure: Option<String>,
    /// Use a welfare-maximizing structure.
    #[arg(long)]
    best: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    /// Comma-separated payoffs.
    #[arg(long)]
    payoff: String,
    /// External payment to the grand coalition.
    #[arg(long, conflicts_with = "deltas")]
    delta: Option<String>,
    /// Comma-separated payments, one per part of `--structure`.
    #[arg(long, requires = "structure")]
    deltas: Option<String>,
    #[arg(long)]
    structure: Option<String>,
}

#[derive(Debug, Args)]
struct ApproxArgs {
    file: PathBuf,
    #[arg(long, required_unless_present = "proportional")]
    eps: Option<String>,
    /// Additive instead of multiplicative guarantee.
    #[arg(long, requires = "eps")]
    additive: bool,
    /// Also report the proportional payoff.
    #[arg(long)]
    proportional: bool,
    /// Approximate the cost of this structure (additive guarantee).
    #[arg(long, alias = "cs", requires = "eps")]
    structure: Option<String>,
}

/// Runs one command. `args` includes the program name. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let mut report = Vec::new();
    match execute(cli.command, &mut report) {
        Ok(()) => match out.write_all(&report) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &PathBuf) -> Result<Game> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    parse_game(&text)
}

fn weighted(game: &Game) -> Result<&WeightedVotingGame> {
    game.as_weighted()
        .ok_or_else(|| Error::Domain("approximation applies to weighted voting games only".into()))
}

fn line(out: &mut Vec<u8>, key: &str, value: impl std::fmt::Display) {
    writeln!(out, "{key} {value}").expect("writing to memory");
}

fn execute(command: Command, out: &mut Vec<u8>) -> Result<()> {
    match command {
        Command::Cos { file } => {
            let game = load(&file)?;
            let r = cos(&game)?;
            line(out, "cos", &r.cos);
            line(out, "total", r.witness.total());
            line(out, "witness", &r.witness);
            line(out, "method", r.method);
            line(out, "cuts", r.cuts_generated);
        }
        Command::CosCs(args) => {
            let game = load(&args.file)?;
            let r = match &args.structure {
                Some(s) => cos_cs(&game, &CoalitionStructure::parse_one_based(s, game.num_players())?)?,
                None => cos_with_cs(&game)?,
            };
            structure_lines(out, &r);
        }
        Command::Check(args) => {
            let game = load(&args.file)?;
            let n = game.num_players();
            let p = SuperImputation::new(rational::parse_list(&args.payoff)?)?;
            p.check_len(n)?;
            let report = match (&args.delta, &args.deltas, &args.structure) {
                (None, None, None) => max_deficit(&game, &p)?,
                (None, None, Some(s)) => {
                    let cs = CoalitionStructure::parse_one_based(s, n)?;
                    cs_core_check(&game, &cs, &vec![rational::int(0); cs.len()], &p)?
                }
                (Some(d), None, structure) => {
                    let cs = match structure {
                        Some(s) => CoalitionStructure::parse_one_based(s, n)?,
                        None => CoalitionStructure::grand(n),
                    };
                    if cs.len() != 1 {
                        return Err(Error::Malformed(
                            "`--delta` applies to the grand coalition; use `--deltas`".into(),
                        ));
                    }
                    cs_core_check(&game, &cs, &[rational::parse(d)?], &p)?
                }
                (None, Some(ds), Some(s)) => {
                    let cs = CoalitionStructure::parse_one_based(s, n)?;
                    cs_core_check(&game, &cs, &rational::parse_list(ds)?, &p)?
                }
                _ => return Err(Error::Malformed("`--deltas` needs `--structure`".into())),
            };
            check_lines(out, &p, &report);
        }
        Command::Approx(args) => {
            let game = load(&args.file)?;
            let g = weighted(&game)?;
            if let Some(eps) = &args.eps {
                let epsilon = rational::parse(eps)?;
                line(out, "epsilon", &epsilon);
                let (guarantee, a) = match &args.structure {
                    Some(s) => {
                        let cs = CoalitionStructure::parse_one_based(s, g.weights().len())?;
                        line(out, "structure", cs.to_one_based());
                        ("additive", additive_fptas_cs(g, &cs, epsilon)?)
                    }
                    None if args.additive => ("additive", additive_fptas(g, epsilon)?),
                    None => ("multiplicative", fptas(g, epsilon)?),
                };
                approx_lines(out, guarantee, &a);
            }
            if args.proportional {
                let p = proportional_payoff(g);
                line(out, "proportional_total", p.total());
                line(out, "proportional_witness", &p);
            }
        }
        Command::LeastCore { file } => {
            let game = load(&file)?;
            let lc = least_core_value(&game)?;
            line(out, "least_core", &lc.value);
            line(out, "imputation", &lc.imputation);
            line(out, "cuts", lc.cuts_generated);
        }
        Command::Report { file } => {
            let game = load(&file)?;
            let r = bounds_report(&game)?;
            line(out, "players", game.num_players());
            line(out, "grand_value", game.value(game.grand_coalition()));
            line(out, "cos", &r.cos.cos);
            line(out, "least_core", &r.least_core);
            line(out, "optimal_cs_value", &r.optimal_cs_value);
            for c in &r.checks {
                let verdict = if c.holds { "pass" } else { "fail" };
                line(
                    out,
                    "bound",
                    format!("{} {} {} {} {verdict}", c.name, c.lhs, c.relation, c.rhs),
                );
            }
            line(out, "all_pass", r.all_hold());
        }
        Command::Gen { kind, params } => {
            let (game, delta) = GeneratorSpec::parse(&kind, &params)?.generate()?;
            if let Some(delta) = delta {
                line(out, "# delta", delta);
            }
            out.extend_from_slice(serialize_game(&game).as_bytes());
        }
    }
    Ok(())
}

fn structure_lines(out: &mut Vec<u8>, r: &StructureCos) {
    line(out, "structure", r.structure.to_one_based());
    line(out, "structure_value", &r.structure_value);
    line(out, "cos", &r.result.cos);
    line(out, "total", r.result.witness.total());
    line(out, "witness", &r.result.witness);
    line(out, "deltas", format_list(&r.deltas));
    line(out, "method", r.result.method);
    line(out, "cuts", r.result.cuts_generated);
}

fn check_lines(out: &mut Vec<u8>, p: &SuperImputation, report: &DeficitReport) {
    line(out, "total", p.total());
    line(out, "stable", report.is_stable());
    line(out, "deficit", &report.max_deficit);
    if !report.is_stable() {
        line(out, "violating_coalition", report.witness.to_one_based());
    }
}

fn approx_lines(out: &mut Vec<u8>, guarantee: &str, a: &Approximation) {
    line(out, "guarantee", guarantee);
    line(out, "value", &a.value);
    line(out, "level", a.level);
    line(out, "witness", &a.witness);
    line(out, "cuts", a.cuts_generated);
}
