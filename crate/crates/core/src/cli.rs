//! Command-line interface.
//!
//! Every subcommand prints one JSON document on stdout. Exit status 0 means
//! equivalent, valid, holds or pass; 1 means distinguished, counterexample
//! or refuted; 2 means an input or usage error, reported as
//! `{"error": {...}}` naming the file and position.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{check_congruence, check_equation, parse_equation, Equiv, Op, SamplerConfig};
use crate::equivalence::{game_equivalence, instantial_bisimilar, power_bisimilar, Game, RelationKind};
use crate::error::Error;
use crate::game::{ExtensiveGame, Player, StrategicGame};
use crate::logic::{
    axiom_soundness_suite, countermodel_search, model_check, parse_formula, validate_frame, FrameKind,
    NeighborhoodModel,
};
use crate::powers::{powers_of, PowerKind};
use crate::representation::{construct_game, verify_roundtrip, RepresentationInput};

#[derive(Debug, Parser)]
#[command(name = "gamepowers", version, about = "Powers of players in finite two-player games")]
pub struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Powers of one or both players.
    Powers {
        game: PathBuf,
        #[arg(long)]
        player: Option<Player>,
        #[arg(long, default_value = "basic")]
        kind: PowerKind,
    },
    /// Compares two games.
    Equiv {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, default_value = "strong")]
        relation: RelationKind,
    },
    /// Decides bisimilarity of two pointed models.
    Bisim {
        m1: PathBuf,
        w1: String,
        m2: PathBuf,
        w2: String,
        #[arg(long, default_value = "instantial")]
        kind: BisimKind,
    },
    /// Checks the frame conditions of a model.
    Frame {
        model: PathBuf,
        #[arg(long, default_value = "instantial")]
        kind: FrameKind,
    },
    /// Worlds of a model where a formula is true.
    Mc { model: PathBuf, formula: String },
    /// Builds a game from a pair of basic-power families.
    Represent {
        families: PathBuf,
        /// Recompute the powers of the built game and compare.
        #[arg(long)]
        verify: bool,
    },
    /// Checks an equation between game terms on samples.
    Algebra {
        equation: String,
        #[arg(long, default_value = "strong")]
        equiv: Equiv,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Seed of the random sampler.
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
        #[arg(long, default_value_t = 3)]
        outcomes: usize,
    },
    /// Checks that an equivalence is preserved by an operation.
    Congruence {
        /// One of `+`, `*`, `-`, `o`.
        op: Op,
        #[arg(long, default_value = "strong")]
        equiv: Equiv,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Seed of the random sampler.
        #[arg(long)]
        seed: u64,
    },
    /// Checks instances of the axiom schemata on random models.
    Axioms {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Seed of the random sampler.
        #[arg(long)]
        seed: u64,
    },
    /// Searches for a countermodel to a formula.
    Refute {
        formula: String,
        #[arg(long, default_value_t = 3)]
        max_worlds: usize,
        /// Seed of the random sampler.
        #[arg(long)]
        seed: u64,
        /// Number of models to evaluate.
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BisimKind {
    Power,
    Instantial,
}

/// What a run produced: exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// An input problem: which input, where and what.
#[derive(Debug, Serialize)]
struct InputError {
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    position: Option<usize>,
    message: String,
}

impl InputError {
    fn new(input: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            input: input.into(),
            line: None,
            column: None,
            position: None,
            message: message.into(),
        }
    }

    fn from_error(input: &str, e: Error) -> Self {
        match e {
            Error::Json(j) => InputError {
                line: Some(j.line()),
                column: Some(j.column()),
                ..InputError::new(input, j.to_string())
            },
            Error::Parse(p) => InputError {
                position: Some(p.position),
                ..InputError::new(input, p.to_string())
            },
            other => InputError::new(input, other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(i32, Value), InputError>;

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code,
                    stdout: render(&json!({ "error": InputError::new("arguments", e.kind().to_string()) }), false),
                    stderr: text,
                }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> RunOutput {
    match dispatch(&cli.command) {
        Ok((code, value)) => RunOutput {
            code,
            stdout: render(&value, cli.pretty),
            stderr: String::new(),
        },
        Err(e) => {
            let stderr = format!("error in {}: {}\n", e.input, e.message);
            RunOutput {
                code: 2,
                stdout: render(&json!({ "error": e }), cli.pretty),
                stderr,
            }
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    }
    .expect("serializable");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn read(path: &Path) -> std::result::Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::new(path.display().to_string(), e.to_string()))
}

/// Reads an extensive or strategic game; a `matrix` key selects the
/// strategic format so that errors point into the intended schema.
fn load_game(path: &Path) -> std::result::Result<Game, InputError> {
    let name = path.display().to_string();
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| InputError::from_error(&name, e.into()))?;
    let game = if value.get("matrix").is_some() {
        StrategicGame::from_json(&text).map(Game::Strategic)
    } else {
        ExtensiveGame::from_json(&text).map(Game::Extensive)
    };
    game.map_err(|e| InputError::from_error(&name, e))
}

fn load_model(path: &Path) -> std::result::Result<NeighborhoodModel, InputError> {
    let name = path.display().to_string();
    NeighborhoodModel::from_json(&read(path)?).map_err(|e| InputError::from_error(&name, e))
}

fn world(m: &NeighborhoodModel, path: &Path, w: &str) -> std::result::Result<usize, InputError> {
    m.world(w).map_err(|e| InputError::from_error(&path.display().to_string(), e))
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Powers { game, player, kind } => {
            let g = load_game(game)?;
            let players = match player {
                Some(p) => vec![*p],
                None => vec![Player::A, Player::B],
            };
            let mut out = serde_json::Map::new();
            out.insert("kind".into(), to_value(kind));
            for p in players {
                out.insert(p.to_string(), to_value(&powers_of(&g, p, *kind)));
            }
            Ok((0, Value::Object(out)))
        }
        Command::Equiv { g1, g2, relation } => {
            let (a, b) = (load_game(g1)?, load_game(g2)?);
            let v = game_equivalence(&a, &b, *relation).map_err(|e| InputError::from_error("games", e))?;
            Ok((code(v.verdict), to_value(&v)))
        }
        Command::Bisim { m1, w1, m2, w2, kind } => {
            let (a, b) = (load_model(m1)?, load_model(m2)?);
            let (u, v) = (world(&a, m1, w1)?, world(&b, m2, w2)?);
            let verdict = match kind {
                BisimKind::Power => power_bisimilar(&a, u, &b, v),
                BisimKind::Instantial => instantial_bisimilar(&a, u, &b, v),
            };
            Ok((code(verdict.verdict), to_value(&verdict)))
        }
        Command::Frame { model, kind } => {
            let report = validate_frame(&load_model(model)?, *kind);
            Ok((code(report.valid), to_value(&report)))
        }
        Command::Mc { model, formula } => {
            let m = load_model(model)?;
            let f = parse_formula(formula).map_err(|e| InputError::from_error("FORMULA", e.into()))?;
            let ext = model_check(&m, &f);
            let worlds: Vec<&str> = ext.iter().map(|w| m.worlds().label(w)).collect();
            let valid = ext == m.all();
            Ok((
                code(valid),
                json!({ "formula": f.to_string(), "worlds": worlds, "valid": valid }),
            ))
        }
        Command::Represent { families, verify } => {
            let name = families.display().to_string();
            let input = RepresentationInput::from_json(&read(families)?).map_err(|e| InputError::from_error(&name, e))?;
            if *verify {
                return match verify_roundtrip(&input) {
                    Ok(rt) => Ok((code(rt.ok()), to_value(&rt))),
                    Err(Error::IllegalFamilies(p)) => Ok((1, json!({ "legal": false, "conditions": [p.0, p.1] }))),
                    Err(e) => Err(InputError::from_error(&name, e)),
                };
            }
            match construct_game(&input) {
                Ok(g) => {
                    let columns: Vec<Value> = g
                        .triples()
                        .iter()
                        .enumerate()
                        .map(|(i, t)| {
                            json!({
                                "Z": input.outcomes().names(t.z),
                                "u": input.outcomes().label(t.u),
                                "j": t.j,
                                "outcomes": input.outcomes().names(g.column_outcomes(i)),
                            })
                        })
                        .collect();
                    Ok((
                        0,
                        json!({
                            "legal": true,
                            "mode": input.mode,
                            "b_strategies": columns,
                            "a_strategy_count": g.a_strategy_count().map(|c| c.to_string()),
                        }),
                    ))
                }
                Err(Error::IllegalFamilies(p)) => Ok((1, json!({ "legal": false, "conditions": [p.0, p.1] }))),
                Err(e) => Err(InputError::from_error(&name, e)),
            }
        }
        Command::Algebra {
            equation,
            equiv,
            samples,
            seed,
            max_depth,
            outcomes,
        } => {
            let eq = parse_equation(equation).map_err(|e| InputError::from_error("EQUATION", e))?;
            let cfg = SamplerConfig {
                samples: *samples,
                seed: *seed,
                max_depth: *max_depth,
                outcomes: *outcomes,
                ..SamplerConfig::default()
            };
            let r = check_equation(&eq, *equiv, &cfg).map_err(|e| InputError::from_error("EQUATION", e))?;
            Ok((code(r.holds_on_sample), to_value(&r)))
        }
        Command::Congruence {
            op,
            equiv,
            samples,
            seed,
        } => {
            let cfg = SamplerConfig {
                samples: *samples,
                seed: *seed,
                ..SamplerConfig::default()
            };
            let r = check_congruence(*op, *equiv, &cfg).map_err(|e| InputError::from_error("OP", e))?;
            Ok((code(r.congruent_on_sample), to_value(&r)))
        }
        Command::Axioms { samples, seed } => {
            let r = axiom_soundness_suite(*seed, *samples);
            Ok((code(r.ok()), to_value(&r)))
        }
        Command::Refute {
            formula,
            max_worlds,
            seed,
            budget,
        } => {
            let f = parse_formula(formula).map_err(|e| InputError::from_error("FORMULA", e.into()))?;
            let r = countermodel_search(&f, *max_worlds, *seed, *budget);
            Ok((code(!r.refuted()), to_value(&r)))
        }
    }
}
