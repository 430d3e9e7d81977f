//! Sample-based checking of game equations and congruence.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::dynamic::{seq_compose, DynamicGame};
use super::ops::{op_dual, op_plus, op_times};
use super::random::{random_game_with, small_games};
use super::term::{eval_dynamic, eval_static, Equation};
use crate::equivalence::{power_equivalent, semi_strongly_equivalent, strongly_power_equivalent, EquivalenceVerdict};
use crate::error::Result;
use crate::game::{ExtensiveGame, NodeKind, Player};
use crate::outcome::Outcomes;
use crate::powers::{powers_of, PowerFamily, PowerKind};

/// The game equivalence an equation or congruence is checked under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Equiv {
    /// Equal basic powers.
    Strong,
    /// Equal relational basic powers.
    Semi,
    /// Equal powers.
    Power,
}

impl std::str::FromStr for Equiv {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "strong" => Ok(Equiv::Strong),
            "semi" => Ok(Equiv::Semi),
            "power" => Ok(Equiv::Power),
            other => Err(format!("unknown equivalence `{other}`")),
        }
    }
}

impl Equiv {
    fn kind(self) -> PowerKind {
        match self {
            Equiv::Strong => PowerKind::Basic,
            Equiv::Semi => PowerKind::Relational,
            Equiv::Power => PowerKind::Plain,
        }
    }

    /// The families compared by this equivalence, for A then B.
    pub fn key(self, g: &ExtensiveGame) -> (PowerFamily, PowerFamily) {
        (powers_of(g, Player::A, self.kind()), powers_of(g, Player::B, self.kind()))
    }

    pub fn holds(self, g1: &ExtensiveGame, g2: &ExtensiveGame) -> bool {
        self.key(g1) == self.key(g2)
    }

    pub fn verdict(self, g1: &ExtensiveGame, g2: &ExtensiveGame) -> Result<EquivalenceVerdict> {
        match self {
            Equiv::Strong => strongly_power_equivalent(g1, g2),
            Equiv::Semi => semi_strongly_equivalent(g1, g2),
            Equiv::Power => power_equivalent(g1, g2),
        }
    }
}

/// Sampling parameters for equation and congruence checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplerConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_depth: usize,
    pub max_branch: usize,
    /// Size of the outcome set of ordinary games.
    pub outcomes: usize,
    /// Number of states of dynamic games.
    pub states: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            samples: 200,
            seed: 0,
            max_depth: 3,
            max_branch: 2,
            outcomes: 3,
            states: 2,
        }
    }
}

/// State names of dynamic games: `x`, `y`, `z`, `u`, `v`, `w`, then `s6`,
/// `s7`, ...
pub fn state_set(n: usize) -> Outcomes {
    const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    Outcomes::new((0..n).map(|i| NAMES.get(i).map_or_else(|| format!("s{i}"), |s| s.to_string())))
        .expect("distinct names")
}

/// Small dynamic games: for each state in turn and each small game, the
/// dynamic game playing it there and ending immediately everywhere else.
pub fn small_dynamic_games(states: &Outcomes) -> Vec<DynamicGame> {
    let small = small_games(states);
    let id = DynamicGame::identity(states);
    let mut out = Vec::new();
    for s in 0..states.len() {
        for g in &small {
            let mut games = id.games().to_vec();
            games[s] = g.clone();
            out.push(DynamicGame::new(states.clone(), games).expect("shared states"));
        }
    }
    out
}

/// Index tuples of length `k` below `n`, by increasing sum, then
/// lexicographically; at most `limit` of them.
fn diagonal_tuples(k: usize, n: usize, limit: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, n: usize, sum: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if k == 0 {
            if sum == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for i in 0..n.min(sum + 1) {
            prefix.push(i);
            rec(k - 1, n, sum - i, prefix, out, limit);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for sum in 0..=k * (n - 1) {
        rec(k, n, sum, &mut Vec::new(), &mut out, limit);
        if out.len() >= limit {
            break;
        }
    }
    out
}

fn random_dynamic<R: Rng>(rng: &mut R, states: &Outcomes, cfg: &SamplerConfig) -> DynamicGame {
    let games = (0..states.len())
        .map(|_| {
            let pi = rng.gen_bool(0.5);
            random_game_with(rng, cfg.max_depth, cfg.max_branch, states, pi)
        })
        .collect();
    DynamicGame::new(states.clone(), games).expect("shared states")
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationCounterexample {
    /// Index of the sample that first failed.
    pub sample: usize,
    /// The (shrunk) binding of every variable.
    pub binding: BTreeMap<String, serde_json::Value>,
    /// For dynamic games, the state where the two sides differ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub witness: EquivalenceVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationReport {
    pub equation: String,
    pub equivalence: Equiv,
    pub seed: u64,
    pub samples_tried: usize,
    pub holds_on_sample: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<EquationCounterexample>,
}

/// Evaluates both sides of `eq` over sampled bindings and compares them.
///
/// The first half of the samples runs through small games in a fixed
/// order; the rest are random games drawn from `cfg.seed`. A failing binding
/// is shrunk by replacing games with subgames or smaller small games while
/// the failure persists. Equations with `∘` are evaluated over dynamic games
/// and compared statewise.
pub fn check_equation(eq: &Equation, equiv: Equiv, cfg: &SamplerConfig) -> Result<EquationReport> {
    let vars: Vec<String> = eq.variables().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let report = |tried: usize, counterexample: Option<EquationCounterexample>| EquationReport {
        equation: eq.to_string(),
        equivalence: equiv,
        seed: cfg.seed,
        samples_tried: tried,
        holds_on_sample: counterexample.is_none(),
        counterexample,
    };
    if eq.is_dynamic() {
        let states = state_set(cfg.states);
        let small = small_dynamic_games(&states);
        let tuples = diagonal_tuples(vars.len(), small.len(), cfg.samples / 2);
        for i in 0..cfg.samples {
            let env: BTreeMap<String, DynamicGame> = match tuples.get(i) {
                Some(t) => vars.iter().cloned().zip(t.iter().map(|&k| small[k].clone())).collect(),
                None => vars.iter().map(|v| (v.clone(), random_dynamic(&mut rng, &states, cfg))).collect(),
            };
            if dynamic_failure(eq, equiv, &env)?.is_some() {
                let env = shrink_dynamic(eq, equiv, env)?;
                let (state, lhs, rhs) = dynamic_failure(eq, equiv, &env)?.expect("shrinking keeps the failure");
                return Ok(report(
                    i + 1,
                    Some(EquationCounterexample {
                        sample: i,
                        binding: env.iter().map(|(k, d)| (k.clone(), d.to_json())).collect(),
                        state: Some(states.label(state).to_string()),
                        witness: equiv.verdict(&lhs, &rhs)?,
                        lhs: lhs.to_json(),
                        rhs: rhs.to_json(),
                    }),
                ));
            }
        }
        return Ok(report(cfg.samples, None));
    }
    let o = Outcomes::numbered(cfg.outcomes);
    let small = small_games(&o);
    let tuples = diagonal_tuples(vars.len(), small.len(), cfg.samples / 2);
    for i in 0..cfg.samples {
        let env: BTreeMap<String, ExtensiveGame> = match tuples.get(i) {
            Some(t) => vars.iter().cloned().zip(t.iter().map(|&k| small[k].clone())).collect(),
            None => vars
                .iter()
                .map(|v| {
                    let pi = rng.gen_bool(0.5);
                    (v.clone(), random_game_with(&mut rng, cfg.max_depth, cfg.max_branch, &o, pi))
                })
                .collect(),
        };
        let (lhs, rhs) = (eval_static(&eq.lhs, &env)?, eval_static(&eq.rhs, &env)?);
        if !equiv.holds(&lhs, &rhs) {
            let env = shrink_static(eq, equiv, env, &small)?;
            let (lhs, rhs) = (eval_static(&eq.lhs, &env)?, eval_static(&eq.rhs, &env)?);
            return Ok(report(
                i + 1,
                Some(EquationCounterexample {
                    sample: i,
                    binding: env.iter().map(|(k, g)| (k.clone(), g.to_json())).collect(),
                    state: None,
                    witness: equiv.verdict(&lhs, &rhs)?,
                    lhs: lhs.to_json(),
                    rhs: rhs.to_json(),
                }),
            ));
        }
    }
    Ok(report(cfg.samples, None))
}

fn dynamic_failure(
    eq: &Equation,
    equiv: Equiv,
    env: &BTreeMap<String, DynamicGame>,
) -> Result<Option<(usize, ExtensiveGame, ExtensiveGame)>> {
    let (l, r) = (eval_dynamic(&eq.lhs, env)?, eval_dynamic(&eq.rhs, env)?);
    Ok((0..l.states().len())
        .find(|&s| !equiv.holds(l.game(s), r.game(s)))
        .map(|s| (s, l.game(s).clone(), r.game(s).clone())))
}

/// Subgames at the root's children, as games over the same outcomes.
fn subgames(g: &ExtensiveGame) -> Vec<ExtensiveGame> {
    match &g.node(g.root()).kind {
        NodeKind::Leaf { .. } => Vec::new(),
        NodeKind::Move { children, .. } => children
            .iter()
            .map(|&c| {
                let tree = super::ops::embed_with(g, c, "", false, &mut |_, o| {
                    crate::game::TreeSpec::leaf(g.outcomes().label(o))
                });
                ExtensiveGame::from_tree(g.outcomes().clone(), &tree).expect("subtree of a valid game")
            })
            .collect(),
    }
}

fn smaller_candidates(g: &ExtensiveGame, small: &[ExtensiveGame]) -> Vec<ExtensiveGame> {
    let mut out = subgames(g);
    out.extend(small.iter().filter(|s| s.nodes().len() < g.nodes().len()).cloned());
    out
}

fn shrink_static(
    eq: &Equation,
    equiv: Equiv,
    mut env: BTreeMap<String, ExtensiveGame>,
    small: &[ExtensiveGame],
) -> Result<BTreeMap<String, ExtensiveGame>> {
    'outer: loop {
        let vars: Vec<String> = env.keys().cloned().collect();
        for v in vars {
            for cand in smaller_candidates(&env[&v], small) {
                let mut trial = env.clone();
                trial.insert(v.clone(), cand);
                let (l, r) = (eval_static(&eq.lhs, &trial)?, eval_static(&eq.rhs, &trial)?);
                if !equiv.holds(&l, &r) {
                    env = trial;
                    continue 'outer;
                }
            }
        }
        return Ok(env);
    }
}

fn shrink_dynamic(
    eq: &Equation,
    equiv: Equiv,
    mut env: BTreeMap<String, DynamicGame>,
) -> Result<BTreeMap<String, DynamicGame>> {
    let Some(states) = env.values().next().map(|d| d.states().clone()) else {
        return Ok(env);
    };
    let small = small_games(&states);
    'outer: loop {
        let vars: Vec<String> = env.keys().cloned().collect();
        for v in vars {
            for s in 0..states.len() {
                for cand in smaller_candidates(env[&v].game(s), &small) {
                    let mut games = env[&v].games().to_vec();
                    games[s] = cand;
                    let mut trial = env.clone();
                    trial.insert(v.clone(), DynamicGame::new(states.clone(), games)?);
                    if dynamic_failure(eq, equiv, &trial)?.is_some() {
                        env = trial;
                        continue 'outer;
                    }
                }
            }
        }
        return Ok(env);
    }
}

/// A game operation whose compatibility with an equivalence is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Plus,
    Times,
    Dual,
    Compose,
}

impl std::str::FromStr for Op {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Op::Plus),
            "*" | "×" | "times" => Ok(Op::Times),
            "-" | "−" | "dual" => Ok(Op::Dual),
            "o" | "∘" | "compose" => Ok(Op::Compose),
            other => Err(format!("unknown operation `{other}`")),
        }
    }
}

/// Where the equivalent pair was plugged in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Position {
    /// `g op h`.
    Left,
    /// `h op g`.
    Right,
    /// `op g`.
    Unary,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceCounterexample {
    pub left: serde_json::Value,
    pub right: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub context: Option<serde_json::Value>,
    pub position: Position,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    pub composed_left: serde_json::Value,
    pub composed_right: serde_json::Value,
    pub witness: EquivalenceVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub op: Op,
    pub equivalence: Equiv,
    pub seed: u64,
    pub pairs_checked: usize,
    pub contexts_checked: usize,
    pub congruent_on_sample: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CongruenceCounterexample>,
}

/// Number of contexts tried per equivalent pair.
const CONTEXTS_PER_PAIR: usize = 24;

/// Looks for equivalent `g`, `g'` and a context `h` such that `g op h` and
/// `g' op h` (or `h op g`, `h op g'`, or `op g`, `op g'`) are not
/// equivalent.
///
/// Candidates are the small games (small dynamic games for `∘`) followed by
/// `cfg.samples` random ones. Equivalent, structurally different pairs are
/// visited with the later member ascending and the earlier one descending;
/// contexts are the small games followed by random ones. At most
/// `cfg.samples` pairs are examined.
pub fn check_congruence(op: Op, equiv: Equiv, cfg: &SamplerConfig) -> Result<CongruenceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = CongruenceReport {
        op,
        equivalence: equiv,
        seed: cfg.seed,
        pairs_checked: 0,
        contexts_checked: 0,
        congruent_on_sample: true,
        counterexample: None,
    };
    if op == Op::Compose {
        let states = state_set(cfg.states);
        let mut pool = small_dynamic_games(&states);
        let small_len = pool.len();
        for _ in 0..cfg.samples {
            pool.push(random_dynamic(&mut rng, &states, cfg));
        }
        let contexts: Vec<DynamicGame> = pool.iter().take(small_len.min(CONTEXTS_PER_PAIR)).cloned().collect();
        let keys: Vec<Vec<_>> = pool.iter().map(|d| d.games().iter().map(|g| equiv.key(g)).collect()).collect();
        for j in 0..pool.len() {
            for i in (0..j).rev() {
                if keys[i] != keys[j] || same_dynamic(&pool[i], &pool[j]) {
                    continue;
                }
                if report.pairs_checked >= cfg.samples {
                    return Ok(report);
                }
                report.pairs_checked += 1;
                for h in &contexts {
                    report.contexts_checked += 1;
                    for position in [Position::Left, Position::Right] {
                        let (a, b) = match position {
                            Position::Left => (seq_compose(&pool[i], h)?, seq_compose(&pool[j], h)?),
                            _ => (seq_compose(h, &pool[i])?, seq_compose(h, &pool[j])?),
                        };
                        if let Some(s) = (0..states.len()).find(|&s| !equiv.holds(a.game(s), b.game(s))) {
                            report.congruent_on_sample = false;
                            report.counterexample = Some(CongruenceCounterexample {
                                left: pool[i].to_json(),
                                right: pool[j].to_json(),
                                context: Some(h.to_json()),
                                position,
                                state: Some(states.label(s).to_string()),
                                witness: equiv.verdict(a.game(s), b.game(s))?,
                                composed_left: a.game(s).to_json(),
                                composed_right: b.game(s).to_json(),
                            });
                            return Ok(report);
                        }
                    }
                }
            }
        }
        return Ok(report);
    }

    let o = Outcomes::numbered(cfg.outcomes);
    let mut pool = small_games(&o);
    let small_len = pool.len();
    for _ in 0..cfg.samples {
        let pi = rng.gen_bool(0.5);
        pool.push(random_game_with(&mut rng, cfg.max_depth, cfg.max_branch, &o, pi));
    }
    let mut contexts: Vec<ExtensiveGame> = pool[..small_len].to_vec();
    contexts.extend(pool[small_len..].iter().take(CONTEXTS_PER_PAIR.saturating_sub(small_len)).cloned());
    let keys: Vec<_> = pool.iter().map(|g| equiv.key(g)).collect();
    for j in 0..pool.len() {
        for i in (0..j).rev() {
            if keys[i] != keys[j] || pool[i].same_structure(&pool[j]) {
                continue;
            }
            if report.pairs_checked >= cfg.samples {
                return Ok(report);
            }
            report.pairs_checked += 1;
            let mut trials: Vec<(Position, Option<&ExtensiveGame>)> = Vec::new();
            if op == Op::Dual {
                trials.push((Position::Unary, None));
            } else {
                for h in &contexts {
                    trials.push((Position::Left, Some(h)));
                    trials.push((Position::Right, Some(h)));
                }
            }
            for (position, h) in trials {
                report.contexts_checked += 1;
                let apply = |g: &ExtensiveGame| -> Result<ExtensiveGame> {
                    let f = match op {
                        Op::Plus => op_plus,
                        Op::Times => op_times,
                        _ => return Ok(op_dual(g)),
                    };
                    let h = h.expect("binary operation has a context");
                    match position {
                        Position::Left => f(g, h),
                        _ => f(h, g),
                    }
                };
                let (a, b) = (apply(&pool[i])?, apply(&pool[j])?);
                if !equiv.holds(&a, &b) {
                    report.congruent_on_sample = false;
                    report.counterexample = Some(CongruenceCounterexample {
                        left: pool[i].to_json(),
                        right: pool[j].to_json(),
                        context: h.map(ExtensiveGame::to_json),
                        position,
                        state: None,
                        witness: equiv.verdict(&a, &b)?,
                        composed_left: a.to_json(),
                        composed_right: b.to_json(),
                    });
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

fn same_dynamic(a: &DynamicGame, b: &DynamicGame) -> bool {
    a.games().iter().zip(b.games()).all(|(x, y)| x.same_structure(y))
}
