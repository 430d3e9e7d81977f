use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ops::{embed_tree, embed_with, op_dual, op_plus, op_times};
use crate::error::{Error, Result};
use crate::game::{ExtensiveGame, ExtensiveGameFile, Player};
use crate::outcome::{OutcomeSet, Outcomes};
use crate::powers::{union_closure, PowerFamily, PowerSource};

/// A game over the state set for every state.
#[derive(Clone, Debug)]
pub struct DynamicGame {
    states: Outcomes,
    games: Vec<ExtensiveGame>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DynamicGameFile {
    states: Vec<String>,
    games: BTreeMap<String, ExtensiveGameFile>,
}

impl DynamicGame {
    /// `games[i]` is played at state `i`; each must have the states as its
    /// outcome set.
    pub fn new(states: Outcomes, games: Vec<ExtensiveGame>) -> Result<Self> {
        if games.len() != states.len() {
            return Err(Error::Term(format!(
                "{} games given for {} states",
                games.len(),
                states.len()
            )));
        }
        for g in &games {
            states.ensure_same(g.outcomes())?;
        }
        Ok(DynamicGame { states, games })
    }

    /// Every state ends immediately in itself.
    pub fn identity(states: &Outcomes) -> Self {
        let games = states
            .labels()
            .iter()
            .map(|s| ExtensiveGame::leaf(states, s).expect("state is an outcome"))
            .collect();
        DynamicGame {
            states: states.clone(),
            games,
        }
    }

    pub fn states(&self) -> &Outcomes {
        &self.states
    }

    pub fn games(&self) -> &[ExtensiveGame] {
        &self.games
    }

    pub fn game(&self, state: usize) -> &ExtensiveGame {
        &self.games[state]
    }

    /// Applies a game operation statewise.
    pub fn map(&self, f: impl Fn(&ExtensiveGame) -> ExtensiveGame) -> Self {
        DynamicGame {
            states: self.states.clone(),
            games: self.games.iter().map(f).collect(),
        }
    }

    /// Combines two dynamic games statewise.
    pub fn zip(
        &self,
        other: &DynamicGame,
        f: impl Fn(&ExtensiveGame, &ExtensiveGame) -> Result<ExtensiveGame>,
    ) -> Result<Self> {
        self.states.ensure_same(&other.states)?;
        let games = self
            .games
            .iter()
            .zip(&other.games)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(DynamicGame {
            states: self.states.clone(),
            games,
        })
    }

    pub fn plus(&self, other: &DynamicGame) -> Result<Self> {
        self.zip(other, op_plus)
    }

    pub fn times(&self, other: &DynamicGame) -> Result<Self> {
        self.zip(other, op_times)
    }

    pub fn dual(&self) -> Self {
        self.map(op_dual)
    }

    /// Statewise relational basic powers of `player`.
    pub fn relational_power_relation(&self, player: Player) -> Vec<PowerFamily> {
        self.games.iter().map(|g| g.relational_basic_powers(player)).collect()
    }

    /// `{"states": [...], "games": {state: game, ...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DynamicGameFile = serde_json::from_str(text)?;
        let states = Outcomes::new(file.states)?;
        let mut games = Vec::with_capacity(states.len());
        for s in states.labels() {
            let g = file
                .games
                .get(s)
                .ok_or_else(|| Error::Term(format!("no game for state `{s}`")))?;
            games.push(g.to_game()?);
        }
        if let Some(extra) = file.games.keys().find(|k| states.index_of(k).is_none()) {
            return Err(Error::UnknownOutcome(extra.clone()));
        }
        DynamicGame::new(states, games)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let file = DynamicGameFile {
            states: self.states.labels().to_vec(),
            games: self
                .states
                .labels()
                .iter()
                .zip(&self.games)
                .map(|(s, g)| (s.clone(), ExtensiveGameFile::from_game(g)))
                .collect(),
        };
        serde_json::to_value(file).expect("serializable")
    }
}

/// `(d1 ∘ d2)(u)`: `d1(u)` with every leaf `l` replaced by a fresh copy of
/// `d2(o(l))`. Shared cells of different copies stay apart.
pub fn seq_compose(d1: &DynamicGame, d2: &DynamicGame) -> Result<DynamicGame> {
    d1.states.ensure_same(&d2.states)?;
    let games = d1
        .games
        .iter()
        .map(|g| {
            let tree = embed_with(g, g.root(), "0.", false, &mut |leaf, o| {
                embed_tree(&d2.games[o], &format!("{leaf}."), false)
            });
            ExtensiveGame::from_tree(d1.states.clone(), &tree)
        })
        .collect::<Result<_>>()?;
    Ok(DynamicGame {
        states: d1.states.clone(),
        games,
    })
}

/// The sets `⋃F` where `Y ∈ r1[u]` and `F` is a family of members of
/// `r2[y]` (for `y ∈ Y`) holding at least one member for each `y ∈ Y`.
///
/// Since members chosen for the same `y` may be merged, these are exactly
/// the unions `⋃_{y ∈ Y} U_y` with each `U_y` a union of a nonempty subfamily
/// of `r2[y]`.
pub fn composed_power_relation(r1: &[PowerFamily], r2: &[PowerFamily], u: usize) -> PowerFamily {
    let worlds = r1[u].outcomes().clone();
    let closed: Vec<PowerFamily> = r2.iter().map(union_closure).collect();
    let mut out = BTreeSet::new();
    for y_set in r1[u].iter() {
        let mut acc: BTreeSet<OutcomeSet> = BTreeSet::from([OutcomeSet::EMPTY]);
        for y in y_set.iter() {
            acc = acc
                .iter()
                .flat_map(|&a| closed[y].iter().map(move |b| a.union(b)))
                .collect();
        }
        out.extend(acc);
    }
    PowerFamily::new(worlds, out).expect("world sets")
}
