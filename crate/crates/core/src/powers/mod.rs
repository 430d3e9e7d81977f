//! Powers, basic powers and relational basic powers of games, and the
//! conditions that characterize them.
//!
//! A *power* of a player is a set of outcomes some strategy forces; a *basic
//! power* is the exact outcome set of one functional strategy; a *relational
//! basic power* is the exact outcome set of a relational strategy, one that
//! may leave several moves open at a node.
//!
//! For extensive games the families are computed compositionally over the
//! tree. Only the player's own information cells with more than one member
//! couple choices across subtrees, so those cells are enumerated explicitly
//! and everything else is folded bottom-up.

mod conditions;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ExtensiveGame, NodeKind, Player, StrategicGame};
use crate::outcome::{nonempty_subsets, OutcomeSet, Outcomes};

pub use conditions::{check_conditions, egli_milner, Check, ConditionProfile, Witness};

/// A family of subsets of an outcome set, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerFamily {
    outcomes: Outcomes,
    members: BTreeSet<OutcomeSet>,
}

impl PowerFamily {
    pub fn new<I: IntoIterator<Item = OutcomeSet>>(outcomes: Outcomes, members: I) -> Result<Self> {
        let full = outcomes.full();
        let members: BTreeSet<OutcomeSet> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !m.is_subset(full)) {
            return Err(Error::UnknownOutcome(format!("{bad:?}")));
        }
        Ok(PowerFamily { outcomes, members })
    }

    pub fn empty(outcomes: Outcomes) -> Self {
        PowerFamily {
            outcomes,
            members: BTreeSet::new(),
        }
    }

    pub fn from_labels<S: AsRef<str>>(outcomes: Outcomes, members: &[&[S]]) -> Result<Self> {
        let sets = members
            .iter()
            .map(|m| outcomes.set(m))
            .collect::<Result<Vec<_>>>()?;
        PowerFamily::new(outcomes, sets)
    }

    pub fn outcomes(&self) -> &Outcomes {
        &self.outcomes
    }

    pub fn members(&self) -> &BTreeSet<OutcomeSet> {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = OutcomeSet> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, set: OutcomeSet) -> bool {
        self.members.contains(&set)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subfamily_of(&self, other: &PowerFamily) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Members of exactly one of the two families, canonically ordered.
    pub fn symmetric_difference(&self, other: &PowerFamily) -> Vec<OutcomeSet> {
        self.members
            .symmetric_difference(&other.members)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn member_labels(&self) -> Vec<Vec<String>> {
        self.iter().map(|m| self.outcomes.names(m)).collect()
    }
}

impl fmt::Display for PowerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, m) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&self.outcomes.show(m))?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct PowerFamilyFile {
    outcomes: Vec<String>,
    members: Vec<Vec<String>>,
}

impl Serialize for PowerFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PowerFamilyFile {
            outcomes: self.outcomes.labels().to_vec(),
            members: self.member_labels(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PowerFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let file = PowerFamilyFile::deserialize(d)?;
        let outcomes = Outcomes::new(file.outcomes).map_err(serde::de::Error::custom)?;
        let refs: Vec<&[String]> = file.members.iter().map(Vec::as_slice).collect();
        PowerFamily::from_labels(outcomes, &refs).map_err(serde::de::Error::custom)
    }
}

/// Smallest family containing `f` and closed under supersets within `O`.
pub fn upward_closure(f: &PowerFamily) -> PowerFamily {
    let full = f.outcomes.full();
    let mut members = BTreeSet::new();
    for m in f.iter() {
        if members.contains(&m) {
            continue;
        }
        members.extend(m.supersets_within(full));
    }
    PowerFamily {
        outcomes: f.outcomes.clone(),
        members,
    }
}

/// Smallest family containing `f` and closed under unions of nonempty
/// subfamilies.
pub fn union_closure(f: &PowerFamily) -> PowerFamily {
    let mut members: BTreeSet<OutcomeSet> = f.members.clone();
    let mut frontier: Vec<OutcomeSet> = members.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        let fresh: Vec<OutcomeSet> = members
            .iter()
            .map(|&y| x.union(y))
            .filter(|u| !members.contains(u))
            .collect();
        for u in fresh {
            if members.insert(u) {
                frontier.push(u);
            }
        }
    }
    PowerFamily {
        outcomes: f.outcomes.clone(),
        members,
    }
}

/// Games whose powers can be computed.
pub trait PowerSource {
    fn outcomes(&self) -> &Outcomes;

    /// Exact outcome sets of the player's functional strategies.
    fn basic_powers(&self, player: Player) -> PowerFamily;

    /// Exact outcome sets of the player's relational strategies.
    fn relational_basic_powers(&self, player: Player) -> PowerFamily;

    /// Sets of outcomes the player can force.
    fn powers(&self, player: Player) -> PowerFamily {
        upward_closure(&self.basic_powers(player))
    }
}

/// Which of the three power notions to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Plain,
    Basic,
    Relational,
}

impl std::str::FromStr for PowerKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "plain" => Ok(PowerKind::Plain),
            "basic" => Ok(PowerKind::Basic),
            "relational" => Ok(PowerKind::Relational),
            other => Err(format!("unknown power kind `{other}`")),
        }
    }
}

pub fn powers_of<G: PowerSource + ?Sized>(game: &G, player: Player, kind: PowerKind) -> PowerFamily {
    match kind {
        PowerKind::Plain => game.powers(player),
        PowerKind::Basic => game.basic_powers(player),
        PowerKind::Relational => game.relational_basic_powers(player),
    }
}

impl PowerSource for ExtensiveGame {
    fn outcomes(&self) -> &Outcomes {
        ExtensiveGame::outcomes(self)
    }

    fn basic_powers(&self, player: Player) -> PowerFamily {
        strategy_outcome_sets(self, player, false)
    }

    fn relational_basic_powers(&self, player: Player) -> PowerFamily {
        strategy_outcome_sets(self, player, true)
    }
}

impl PowerSource for StrategicGame {
    fn outcomes(&self) -> &Outcomes {
        StrategicGame::outcomes(self)
    }

    /// Row outcome sets for A, column outcome sets for B.
    fn basic_powers(&self, player: Player) -> PowerFamily {
        PowerFamily {
            outcomes: self.outcomes().clone(),
            members: (0..self.strategy_count(player))
                .map(|i| self.strategy_outcomes(player, i))
                .collect(),
        }
    }

    /// In the canonical realization a player's relational strategy selects a
    /// nonempty set of rows (columns), so these are unions of basic powers.
    fn relational_basic_powers(&self, player: Player) -> PowerFamily {
        union_closure(&self.basic_powers(player))
    }
}

fn product_union(families: &[&HashSet<OutcomeSet>]) -> HashSet<OutcomeSet> {
    let mut acc: HashSet<OutcomeSet> = HashSet::from([OutcomeSet::EMPTY]);
    for fam in families {
        let mut next = HashSet::with_capacity(acc.len() * fam.len());
        for &a in &acc {
            for &b in fam.iter() {
                next.insert(a.union(b));
            }
        }
        acc = next;
    }
    acc
}

fn strategy_outcome_sets(game: &ExtensiveGame, player: Player, relational: bool) -> PowerFamily {
    let shared: Vec<usize> = game
        .cells_of(player)
        .filter(|(_, c)| c.members.len() > 1)
        .map(|(i, _)| i)
        .collect();
    let options: Vec<Vec<OutcomeSet>> = shared
        .iter()
        .map(|&ci| {
            let arity = game.cells()[ci].arity;
            if relational {
                nonempty_subsets(OutcomeSet::full(arity))
            } else {
                (0..arity).map(OutcomeSet::singleton).collect()
            }
        })
        .collect();
    let mut fixed: Vec<Option<OutcomeSet>> = vec![None; game.cells().len()];
    let mut members = BTreeSet::new();
    let radices = options.iter().map(Vec::len).collect();
    for digits in crate::game::odometer(radices) {
        for ((&ci, opts), d) in shared.iter().zip(&options).zip(digits) {
            fixed[ci] = Some(opts[d]);
        }
        members.extend(fold(game, player, relational, &fixed, game.root()));
    }
    PowerFamily {
        outcomes: game.outcomes().clone(),
        members,
    }
}

fn fold(
    game: &ExtensiveGame,
    player: Player,
    relational: bool,
    fixed: &[Option<OutcomeSet>],
    at: usize,
) -> HashSet<OutcomeSet> {
    match &game.node(at).kind {
        NodeKind::Leaf { outcome } => HashSet::from([OutcomeSet::singleton(*outcome)]),
        NodeKind::Move {
            player: mover,
            cell,
            children,
        } => {
            let kids: Vec<HashSet<OutcomeSet>> = children
                .iter()
                .map(|&c| fold(game, player, relational, fixed, c))
                .collect();
            let select = |moves: OutcomeSet| -> HashSet<OutcomeSet> {
                let chosen: Vec<&HashSet<OutcomeSet>> = moves.iter().map(|i| &kids[i]).collect();
                product_union(&chosen)
            };
            let all_moves = OutcomeSet::full(children.len());
            if *mover != player {
                select(all_moves)
            } else if let Some(moves) = fixed[*cell] {
                select(moves)
            } else if !relational {
                kids.iter().flatten().copied().collect()
            } else {
                nonempty_subsets(all_moves)
                    .into_iter()
                    .flat_map(select)
                    .collect()
            }
        }
    }
}
