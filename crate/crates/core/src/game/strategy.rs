use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::extensive::{ExtensiveGame, NodeId, NodeKind};
use super::{Address, Player};
use crate::error::{Error, Result};
use crate::outcome::{nonempty_subsets, OutcomeSet};

/// Anything that constrains one player's moves.
pub trait MoveRule {
    fn owner(&self) -> Player;
    /// Whether the owner may move from the node at `at` to its child `child`.
    fn allows(&self, at: &Address, child: usize) -> bool;
}

/// A functional strategy: one child index per owned internal node, constant
/// on information cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctionalStrategy {
    pub owner: Player,
    pub choice: BTreeMap<Address, usize>,
}

/// A relational strategy: a nonempty set of child indices per owned internal
/// node, constant on information cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationalStrategy {
    pub owner: Player,
    pub choice: BTreeMap<Address, BTreeSet<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Strategy {
    Functional(FunctionalStrategy),
    Relational(RelationalStrategy),
}

impl MoveRule for FunctionalStrategy {
    fn owner(&self) -> Player {
        self.owner
    }

    fn allows(&self, at: &Address, child: usize) -> bool {
        self.choice.get(at) == Some(&child)
    }
}

impl MoveRule for RelationalStrategy {
    fn owner(&self) -> Player {
        self.owner
    }

    fn allows(&self, at: &Address, child: usize) -> bool {
        self.choice.get(at).is_some_and(|s| s.contains(&child))
    }
}

impl MoveRule for Strategy {
    fn owner(&self) -> Player {
        match self {
            Strategy::Functional(s) => s.owner,
            Strategy::Relational(s) => s.owner,
        }
    }

    fn allows(&self, at: &Address, child: usize) -> bool {
        match self {
            Strategy::Functional(s) => s.allows(at, child),
            Strategy::Relational(s) => s.allows(at, child),
        }
    }
}

impl FunctionalStrategy {
    /// Compact label such as `ε=0 1=1`, or `-` for the empty strategy.
    pub fn label(&self) -> String {
        if self.choice.is_empty() {
            return "-".to_string();
        }
        self.choice
            .iter()
            .map(|(a, c)| format!("{a}={c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Checks the strategy against `game`.
    pub fn check(&self, game: &ExtensiveGame) -> Result<()> {
        let as_sets: BTreeMap<Address, BTreeSet<usize>> = self
            .choice
            .iter()
            .map(|(a, c)| (a.clone(), BTreeSet::from([*c])))
            .collect();
        check_choice_map(game, self.owner, &as_sets)
    }

    pub fn as_relational(&self) -> RelationalStrategy {
        RelationalStrategy {
            owner: self.owner,
            choice: self
                .choice
                .iter()
                .map(|(a, c)| (a.clone(), BTreeSet::from([*c])))
                .collect(),
        }
    }
}

impl RelationalStrategy {
    pub fn check(&self, game: &ExtensiveGame) -> Result<()> {
        check_choice_map(game, self.owner, &self.choice)
    }

    /// The strategy allowing every move everywhere.
    pub fn full(game: &ExtensiveGame, owner: Player) -> Self {
        let mut choice = BTreeMap::new();
        for (_, cell) in game.cells_of(owner) {
            for &m in &cell.members {
                choice.insert(game.node(m).address.clone(), (0..cell.arity).collect());
            }
        }
        RelationalStrategy { owner, choice }
    }
}

fn check_choice_map(
    game: &ExtensiveGame,
    owner: Player,
    choice: &BTreeMap<Address, BTreeSet<usize>>,
) -> Result<()> {
    let mut expected = 0;
    for (_, cell) in game.cells_of(owner) {
        let mut first: Option<&BTreeSet<usize>> = None;
        for &m in &cell.members {
            expected += 1;
            let addr = &game.node(m).address;
            let set = choice
                .get(addr)
                .ok_or_else(|| Error::InvalidStrategy(format!("no choice at {addr}")))?;
            if set.is_empty() {
                return Err(Error::InvalidStrategy(format!("empty choice at {addr}")));
            }
            if let Some(&c) = set.iter().find(|&&c| c >= cell.arity) {
                return Err(Error::InvalidStrategy(format!("{addr} has no child {c}")));
            }
            match first {
                None => first = Some(set),
                Some(f) if f != set => {
                    return Err(Error::InvalidStrategy(format!(
                        "choice at {addr} differs within its information cell"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    if choice.len() != expected {
        return Err(Error::InvalidStrategy(format!(
            "choice defined on {} nodes, {owner} owns {expected}",
            choice.len()
        )));
    }
    Ok(())
}

/// Mixed-radix counter whose first digit varies fastest.
pub(crate) fn odometer(radices: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    let mut current = if radices.contains(&0) {
        None
    } else {
        Some(vec![0; radices.len()])
    };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut done = true;
        if let Some(cur) = current.as_mut() {
            for (digit, &radix) in cur.iter_mut().zip(&radices) {
                *digit += 1;
                if *digit < radix {
                    done = false;
                    break;
                }
                *digit = 0;
            }
        }
        if done {
            current = None;
        }
        Some(out)
    })
}

/// All functional strategies of `player`, in canonical order: cells ordered
/// by their first address, the choice at the earliest cell varying fastest,
/// child indices ascending.
pub fn enumerate_functional(
    game: &ExtensiveGame,
    player: Player,
) -> impl Iterator<Item = FunctionalStrategy> + '_ {
    let cells: Vec<_> = game.cells_of(player).map(|(_, c)| c).collect();
    let radices = cells.iter().map(|c| c.arity).collect();
    odometer(radices).map(move |digits| {
        let mut choice = BTreeMap::new();
        for (cell, d) in cells.iter().zip(digits) {
            for &m in &cell.members {
                choice.insert(game.node(m).address.clone(), d);
            }
        }
        FunctionalStrategy {
            owner: player,
            choice,
        }
    })
}

/// All relational strategies of `player`, ordered like
/// [`enumerate_functional`] with move sets in canonical set order.
pub fn enumerate_relational(
    game: &ExtensiveGame,
    player: Player,
) -> impl Iterator<Item = RelationalStrategy> + '_ {
    let cells: Vec<_> = game.cells_of(player).map(|(_, c)| c).collect();
    let options: Vec<Vec<OutcomeSet>> = cells
        .iter()
        .map(|c| nonempty_subsets(OutcomeSet::full(c.arity)))
        .collect();
    let radices = options.iter().map(Vec::len).collect();
    odometer(radices).map(move |digits| {
        let mut choice = BTreeMap::new();
        for ((cell, opts), d) in cells.iter().zip(&options).zip(digits) {
            let moves: BTreeSet<usize> = opts[d].iter().collect();
            for &m in &cell.members {
                choice.insert(game.node(m).address.clone(), moves.clone());
            }
        }
        RelationalStrategy {
            owner: player,
            choice,
        }
    })
}

pub fn enumerate_strategies(game: &ExtensiveGame, player: Player, relational: bool) -> Vec<Strategy> {
    if relational {
        enumerate_relational(game, player)
            .map(Strategy::Relational)
            .collect()
    } else {
        enumerate_functional(game, player)
            .map(Strategy::Functional)
            .collect()
    }
}

/// Leaf addresses of the maximal branches guided by `rule`, in canonical
/// order.
pub fn guided_matches<R: MoveRule + ?Sized>(game: &ExtensiveGame, rule: &R) -> Vec<Address> {
    let mut out = Vec::new();
    walk(game, rule, game.root(), &mut |leaf| {
        out.push(game.node(leaf).address.clone())
    });
    out
}

/// Outcomes of the maximal branches guided by `rule`.
pub fn guided_outcomes<R: MoveRule + ?Sized>(game: &ExtensiveGame, rule: &R) -> OutcomeSet {
    let mut set = OutcomeSet::EMPTY;
    walk(game, rule, game.root(), &mut |leaf| {
        if let NodeKind::Leaf { outcome } = game.node(leaf).kind {
            set.insert(outcome);
        }
    });
    set
}

fn walk<R: MoveRule + ?Sized>(
    game: &ExtensiveGame,
    rule: &R,
    at: NodeId,
    visit: &mut dyn FnMut(NodeId),
) {
    let node = game.node(at);
    match &node.kind {
        NodeKind::Leaf { .. } => visit(at),
        NodeKind::Move {
            player, children, ..
        } => {
            for (i, &c) in children.iter().enumerate() {
                if *player != rule.owner() || rule.allows(&node.address, i) {
                    walk(game, rule, c, visit);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::TreeSpec;
    use crate::outcome::Outcomes;

    fn comp_left() -> ExtensiveGame {
        ExtensiveGame::from_tree(
            Outcomes::new(["x", "y"]).unwrap(),
            &TreeSpec::a(vec![TreeSpec::b(vec![
                TreeSpec::leaf("x"),
                TreeSpec::leaf("y"),
            ])]),
        )
        .unwrap()
    }

    fn comp_right() -> ExtensiveGame {
        let bxy = || TreeSpec::b(vec![TreeSpec::leaf("x"), TreeSpec::leaf("y")]);
        ExtensiveGame::from_tree(
            Outcomes::new(["x", "y"]).unwrap(),
            &TreeSpec::a(vec![bxy(), bxy()]),
        )
        .unwrap()
    }

    #[test]
    fn odometer_first_digit_fastest() {
        let seq: Vec<Vec<usize>> = odometer(vec![2, 3]).collect();
        assert_eq!(seq.len(), 6);
        assert_eq!(seq[0], vec![0, 0]);
        assert_eq!(seq[1], vec![1, 0]);
        assert_eq!(seq[2], vec![0, 1]);
        assert_eq!(odometer(vec![]).count(), 1);
    }

    #[test]
    fn strategy_counts_on_composition_pair_right() {
        let g = comp_right();
        assert_eq!(enumerate_strategies(&g, Player::B, false).len(), 4);
        assert_eq!(enumerate_strategies(&g, Player::B, true).len(), 9);
        assert_eq!(enumerate_strategies(&g, Player::A, false).len(), 2);
    }

    #[test]
    fn player_without_nodes_has_one_empty_strategy() {
        let g = ExtensiveGame::from_tree(
            Outcomes::new(["x", "y"]).unwrap(),
            &TreeSpec::a(vec![TreeSpec::leaf("x"), TreeSpec::leaf("y")]),
        )
        .unwrap();
        let all = enumerate_strategies(&g, Player::B, false);
        assert_eq!(all.len(), 1);
        match &all[0] {
            Strategy::Functional(s) => {
                assert!(s.choice.is_empty());
                assert_eq!(s.label(), "-");
            }
            _ => unreachable!(),
        }
        assert_eq!(enumerate_strategies(&g, Player::B, true).len(), 1);
    }

    #[test]
    fn guided_matches_follow_the_strategy() {
        let g = comp_left();
        let s = FunctionalStrategy {
            owner: Player::B,
            choice: BTreeMap::from([(Address::from([0]), 0)]),
        };
        s.check(&g).unwrap();
        assert_eq!(guided_matches(&g, &s), vec![Address::from([0, 0])]);
        let full = RelationalStrategy::full(&g, Player::B);
        assert_eq!(guided_matches(&g, &full).len(), 2);
    }

    #[test]
    fn malformed_strategies_are_rejected() {
        let g = comp_right();
        let short = FunctionalStrategy {
            owner: Player::B,
            choice: BTreeMap::from([(Address::from([0]), 0)]),
        };
        assert!(short.check(&g).is_err());
        let bad_child = FunctionalStrategy {
            owner: Player::B,
            choice: BTreeMap::from([(Address::from([0]), 0), (Address::from([1]), 2)]),
        };
        assert!(bad_child.check(&g).is_err());
        let empty = RelationalStrategy {
            owner: Player::B,
            choice: BTreeMap::from([
                (Address::from([0]), BTreeSet::new()),
                (Address::from([1]), BTreeSet::from([0])),
            ]),
        };
        assert!(empty.check(&g).is_err());
    }

    #[test]
    fn strategies_are_constant_on_cells() {
        let bxy = || TreeSpec::b(vec![TreeSpec::leaf("x"), TreeSpec::leaf("y")]).info("h");
        let g = ExtensiveGame::from_tree(
            Outcomes::new(["x", "y"]).unwrap(),
            &TreeSpec::a(vec![bxy(), bxy()]),
        )
        .unwrap();
        let all: Vec<_> = enumerate_functional(&g, Player::B).collect();
        assert_eq!(all.len(), 2);
        for s in &all {
            s.check(&g).unwrap();
        }
        let split = FunctionalStrategy {
            owner: Player::B,
            choice: BTreeMap::from([(Address::from([0]), 0), (Address::from([1]), 1)]),
        };
        assert!(split.check(&g).is_err());
    }
}
