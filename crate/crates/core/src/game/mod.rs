//! Finite extensive and strategic games, strategies and matches.

mod extensive;
mod json;
mod strategic;
mod strategy;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use extensive::{
    validate_game, Cell, ExtensiveGame, GameSpec, Node, NodeKind, Position, TreeSpec,
    ValidationReport, Violation, ViolationKind,
};
pub(crate) use strategy::odometer;
pub use json::{AnyGameFile, ExtensiveGameFile, StrategicGameFile};
pub use strategic::{strategic_to_extensive, to_strategic_form, StrategicGame, MAX_PROFILE_STRATEGIES};
pub use strategy::{
    enumerate_functional, enumerate_relational, enumerate_strategies, guided_matches, guided_outcomes,
    FunctionalStrategy, MoveRule, RelationalStrategy, Strategy,
};

/// One of the two players.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::A, Player::B];

    pub fn dual(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::A => "A",
            Player::B => "B",
        })
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Player::A),
            "B" | "b" => Ok(Player::B),
            other => Err(format!("unknown player `{other}` (expected A or B)")),
        }
    }
}

/// A node address: a finite sequence of child indices. The empty address is
/// the root.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Address(pub Vec<u32>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parent(&self) -> Option<Address> {
        let (_, init) = self.0.split_last()?;
        Some(Address(init.to_vec()))
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn child(&self, i: u32) -> Address {
        let mut v = self.0.clone();
        v.push(i);
        Address(v)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        other.0.starts_with(&self.0)
    }

    /// `prefix · self`.
    pub fn prefixed(&self, prefix: &Address) -> Address {
        let mut v = prefix.0.clone();
        v.extend_from_slice(&self.0);
        Address(v)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{step}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Address {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<const N: usize> From<[u32; N]> for Address {
    fn from(v: [u32; N]) -> Self {
        Address(v.to_vec())
    }
}
