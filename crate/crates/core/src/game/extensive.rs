use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Address, Player};
use crate::error::{Error, Result};
use crate::outcome::Outcomes;

/// What sits at one node address of an unvalidated game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Position {
    Leaf { outcome: String },
    /// An internal node. `info` names its information cell; `None` means a
    /// singleton cell.
    Move { player: Player, info: Option<String> },
}

/// Nested description of a game tree, mirroring the JSON game format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeSpec {
    Leaf(String),
    Move {
        player: Player,
        info: Option<String>,
        children: Vec<TreeSpec>,
    },
}

impl TreeSpec {
    pub fn leaf(outcome: impl Into<String>) -> Self {
        TreeSpec::Leaf(outcome.into())
    }

    pub fn node(player: Player, children: Vec<TreeSpec>) -> Self {
        TreeSpec::Move {
            player,
            info: None,
            children,
        }
    }

    pub fn a(children: Vec<TreeSpec>) -> Self {
        Self::node(Player::A, children)
    }

    pub fn b(children: Vec<TreeSpec>) -> Self {
        Self::node(Player::B, children)
    }

    /// Puts this node into the named information cell.
    pub fn info(self, cell: impl Into<String>) -> Self {
        match self {
            TreeSpec::Move {
                player, children, ..
            } => TreeSpec::Move {
                player,
                info: Some(cell.into()),
                children,
            },
            leaf => leaf,
        }
    }

    fn flatten_into(&self, at: Address, out: &mut BTreeMap<Address, Position>) {
        match self {
            TreeSpec::Leaf(o) => {
                out.insert(at, Position::Leaf { outcome: o.clone() });
            }
            TreeSpec::Move {
                player,
                info,
                children,
            } => {
                for (i, c) in children.iter().enumerate() {
                    c.flatten_into(at.child(i as u32), out);
                }
                out.insert(
                    at,
                    Position::Move {
                        player: *player,
                        info: info.clone(),
                    },
                );
            }
        }
    }
}

/// An unvalidated game: an outcome set plus a map from node addresses to
/// positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub outcomes: Outcomes,
    pub positions: BTreeMap<Address, Position>,
}

impl GameSpec {
    pub fn from_tree(outcomes: Outcomes, tree: &TreeSpec) -> Self {
        let mut positions = BTreeMap::new();
        tree.flatten_into(Address::root(), &mut positions);
        GameSpec {
            outcomes,
            positions,
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_game(self)
    }

    pub fn build(&self) -> Result<ExtensiveGame> {
        ExtensiveGame::from_spec(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    MissingRoot,
    PrefixClosure,
    SiblingDownwardClosure,
    LeafWithChildren,
    MoveWithoutChildren,
    UnknownOutcome,
    CellMixedPlayers,
    CellMixedArity,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::MissingRoot => "missing-root",
            ViolationKind::PrefixClosure => "prefix-closure",
            ViolationKind::SiblingDownwardClosure => "sibling-downward-closure",
            ViolationKind::LeafWithChildren => "leaf-with-children",
            ViolationKind::MoveWithoutChildren => "move-without-children",
            ViolationKind::UnknownOutcome => "unknown-outcome",
            ViolationKind::CellMixedPlayers => "cell-mixed-players",
            ViolationKind::CellMixedArity => "cell-mixed-arity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub nodes: Vec<Address>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ", self.kind)?;
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// The list of violated tree and game invariants; empty iff the game is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, kind: ViolationKind, nodes: Vec<Address>) {
        self.violations.push(Violation { kind, nodes });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every tree and game invariant of `spec`.
pub fn validate_game(spec: &GameSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let pos = &spec.positions;
    if !pos.contains_key(&Address::root()) {
        report.push(ViolationKind::MissingRoot, vec![Address::root()]);
    }
    let mut child_count: BTreeMap<&Address, usize> = BTreeMap::new();
    for addr in pos.keys() {
        if let Some(parent) = addr.parent() {
            if !pos.contains_key(&parent) {
                report.push(ViolationKind::PrefixClosure, vec![addr.clone()]);
            }
            let j = addr.last().expect("non-root");
            if j > 0 {
                let mut sib = parent.clone();
                sib.0.push(j - 1);
                if !pos.contains_key(&sib) {
                    report.push(ViolationKind::SiblingDownwardClosure, vec![addr.clone()]);
                }
            }
            if let Some((paddr, _)) = pos.get_key_value(&parent) {
                *child_count.entry(paddr).or_default() += 1;
            }
        }
    }
    // cells: name -> (players, arities, members)
    let mut cells: BTreeMap<&str, Vec<(&Address, Player, usize)>> = BTreeMap::new();
    for (addr, p) in pos {
        let kids = child_count.get(addr).copied().unwrap_or(0);
        match p {
            Position::Leaf { outcome } => {
                if kids > 0 {
                    report.push(ViolationKind::LeafWithChildren, vec![addr.clone()]);
                }
                if spec.outcomes.index_of(outcome).is_none() {
                    report.push(ViolationKind::UnknownOutcome, vec![addr.clone()]);
                }
            }
            Position::Move { player, info } => {
                if kids == 0 {
                    report.push(ViolationKind::MoveWithoutChildren, vec![addr.clone()]);
                }
                if let Some(name) = info {
                    cells.entry(name).or_default().push((addr, *player, kids));
                }
            }
        }
    }
    for members in cells.values() {
        let (_, p0, k0) = members[0];
        if members.iter().any(|&(_, p, _)| p != p0) {
            report.push(
                ViolationKind::CellMixedPlayers,
                members.iter().map(|m| m.0.clone()).collect(),
            );
        }
        if members.iter().any(|&(_, _, k)| k != k0) {
            report.push(
                ViolationKind::CellMixedArity,
                members.iter().map(|m| m.0.clone()).collect(),
            );
        }
    }
    report
}

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf {
        outcome: usize,
    },
    Move {
        player: Player,
        cell: usize,
        children: Vec<NodeId>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub address: Address,
    pub kind: NodeKind,
}

/// An information cell: nodes of one player with equal arity that the player
/// cannot tell apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub player: Player,
    pub arity: usize,
    /// Member nodes in canonical order.
    pub members: Vec<NodeId>,
    pub name: Option<String>,
}

/// A validated finite extensive game `(T, t, o, Π)`.
///
/// Nodes are stored in lexicographic address order, so the root is node 0
/// and every parent precedes its children. Cells are ordered by their first
/// member.
#[derive(Clone, Debug)]
pub struct ExtensiveGame {
    outcomes: Outcomes,
    nodes: Vec<Node>,
    cells: Vec<Cell>,
}

impl ExtensiveGame {
    pub fn from_spec(spec: &GameSpec) -> Result<Self> {
        let report = validate_game(spec);
        if !report.is_valid() {
            return Err(Error::InvalidGame(report));
        }
        let index: BTreeMap<&Address, NodeId> = spec
            .positions
            .keys()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); spec.positions.len()];
        for (i, addr) in spec.positions.keys().enumerate() {
            if let Some(parent) = addr.parent() {
                children[index[&parent]].push(i);
            }
        }
        let mut cells: Vec<Cell> = Vec::new();
        let mut named: BTreeMap<&str, usize> = BTreeMap::new();
        let mut nodes = Vec::with_capacity(spec.positions.len());
        for (i, (addr, pos)) in spec.positions.iter().enumerate() {
            let kind = match pos {
                Position::Leaf { outcome } => NodeKind::Leaf {
                    outcome: spec.outcomes.require(outcome)?,
                },
                Position::Move { player, info } => {
                    let arity = children[i].len();
                    let cell = match info {
                        Some(name) => *named.entry(name.as_str()).or_insert_with(|| {
                            cells.push(Cell {
                                player: *player,
                                arity,
                                members: Vec::new(),
                                name: Some(name.clone()),
                            });
                            cells.len() - 1
                        }),
                        None => {
                            cells.push(Cell {
                                player: *player,
                                arity,
                                members: Vec::new(),
                                name: None,
                            });
                            cells.len() - 1
                        }
                    };
                    cells[cell].members.push(i);
                    NodeKind::Move {
                        player: *player,
                        cell,
                        children: std::mem::take(&mut children[i]),
                    }
                }
            };
            nodes.push(Node {
                address: addr.clone(),
                kind,
            });
        }
        Ok(ExtensiveGame {
            outcomes: spec.outcomes.clone(),
            nodes,
            cells,
        })
    }

    pub fn from_tree(outcomes: Outcomes, tree: &TreeSpec) -> Result<Self> {
        GameSpec::from_tree(outcomes, tree).build()
    }

    /// The one-node game ending immediately in `outcome`.
    pub fn leaf(outcomes: &Outcomes, outcome: &str) -> Result<Self> {
        Self::from_tree(outcomes.clone(), &TreeSpec::leaf(outcome))
    }

    pub fn outcomes(&self) -> &Outcomes {
        &self.outcomes
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn find(&self, address: &Address) -> Option<NodeId> {
        self.nodes
            .binary_search_by(|n| n.address.cmp(address))
            .ok()
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        match &self.nodes[id].kind {
            NodeKind::Leaf { .. } => &[],
            NodeKind::Move { children, .. } => children,
        }
    }

    pub fn is_perfect_information(&self) -> bool {
        self.cells.iter().all(|c| c.members.len() == 1)
    }

    /// Cells owned by `player`, in canonical order.
    pub fn cells_of(&self, player: Player) -> impl Iterator<Item = (usize, &Cell)> {
        self.cells
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.player == player)
    }

    pub fn leaves(&self) -> impl Iterator<Item = (NodeId, usize)> + '_ {
        self.nodes.iter().enumerate().filter_map(|(i, n)| match n.kind {
            NodeKind::Leaf { outcome } => Some((i, outcome)),
            NodeKind::Move { .. } => None,
        })
    }

    /// Number of moves on the longest branch.
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.address.depth()).max().unwrap_or(0)
    }

    /// The unvalidated form of this game. Unnamed cells with several members
    /// receive generated names `c<index>`.
    pub fn to_spec(&self) -> GameSpec {
        let positions = self
            .nodes
            .iter()
            .map(|n| {
                let pos = match &n.kind {
                    NodeKind::Leaf { outcome } => Position::Leaf {
                        outcome: self.outcomes.label(*outcome).to_string(),
                    },
                    NodeKind::Move { player, cell, .. } => {
                        let c = &self.cells[*cell];
                        let info = match &c.name {
                            Some(name) => Some(name.clone()),
                            None if c.members.len() > 1 => Some(format!("c{cell}")),
                            None => None,
                        };
                        Position::Move {
                            player: *player,
                            info,
                        }
                    }
                };
                (n.address.clone(), pos)
            })
            .collect();
        GameSpec {
            outcomes: self.outcomes.clone(),
            positions,
        }
    }

    pub fn to_tree(&self) -> TreeSpec {
        self.tree_at(self.root())
    }

    fn tree_at(&self, id: NodeId) -> TreeSpec {
        match &self.nodes[id].kind {
            NodeKind::Leaf { outcome } => TreeSpec::Leaf(self.outcomes.label(*outcome).to_string()),
            NodeKind::Move {
                player,
                cell,
                children,
            } => {
                let c = &self.cells[*cell];
                let info = match &c.name {
                    Some(name) => Some(name.clone()),
                    None if c.members.len() > 1 => Some(format!("c{cell}")),
                    None => None,
                };
                TreeSpec::Move {
                    player: *player,
                    info,
                    children: children.iter().map(|&k| self.tree_at(k)).collect(),
                }
            }
        }
    }

    /// Equality of address structure, turns, leaf outcomes and the
    /// information partition, ignoring cell names.
    pub fn same_structure(&self, other: &ExtensiveGame) -> bool {
        if self.outcomes != other.outcomes || self.nodes.len() != other.nodes.len() {
            return false;
        }
        let shape_eq = self.nodes.iter().zip(&other.nodes).all(|(a, b)| {
            a.address == b.address
                && match (&a.kind, &b.kind) {
                    (NodeKind::Leaf { outcome: x }, NodeKind::Leaf { outcome: y }) => x == y,
                    (
                        NodeKind::Move { player: p, .. },
                        NodeKind::Move { player: q, .. },
                    ) => p == q,
                    _ => false,
                }
        });
        let partition = |g: &ExtensiveGame| {
            let mut cells: Vec<Vec<usize>> = g.cells.iter().map(|c| c.members.clone()).collect();
            cells.sort();
            cells
        };
        shape_eq && partition(self) == partition(other)
    }
}
