use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{Address, ExtensiveGame, GameSpec, Player, Position, TreeSpec};
use crate::outcome::Outcomes;

/// Owner, arity and the owner's own history of cells and moves.
type CellKey = (Player, usize, Vec<(usize, u32)>);

/// A seeded random game with at most `max_depth` nodes on any branch (so
/// [`ExtensiveGame::depth`] is below `max_depth`) and at
/// most `max_branch` moves per node. Outcomes are drawn from `outcomes`.
///
/// Unless `perfect_info` is set, nodes are merged into shared cells at
/// random. Only nodes of the same player and arity whose owner has seen the
/// same sequence of own cells and moves on the way down may share a cell,
/// so the result has perfect recall; in particular no cell contains two
/// nodes on one branch.
pub fn random_game(
    seed: u64,
    max_depth: usize,
    max_branch: usize,
    outcomes: &Outcomes,
    perfect_info: bool,
) -> ExtensiveGame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_game_with(&mut rng, max_depth, max_branch, outcomes, perfect_info)
}

/// [`random_game`] drawing from an existing generator.
pub fn random_game_with<R: Rng>(
    rng: &mut R,
    max_depth: usize,
    max_branch: usize,
    outcomes: &Outcomes,
    perfect_info: bool,
) -> ExtensiveGame {
    let max_branch = max_branch.max(1);
    let mut shape: BTreeMap<Address, Option<(Player, usize)>> = BTreeMap::new();
    let mut leaves: BTreeMap<Address, String> = BTreeMap::new();
    grow(rng, Address::root(), 1, max_depth.max(1), max_branch, outcomes, &mut shape, &mut leaves);

    let mut cell_of: BTreeMap<Address, usize> = BTreeMap::new();
    let mut cell_size: Vec<usize> = Vec::new();
    let mut groups: HashMap<CellKey, Vec<usize>> = HashMap::new();
    // lexicographic order visits every parent before its children
    for (addr, kind) in &shape {
        let Some((player, arity)) = *kind else { continue };
        let mut recall = Vec::new();
        for k in 0..addr.0.len() {
            let anc = Address(addr.0[..k].to_vec());
            if let Some((p, _)) = shape[&anc] {
                if p == player {
                    recall.push((cell_of[&anc], addr.0[k]));
                }
            }
        }
        let group = groups.entry((player, arity, recall)).or_default();
        let cell = if !perfect_info && !group.is_empty() && rng.gen_bool(0.5) {
            *group.choose(rng).expect("nonempty")
        } else {
            cell_size.push(0);
            group.push(cell_size.len() - 1);
            cell_size.len() - 1
        };
        cell_size[cell] += 1;
        cell_of.insert(addr.clone(), cell);
    }

    let positions = shape
        .iter()
        .map(|(addr, kind)| {
            let pos = match kind {
                None => Position::Leaf {
                    outcome: leaves[addr].clone(),
                },
                Some((player, _)) => {
                    let cell = cell_of[addr];
                    Position::Move {
                        player: *player,
                        info: (cell_size[cell] > 1).then(|| format!("i{cell}")),
                    }
                }
            };
            (addr.clone(), pos)
        })
        .collect();
    GameSpec {
        outcomes: outcomes.clone(),
        positions,
    }
    .build()
    .expect("generated games are valid")
}

#[allow(clippy::too_many_arguments)]
fn grow<R: Rng>(
    rng: &mut R,
    at: Address,
    level: usize,
    max_depth: usize,
    max_branch: usize,
    outcomes: &Outcomes,
    shape: &mut BTreeMap<Address, Option<(Player, usize)>>,
    leaves: &mut BTreeMap<Address, String>,
) {
    let leaf_prob = if level == 1 { 0.1 } else { 0.35 };
    if level >= max_depth || rng.gen_bool(leaf_prob) {
        let o = rng.gen_range(0..outcomes.len());
        leaves.insert(at.clone(), outcomes.label(o).to_string());
        shape.insert(at, None);
        return;
    }
    let arity = if max_branch >= 2 && rng.gen_bool(0.8) {
        rng.gen_range(2..=max_branch)
    } else {
        1
    };
    let player = if rng.gen_bool(0.5) { Player::A } else { Player::B };
    shape.insert(at.clone(), Some((player, arity)));
    for i in 0..arity {
        grow(rng, at.child(i as u32), level + 1, max_depth, max_branch, outcomes, shape, leaves);
    }
}

/// Small games in a fixed order: leaves, unary moves of B then A, two-way
/// moves of A then B between equal outcomes, then between distinct
/// outcomes.
pub fn small_games(outcomes: &Outcomes) -> Vec<ExtensiveGame> {
    let labels = outcomes.labels();
    let leaf = |o: &String| TreeSpec::leaf(o.clone());
    let mut trees: Vec<TreeSpec> = labels.iter().map(leaf).collect();
    for p in [Player::B, Player::A] {
        trees.extend(labels.iter().map(|o| TreeSpec::node(p, vec![leaf(o)])));
    }
    for p in Player::BOTH {
        trees.extend(labels.iter().map(|o| TreeSpec::node(p, vec![leaf(o), leaf(o)])));
    }
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            for p in Player::BOTH {
                trees.push(TreeSpec::node(p, vec![leaf(&labels[i]), leaf(&labels[j])]));
            }
        }
    }
    trees
        .iter()
        .map(|t| ExtensiveGame::from_tree(outcomes.clone(), t).expect("valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_is_a_leaf() {
        let o = Outcomes::numbered(3);
        for seed in 0..10 {
            assert_eq!(random_game(seed, 1, 3, &o, false).nodes().len(), 1);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let o = Outcomes::numbered(3);
        let a = random_game(42, 4, 3, &o, false);
        let b = random_game(42, 4, 3, &o, false);
        assert!(a.same_structure(&b));
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn perfect_information_flag() {
        let o = Outcomes::numbered(2);
        for seed in 0..50 {
            assert!(random_game(seed, 4, 3, &o, true).is_perfect_information());
        }
        assert!((0..50).any(|s| !random_game(s, 4, 3, &o, false).is_perfect_information()));
    }

    #[test]
    fn small_list_order() {
        let g = small_games(&Outcomes::new(["x", "y"]).unwrap());
        assert_eq!(g.len(), 12);
        assert_eq!(g[4].to_tree(), TreeSpec::a(vec![TreeSpec::leaf("x")]));
        assert_eq!(g[6].to_tree(), TreeSpec::a(vec![TreeSpec::leaf("x"), TreeSpec::leaf("x")]));
        assert_eq!(g[11].to_tree(), TreeSpec::b(vec![TreeSpec::leaf("x"), TreeSpec::leaf("y")]));
    }
}
