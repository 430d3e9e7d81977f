use crate::error::Result;
use crate::game::{ExtensiveGame, NodeKind, Player, TreeSpec};

/// The tree of `g` with every shared cell renamed to `prefix` followed by its
/// name (or `#index` when unnamed), optionally with all turns switched.
pub(crate) fn embed_tree(g: &ExtensiveGame, prefix: &str, dual: bool) -> TreeSpec {
    embed_with(g, g.root(), prefix, dual, &mut |_, o| TreeSpec::leaf(g.outcomes().label(o)))
}

/// Like [`embed_tree`] below node `at`, replacing each leaf by
/// `leaf(node, outcome)`.
pub(crate) fn embed_with(
    g: &ExtensiveGame,
    at: usize,
    prefix: &str,
    dual: bool,
    leaf: &mut dyn FnMut(usize, usize) -> TreeSpec,
) -> TreeSpec {
    match &g.node(at).kind {
        NodeKind::Leaf { outcome } => leaf(at, *outcome),
        NodeKind::Move {
            player,
            cell,
            children,
        } => {
            let c = &g.cells()[*cell];
            let info = (c.members.len() > 1).then(|| match &c.name {
                Some(name) => format!("{prefix}{name}"),
                None => format!("{prefix}#{cell}"),
            });
            TreeSpec::Move {
                player: if dual { player.dual() } else { *player },
                info,
                children: children.iter().map(|&k| embed_with(g, k, prefix, dual, leaf)).collect(),
            }
        }
    }
}

fn choice(player: Player, g1: &ExtensiveGame, g2: &ExtensiveGame) -> Result<ExtensiveGame> {
    g1.outcomes().ensure_same(g2.outcomes())?;
    let tree = TreeSpec::node(player, vec![embed_tree(g1, "1.", false), embed_tree(g2, "2.", false)]);
    ExtensiveGame::from_tree(g1.outcomes().clone(), &tree)
}

/// `g1 + g2`: A picks which game to play.
pub fn op_plus(g1: &ExtensiveGame, g2: &ExtensiveGame) -> Result<ExtensiveGame> {
    choice(Player::A, g1, g2)
}

/// `g1 × g2`: B picks which game to play.
pub fn op_times(g1: &ExtensiveGame, g2: &ExtensiveGame) -> Result<ExtensiveGame> {
    choice(Player::B, g1, g2)
}

/// `−g`: the same game with the players' turns switched.
pub fn op_dual(g: &ExtensiveGame) -> ExtensiveGame {
    ExtensiveGame::from_tree(g.outcomes().clone(), &embed_tree(g, "", true)).expect("dual of a valid game")
}
