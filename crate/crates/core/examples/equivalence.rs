//! The game equivalences on two pairs of games.

use gamepowers::equivalence::{game_equivalence, hierarchy_audit, Game, RelationKind};

fn main() -> gamepowers::Result<()> {
    let pairs = [
        ("distribution", include_str!("../data/dist_left.json"), include_str!("../data/dist_right.json")),
        ("composition", include_str!("../data/comp_left.json"), include_str!("../data/comp_right.json")),
    ];
    for (name, l, r) in pairs {
        let (g1, g2) = (Game::from_json(l)?, Game::from_json(r)?);
        println!("{name}");
        for kind in [RelationKind::Power, RelationKind::Strong, RelationKind::Semi, RelationKind::Strategic] {
            let v = game_equivalence(&g1, &g2, kind)?;
            println!("  {}", serde_json::to_string(&v)?);
        }
        let audit = hierarchy_audit(&g1, &g2)?;
        println!("  hierarchy consistent: {}", audit.ok());
    }
    Ok(())
}
