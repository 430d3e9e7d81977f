//! Strategies, the matches they allow and the resulting strategic form.

use gamepowers::game::{enumerate_strategies, guided_outcomes, to_strategic_form, ExtensiveGame, Player};

fn main() -> gamepowers::Result<()> {
    let g = ExtensiveGame::from_json(include_str!("../data/comp_right.json"))?;
    for relational in [false, true] {
        let all = enumerate_strategies(&g, Player::B, relational);
        println!("B has {} {} strategies", all.len(), if relational { "relational" } else { "functional" });
        for s in &all {
            let outcomes = guided_outcomes(&g, s);
            println!("  {} -> {}", serde_json::to_string(s)?, g.outcomes().show(outcomes));
        }
    }

    let left = ExtensiveGame::from_json(include_str!("../data/dist_left.json"))?;
    let sg = to_strategic_form(&left)?;
    println!("strategic form of dist_left: {}", sg.to_json());
    Ok(())
}
