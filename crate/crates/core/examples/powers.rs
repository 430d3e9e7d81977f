//! Powers, basic powers and relational basic powers of two small games.
//!
//! ```text
//! cargo run --example powers
//! ```

use gamepowers::game::{ExtensiveGame, Player};
use gamepowers::powers::{powers_of, PowerKind};

fn main() -> gamepowers::Result<()> {
    for (name, text) in [
        ("dist_left", include_str!("../data/dist_left.json")),
        ("dist_right", include_str!("../data/dist_right.json")),
    ] {
        let g = ExtensiveGame::from_json(text)?;
        println!("{name}");
        for player in [Player::A, Player::B] {
            for kind in [PowerKind::Plain, PowerKind::Basic, PowerKind::Relational] {
                println!("  {player} {:<10} {}", format!("{kind:?}"), powers_of(&g, player, kind));
            }
        }
    }
    Ok(())
}
