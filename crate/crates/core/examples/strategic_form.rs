//! Strategy profile bisimulation between two matrix games with equal basic
//! powers.

use gamepowers::equivalence::{profile_bisimulation, strategic_form_equivalent, strongly_power_equivalent};
use gamepowers::game::StrategicGame;

fn main() -> gamepowers::Result<()> {
    let left = StrategicGame::from_json(include_str!("../data/matrix_left.json"))?;
    let right = StrategicGame::from_json(include_str!("../data/matrix_right.json"))?;

    println!("strong: {}", serde_json::to_string(&strongly_power_equivalent(&left, &right)?)?);
    println!("strategic: {}", serde_json::to_string(&strategic_form_equivalent(&left, &right)?)?);

    let b = profile_bisimulation(&left, &right)?;
    println!("refinement rounds: {}", b.rounds);
    println!("unmatched right profiles: {:?}", b.unmatched_right());
    Ok(())
}
