//! Game operations and sample-based checking of equations.

use gamepowers::algebra::{check_equation, op_plus, op_times, parse_equation, Equiv, SamplerConfig};
use gamepowers::equivalence::power_equivalent;
use gamepowers::game::ExtensiveGame;
use gamepowers::outcome::Outcomes;

fn main() -> gamepowers::Result<()> {
    let o = Outcomes::new(["1", "2", "3"])?;
    let leaf = |s: &str| ExtensiveGame::leaf(&o, s);
    let left = op_plus(&leaf("1")?, &op_times(&leaf("2")?, &leaf("3")?)?)?;
    let right = op_times(&op_plus(&leaf("1")?, &leaf("2")?)?, &op_plus(&leaf("1")?, &leaf("3")?)?)?;
    println!("1 + (2 * 3)       = {}", left.to_json());
    println!("(1 + 2) * (1 + 3) = {}", right.to_json());
    println!("power equivalent: {}", power_equivalent(&left, &right)?.verdict);

    let cfg = SamplerConfig::default();
    for (text, equiv) in [
        ("x + y = y + x", Equiv::Strong),
        ("-(x + y) = -x * -y", Equiv::Strong),
        ("x * x = x", Equiv::Strong),
        ("x + x = x", Equiv::Semi),
        ("x * (y + z) = x * y + x * z", Equiv::Semi),
        ("(x + y) o z = x o z + y o z", Equiv::Semi),
    ] {
        let r = check_equation(&parse_equation(text)?, equiv, &cfg)?;
        print!("{text:<32} {equiv:?}: ");
        match &r.counterexample {
            None => println!("holds on {} samples", r.samples_tried),
            Some(c) => println!("counterexample {}", serde_json::to_string(&c.binding)?),
        }
    }
    Ok(())
}
