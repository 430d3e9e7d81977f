//! Evaluates instantial game logic formulas on a game encoded as a
//! one-step neighborhood model.

use gamepowers::logic::{model_check, parse_formula, validate_frame, FrameKind, NeighborhoodModel};

fn main() -> gamepowers::Result<()> {
    let m = NeighborhoodModel::from_json(include_str!("../data/dist_right_model.json"))?;
    println!("instantial frame: {}", validate_frame(&m, FrameKind::Instantial).valid);

    for text in ["[A]true", "[A](p2; p2 | p3)", "[A](p1, p2; p1 | p2)", "[A](p3; p3)", "[B](p1 | p2)"] {
        let f = parse_formula(text)?;
        let ext = model_check(&m, &f);
        println!("{:<24} {}", f.to_string(), m.worlds().show(ext));
    }
    Ok(())
}
