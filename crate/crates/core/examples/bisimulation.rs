//! Power and instantial bisimulation between neighborhood models.

use gamepowers::equivalence::{instantial_bisimilar, power_bisimilar, random_bisimilar_copy};
use gamepowers::game::ExtensiveGame;
use gamepowers::logic::{add_outcome_atoms, encode_game_as_model, random_instantial_model, random_valuation};
use gamepowers::powers::PowerKind;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gamepowers::Result<()> {
    let l = ExtensiveGame::from_json(include_str!("../data/dist_left.json"))?;
    let r = ExtensiveGame::from_json(include_str!("../data/dist_right.json"))?;
    for kind in [PowerKind::Plain, PowerKind::Basic] {
        let (mut ml, wl) = encode_game_as_model(&l, kind);
        let (mut mr, wr) = encode_game_as_model(&r, kind);
        add_outcome_atoms(&mut ml, l.outcomes(), "p");
        add_outcome_atoms(&mut mr, r.outcomes(), "p");
        println!("{kind:?} encoding");
        println!("  power:      {}", power_bisimilar(&ml, wl, &mr, wr).verdict);
        let v = instantial_bisimilar(&ml, wl, &mr, wr);
        println!("  instantial: {} {}", v.verdict, serde_json::to_string(&v.witness)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut m = random_instantial_model(&mut rng, 3, &["p", "q"]);
    random_valuation(&mut rng, &mut m, &["p", "q"]);
    let (copy, proj) = random_bisimilar_copy(&mut rng, &m, false);
    println!("copy has {} worlds", copy.len());
    let w = 0;
    println!("w0 vs its image: {}", instantial_bisimilar(&copy, w, &m, proj[w]).verdict);
    Ok(())
}
