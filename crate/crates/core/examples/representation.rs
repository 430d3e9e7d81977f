//! Builds a game from a legal pair of basic-power families and checks that
//! it realizes them.

use gamepowers::representation::{
    claim_witness, construct_game, sample_legal_families, verify_roundtrip, Mode, RepresentationInput,
};

fn main() -> gamepowers::Result<()> {
    let input = RepresentationInput::from_json(include_str!("../data/dist_right_families.json"))?;
    let game = construct_game(&input)?;
    println!("B strategies: {}", game.triples().len());
    println!("A strategies: {:?}", game.a_strategy_count());

    let z = input.outcomes().set(&["2", "3"])?;
    let c = claim_witness(&game, z)?;
    println!("A strategy with value {{2,3}}: {:?}", c.0);

    let rt = verify_roundtrip(&input)?;
    println!("round trip ({}): {}", rt.method, rt.ok());

    for seed in 0..3 {
        let sampled = sample_legal_families(4, seed, Mode::Relational)?;
        let rt = verify_roundtrip(&sampled)?;
        println!("seed {seed}: FA={} FB={} ok={}", sampled.fa, sampled.fb, rt.ok());
    }
    Ok(())
}
