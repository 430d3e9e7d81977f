//! Dynamic games, sequential composition and congruence.

use gamepowers::algebra::{check_congruence, seq_compose, DynamicGame, Equiv, Op, SamplerConfig};
use gamepowers::equivalence::{semi_strongly_equivalent, strongly_power_equivalent};
use gamepowers::game::{ExtensiveGame, TreeSpec};
use gamepowers::outcome::Outcomes;

fn main() -> gamepowers::Result<()> {
    let states = Outcomes::new(["x", "y"])?;
    let at_x = |tree: TreeSpec| -> gamepowers::Result<DynamicGame> {
        let mut games = DynamicGame::identity(&states).games().to_vec();
        games[0] = ExtensiveGame::from_tree(states.clone(), &tree)?;
        DynamicGame::new(states.clone(), games)
    };
    let g = at_x(TreeSpec::a(vec![TreeSpec::leaf("x")]))?;
    let g2 = at_x(TreeSpec::a(vec![TreeSpec::leaf("x"), TreeSpec::leaf("x")]))?;
    let h = DynamicGame::from_json(include_str!("../data/choice_at_x.json"))?;

    let (l, r) = (seq_compose(&g, &h)?, seq_compose(&g2, &h)?);
    println!("g o h at x:  {}", l.game(0).to_json());
    println!("g' o h at x: {}", r.game(0).to_json());
    println!("strong: {}", serde_json::to_string(&strongly_power_equivalent(l.game(0), r.game(0))?)?);
    println!("semi:   {}", serde_json::to_string(&semi_strongly_equivalent(l.game(0), r.game(0))?)?);

    let cfg = SamplerConfig::default();
    for equiv in [Equiv::Strong, Equiv::Semi] {
        let rep = check_congruence(Op::Compose, equiv, &cfg)?;
        println!("o under {equiv:?}: congruent on sample = {}", rep.congruent_on_sample);
    }
    Ok(())
}
