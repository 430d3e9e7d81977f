mod common;

use gamepowers::game::{ExtensiveGame, Player, TreeSpec};
use gamepowers::logic::{
    axiom_soundness_suite, countermodel_search, encode_game_as_model, model_check, model_check_exact, parse_formula,
    random_formula, random_game_model, random_instantial_model, random_valuation, validate_frame, Formula,
    FrameKind, NeighborhoodModel, Schema, ROOT_WORLD,
};
use gamepowers::outcome::{OutcomeSet, Outcomes};
use gamepowers::powers::{upward_closure, PowerKind, Witness};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{data, comp_pair, Model};

const ATOMS: [&str; 3] = ["p", "q", "r"];

fn p(name: &str) -> Formula {
    Formula::atom(name)
}

#[test]
fn grammar_examples() {
    assert_eq!(
        parse_formula("[A](p,q;p|q)").unwrap(),
        Formula::instantial(Player::A, [p("p"), p("q")], Formula::or(p("p"), p("q")))
    );
    assert_eq!(parse_formula("[B]!p").unwrap(), Formula::boxed(Player::B, Formula::negate(p("p"))));
    assert_eq!(parse_formula("[A](;true)").unwrap(), parse_formula("[A]true").unwrap());
    assert_eq!(
        parse_formula("p -> q -> r").unwrap(),
        Formula::implies(p("p"), Formula::implies(p("q"), p("r")))
    );
    assert_eq!(
        parse_formula("!p & q | r").unwrap(),
        Formula::or(Formula::and(Formula::negate(p("p")), p("q")), p("r"))
    );
    assert_eq!(parse_formula("[A](p,p;q)").unwrap(), parse_formula("[A](p;q)").unwrap());
}

#[test]
fn syntax_errors_carry_a_position() {
    let e = parse_formula("[A](p;").unwrap_err();
    assert_eq!(e.position, 6);
    assert!(!e.expected.is_empty());
    let e = parse_formula("[C]p").unwrap_err();
    assert_eq!(e.position, 1);
    let e = parse_formula("p q").unwrap_err();
    assert_eq!(e.position, 2);
}

/// A model over `worlds` whose first world has the given neighborhoods
/// (as lists of world names); every other world sees only itself.
fn first_world(ra: &[&[&str]], rb: &[&[&str]], worlds: &[&str]) -> NeighborhoodModel {
    let mut m = NeighborhoodModel::new(Outcomes::new(worlds.iter().copied()).unwrap());
    let sets = |m: &NeighborhoodModel, f: &[&[&str]]| -> Vec<OutcomeSet> {
        f.iter().map(|z| m.worlds().set(z).unwrap()).collect()
    };
    let w0 = m.world(worlds[0]).unwrap();
    let (a, b) = (sets(&m, ra), sets(&m, rb));
    m.set_neighborhoods(Player::A, w0, a);
    m.set_neighborhoods(Player::B, w0, b);
    for w in (0..m.len()).filter(|&w| w != w0) {
        for pl in Player::BOTH {
            m.add_neighborhood(pl, w, OutcomeSet::singleton(w));
        }
    }
    m
}

#[test]
fn frame_examples() {
    let m = first_world(&[&["w"]], &[&["w"]], &["w"]);
    assert!(validate_frame(&m, FrameKind::Instantial).valid);
    assert!(validate_frame(&m, FrameKind::Game).valid);

    let m = first_world(&[&[]], &[&["w"]], &["w"]);
    let r = validate_frame(&m, FrameKind::Instantial);
    let f = r.failures.iter().find(|f| f.condition == "consistency").unwrap();
    assert_eq!(f.world, "w");
    assert_eq!(f.witness, Witness::DisjointPair { a: vec![], b: vec!["w".into()] });

    let m = first_world(&[&["u"]], &[&["w"]], &["w", "u"]);
    let r = validate_frame(&m, FrameKind::Instantial);
    assert!(r.failures.iter().any(|f| f.condition == "instantiatedness"
        && f.world == "w"
        && f.player == Player::A
        && f.witness == Witness::Uninstantiated { member: vec!["u".into()], element: "u".into() }));
}

#[test]
fn model_check_examples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let m = random_instantial_model(&mut rng, 4, &ATOMS);
        assert_eq!(model_check(&m, &parse_formula("[A]true").unwrap()), m.all());
        assert_eq!(model_check(&m, &parse_formula("[B](false;true)").unwrap()), OutcomeSet::EMPTY);
    }
    let m = NeighborhoodModel::from_json(&data("dist_right_model.json")).unwrap();
    let root = m.world(ROOT_WORLD).unwrap();
    assert!(model_check(&m, &parse_formula("[A](p2;p2|p3)").unwrap()).contains(root));
    let left = NeighborhoodModel::from_json(&data("dist_left_model.json")).unwrap();
    let lroot = left.world(ROOT_WORLD).unwrap();
    let f = parse_formula("[A](p1,p2;p1|p2)").unwrap();
    assert!(model_check(&m, &f).contains(root));
    assert!(!model_check(&left, &f).contains(lroot));
}

#[test]
fn encodings() {
    let (l, _) = comp_pair();
    let (m, root) = encode_game_as_model(&l, PowerKind::Basic);
    let nb: Vec<Vec<String>> = m.neighborhoods(Player::B, root).iter().map(|z| m.worlds().names(*z)).collect();
    assert_eq!(nb, vec![vec!["x".to_string()], vec!["y".to_string()]]);

    let (m, root) = encode_game_as_model(&l, PowerKind::Plain);
    for pl in Player::BOTH {
        assert_eq!(upward_closure(&m.family(pl, root)), m.family(pl, root));
    }
    assert!(validate_frame(&m, FrameKind::Game).valid);

    let leaf = ExtensiveGame::from_tree(Outcomes::new(["x"]).unwrap(), &TreeSpec::leaf("x")).unwrap();
    let (m, root) = encode_game_as_model(&leaf, PowerKind::Basic);
    for pl in Player::BOTH {
        let nb: Vec<Vec<String>> = m.neighborhoods(pl, root).iter().map(|z| m.worlds().names(*z)).collect();
        assert_eq!(nb, vec![vec!["x".to_string()]]);
    }
}

#[test]
fn model_files_round_trip() {
    let text = data("dist_right_model.json");
    let m = NeighborhoodModel::from_json(&text).unwrap();
    let again = NeighborhoodModel::from_json(&m.to_json().to_string()).unwrap();
    assert_eq!(again.to_json(), m.to_json());
    assert!(NeighborhoodModel::from_json(r#"{"worlds":["w"],"RA":[["v",["w"]]],"RB":[],"val":{}}"#).is_err());
}

#[test]
fn axiom_examples() {
    let f = parse_formula("[A]p -> ![B]!p").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let m = random_instantial_model(&mut rng, 4, &["p"]);
        assert_eq!(model_check(&m, &f), m.all());
    }
    let report = axiom_soundness_suite(17, 330);
    assert!(report.ok(), "{:?}", report.violations.first());
    assert!(report.per_schema.values().all(|&n| n == 30));
    assert_eq!(format!("{}", Schema::NonEm), "non-em");
}

#[test]
fn countermodel_examples() {
    assert!(!countermodel_search(&parse_formula("p | !p").unwrap(), 3, 0, 2_000).refuted());
    let inst = Formula::iff(parse_formula("[A](p;true)").unwrap(), parse_formula("[B](p;true)").unwrap());
    assert!(!countermodel_search(&inst, 3, 0, 20_000).refuted());

    let f = parse_formula("[A](p;p|q) -> [A](p;p)").unwrap();
    let r = countermodel_search(&f, 2, 0, 20_000);
    let cm = r.countermodel.expect("refuted");
    assert!(cm.parsed.len() <= 2);
    assert!(validate_frame(&cm.parsed, FrameKind::Instantial).valid);
    let reread = NeighborhoodModel::from_json(&cm.model.to_string()).unwrap();
    let w = reread.world(&cm.world).unwrap();
    assert!(!model_check(&reread, &f).contains(w));
    assert!(!common::truth(&Model::of(&reread), &cm.world, &f));
}

fn positive(depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        prop::sample::select(ATOMS.to_vec()).prop_map(Formula::atom),
    ];
    leaf.prop_recursive(depth, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (any::<bool>(), prop::collection::vec(inner.clone(), 0..=2), inner).prop_map(|(a, ps, s)| {
                Formula::instantial(if a { Player::A } else { Player::B }, ps, s)
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse(seed in any::<u64>(), gl in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_formula(&mut rng, &ATOMS, 3, gl);
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f.clone());
        prop_assert_eq!(f.is_game_logic(), gl || f.is_game_logic());
        prop_assert!(f.modal_depth() <= 3);
    }

    #[test]
    fn model_check_matches_the_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_instantial_model(&mut rng, 4, &ATOMS);
        let o = Model::of(&m);
        for _ in 0..10 {
            let f = random_formula(&mut rng, &ATOMS, 3, false);
            let ext = model_check(&m, &f);
            for w in 0..m.len() {
                prop_assert_eq!(ext.contains(w), common::truth(&o, m.worlds().label(w), &f), "{}", f);
            }
        }
    }

    #[test]
    fn positive_formulas_are_monotone(seed in any::<u64>(), f in positive(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_instantial_model(&mut rng, 4, &ATOMS);
        let mut bigger = m.clone();
        let mut extra = m.clone();
        random_valuation(&mut rng, &mut extra, &ATOMS);
        for a in ATOMS {
            bigger.set_atom(a, m.atom(a).union(extra.atom(a)));
        }
        prop_assert!(model_check(&m, &f).is_subset(model_check(&bigger, &f)));
    }

    #[test]
    fn exact_reading_agrees_on_game_frames(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_game_model(&mut rng, 4, &ATOMS);
        prop_assert!(validate_frame(&m, FrameKind::Game).valid);
        for _ in 0..10 {
            let f = random_formula(&mut rng, &ATOMS, 3, true);
            prop_assert_eq!(model_check_exact(&m, &f), Some(model_check(&m, &f)), "{}", f);
        }
    }

    #[test]
    fn generated_models_are_valid(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(validate_frame(&random_instantial_model(&mut rng, 5, &ATOMS), FrameKind::Instantial).valid);
        prop_assert!(validate_frame(&random_game_model(&mut rng, 5, &ATOMS), FrameKind::Game).valid);
    }

    #[test]
    fn axiom_instances_are_valid(seed in any::<u64>(), k in 0usize..11) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let schema = Schema::ALL[k];
        let f = schema.instance(&mut rng, 2);
        let m = if schema.is_game_logic() {
            random_game_model(&mut rng, 5, &ATOMS)
        } else {
            random_instantial_model(&mut rng, 5, &ATOMS)
        };
        let o = Model::of(&m);
        for w in m.worlds().labels() {
            prop_assert!(common::truth(&o, w, &f), "{} fails at {}", f, w);
        }
    }
}
