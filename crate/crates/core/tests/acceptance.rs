//! Acceptance criteria 1 to 11. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any fails.

mod common;

use std::time::{Duration, Instant};

use gamepowers::algebra::{
    check_congruence, check_equation, composed_power_relation, parse_equation, random_game, seq_compose, state_set,
    DynamicGame, Equiv, Op, SamplerConfig,
};
use gamepowers::equivalence::{
    greatest_bisimulation, hierarchy_audit, power_equivalent, random_bisimilar_copy, semi_strongly_equivalent,
    strategic_form_equivalent, strongly_power_equivalent, VerdictWitness,
};
use gamepowers::game::{ExtensiveGame, Player, TreeSpec};
use gamepowers::logic::{
    axiom_soundness_suite, countermodel_search, model_check, parse_formula, random_formula, random_game_model,
    random_instantial_model, Schema,
};
use gamepowers::outcome::Outcomes;
use gamepowers::powers::{check_conditions, PowerFamily, PowerSource};
use gamepowers::representation::{sample_legal_families, verify_roundtrip, Mode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{fam, fam_of, dist_pair, comp_pair, zero_one_matrices};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, f: impl FnOnce() -> Result<(), String>) -> Outcome {
    let start = Instant::now();
    f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}"))?;
    Ok(format!("{took:?}"))
}

fn criterion_1() -> Outcome {
    within(Duration::from_secs(1), || {
        let (l, r) = dist_pair();
        ensure(power_equivalent(&l, &r).unwrap().verdict, || "not power equivalent".into())?;
        ensure(!strongly_power_equivalent(&l, &r).unwrap().verdict, || "strongly equivalent".into())?;
        let (bl, br) = (fam_of(&l.basic_powers(Player::A)), fam_of(&r.basic_powers(Player::A)));
        ensure(bl == fam(&[&["1"], &["2", "3"]]), || format!("B_A(left) = {bl:?}"))?;
        ensure(br == fam(&[&["1"], &["1", "2"], &["1", "3"], &["2", "3"]]), || format!("B_A(right) = {br:?}"))?;
        ensure(!semi_strongly_equivalent(&l, &r).unwrap().verdict, || "semi-strongly equivalent".into())
    })
}

fn criterion_2() -> Outcome {
    within(Duration::from_secs(1), || {
        let (l, r) = zero_one_matrices();
        ensure(strongly_power_equivalent(&l, &r).unwrap().verdict, || "not strongly equivalent".into())?;
        ensure(!strategic_form_equivalent(&l, &r).unwrap().verdict, || "strategic-form equivalent".into())
    })
}

fn criterion_3() -> Outcome {
    let (l, r) = comp_pair();
    let strong = strongly_power_equivalent(&l, &r).unwrap();
    ensure(!strong.verdict, || "strongly equivalent".into())?;
    match &strong.witness {
        Some(VerdictWitness::Power { player: Player::B, set, .. }) if *set == ["x", "y"] => {}
        other => return Err(format!("witness {other:?}")),
    }
    ensure(semi_strongly_equivalent(&l, &r).unwrap().verdict, || "not semi-strongly equivalent".into())?;
    let cfg = SamplerConfig::default();
    let report = check_congruence(Op::Compose, Equiv::Strong, &cfg).unwrap();
    let ce = report.counterexample.ok_or("composition congruent on sample")?;
    let cl = ExtensiveGame::from_json(&ce.composed_left.to_string()).unwrap();
    let cr = ExtensiveGame::from_json(&ce.composed_right.to_string()).unwrap();
    ensure(cl.same_structure(&l) && cr.same_structure(&r), || "counterexample is not the composition pair".into())?;
    Ok("congruence counterexample reproduces the pair".into())
}

fn criterion_4() -> Outcome {
    let mut basic = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed % 3) as usize;
        let inp = sample_legal_families(n, seed, Mode::Basic).map_err(|e| e.to_string())?;
        if verify_roundtrip(&inp).map_err(|e| e.to_string())?.ok() {
            basic += 1;
        }
    }
    let mut relational = 0;
    for seed in 0..100u64 {
        let n = 2 + (seed % 3) as usize;
        let inp = sample_legal_families(n, 1000 + seed, Mode::Relational).map_err(|e| e.to_string())?;
        if verify_roundtrip(&inp).map_err(|e| e.to_string())?.ok() {
            relational += 1;
        }
    }
    ensure(basic == 200 && relational == 100, || format!("basic {basic}/200, relational {relational}/100"))?;
    Ok("basic 200/200, relational 100/100".into())
}

fn criterion_5() -> Outcome {
    let mut violations = Vec::new();
    let mut perfect = 0;
    for seed in 0..500u64 {
        let pi = seed % 2 == 0;
        let depth = 1 + (seed % 5) as usize;
        let branch = 1 + (seed / 5 % 3) as usize;
        let o = Outcomes::numbered(1 + (seed / 15 % 5) as usize);
        let g = random_game(seed, depth, branch, &o, pi);
        ensure(g.depth() <= 4, || format!("seed {seed}: depth {}", g.depth()))?;
        perfect += pi as usize;
        let fams = |f: fn(&ExtensiveGame, Player) -> PowerFamily| (f(&g, Player::A), f(&g, Player::B));
        let (pa, pb) = fams(|g, p| g.powers(p));
        let (ba, bb) = fams(|g, p| g.basic_powers(p));
        let (ra, rb) = fams(|g, p| g.relational_basic_powers(p));
        let (ca, cb) = check_conditions(&pa, &pb).unwrap();
        for c in [ca, cb] {
            if !c.plain_ok() || (pi && !c.determinacy.holds) {
                violations.push(format!("seed {seed}: powers of {}", c.player));
            }
        }
        let (ca, cb) = check_conditions(&ba, &bb).unwrap();
        for c in [ca, cb] {
            if !c.basic_ok() {
                violations.push(format!("seed {seed}: basic powers of {}", c.player));
            }
        }
        let (ca, cb) = check_conditions(&ra, &rb).unwrap();
        for c in [ca, cb] {
            if !c.relational_ok() {
                violations.push(format!("seed {seed}: relational powers of {}", c.player));
            }
        }
    }
    ensure(violations.is_empty(), || format!("{} violations, first {}", violations.len(), violations[0]))?;
    Ok(format!("500 games ({perfect} perfect information), 0 violations"))
}

fn criterion_6() -> Outcome {
    let mut strategic = 0;
    for seed in 0..200u64 {
        let o = Outcomes::numbered(1 + (seed % 3) as usize);
        let d = 2 + (seed % 2) as usize;
        let pi = seed % 4 != 0;
        let g1 = random_game(seed, d, 2, &o, pi);
        let g2 = random_game(seed.wrapping_mul(31).wrapping_add(7), d, 2, &o, pi);
        let report = hierarchy_audit(&g1.into(), &g2.into()).unwrap();
        ensure(report.ok(), || format!("seed {seed}: {:?}", report.violations))?;
        strategic += report.strategic.is_some() as usize;
    }
    Ok(format!("200 pairs ({strategic} with strategic forms), 0 violations"))
}

fn criterion_7() -> Outcome {
    let report = axiom_soundness_suite(0, 1000);
    ensure(report.ok(), || format!("{} refutations, first {:?}", report.violations.len(), report.violations[0]))?;
    Ok(format!("1000 instances over {} schemata, 0 refutations", report.per_schema.len()))
}

fn criterion_8() -> Outcome {
    const ATOMS: [&str; 3] = ["p", "q", "r"];
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let instantial = seed % 2 == 0;
        let m = if instantial {
            random_instantial_model(&mut rng, 4, &ATOMS)
        } else {
            random_game_model(&mut rng, 4, &ATOMS)
        };
        let (c, proj) = random_bisimilar_copy(&mut rng, &m, !instantial);
        let b = greatest_bisimulation(&c, &m, instantial);
        ensure(proj.iter().enumerate().all(|(u, &w)| b.related(u, w)), || format!("seed {seed}: copy not bisimilar"))?;
        for _ in 0..100 {
            let f = random_formula(&mut rng, &ATOMS, 3, !instantial);
            let (ec, em) = (model_check(&c, &f), model_check(&m, &f));
            for (u, &w) in proj.iter().enumerate() {
                ensure(ec.contains(u) == em.contains(w), || format!("seed {seed}: {f} disagrees"))?;
            }
        }
    }
    Ok("100 pairs x 100 formulas, 0 disagreements".into())
}

fn holds(eq: &str, equiv: Equiv, cfg: &SamplerConfig) -> Result<(), String> {
    let r = check_equation(&parse_equation(eq).unwrap(), equiv, cfg).unwrap();
    ensure(r.holds_on_sample && r.samples_tried == cfg.samples, || format!("{eq} fails under {equiv:?}"))
}

fn criterion_9() -> Outcome {
    let cfg = SamplerConfig::default();
    for eq in [
        "x + (y + z) = (x + y) + z",
        "x * (y * z) = (x * y) * z",
        "x + y = y + x",
        "x * y = y * x",
        "--x = x",
        "-(x + y) = -x * -y",
        "-(x * y) = -x + -y",
    ] {
        holds(eq, Equiv::Strong, &cfg)?;
    }
    for eq in ["x o (y o z) = (x o y) o z", "-(x o y) = -x o -y", "(x + y) o z = x o z + y o z"] {
        holds(eq, Equiv::Semi, &cfg)?;
    }
    let idem = check_equation(&parse_equation("x * x = x").unwrap(), Equiv::Strong, &cfg).unwrap();
    let x = idem.counterexample.ok_or("x * x = x holds on sample")?.binding["x"].to_string();
    let x = ExtensiveGame::from_json(&x).unwrap();
    let choice = TreeSpec::a(vec![TreeSpec::leaf("0"), TreeSpec::leaf("1")]);
    let expected = ExtensiveGame::from_tree(Outcomes::numbered(cfg.outcomes), &choice).unwrap();
    ensure(x.same_structure(&expected), || format!("idempotence counterexample {}", x.to_json()))?;
    let dist = check_equation(&parse_equation("x * (y + z) = x * y + x * z").unwrap(), Equiv::Semi, &cfg).unwrap();
    ensure(!dist.holds_on_sample, || "distribution holds under semi-strong equivalence".into())?;
    Ok("10 laws on 200 samples each, both counterexamples found".into())
}

fn criterion_10() -> Outcome {
    let mut rng_seed = 0u64;
    let mut next = || {
        rng_seed += 1;
        rng_seed
    };
    for i in 0..100usize {
        let states = state_set(1 + i % 3);
        let mut dynamic = |pi: bool| {
            let games = (0..states.len()).map(|_| random_game(next(), 3, 2, &states, pi)).collect();
            DynamicGame::new(states.clone(), games).unwrap()
        };
        let (d1, d2) = (dynamic(i % 2 == 0), dynamic(i % 3 == 0));
        let composed = seq_compose(&d1, &d2).unwrap();
        for p in Player::BOTH {
            let (r1, r2) = (d1.relational_power_relation(p), d2.relational_power_relation(p));
            for u in 0..states.len() {
                let expected = common::relational_powers(composed.game(u), p);
                ensure(fam_of(&composed_power_relation(&r1, &r2, u)) == expected, || {
                    format!("pair {i}, player {p}, state {}", states.label(u))
                })?;
            }
        }
    }
    Ok("100 pairs, 0 mismatches".into())
}

fn criterion_11() -> Outcome {
    let f = parse_formula("[A](p;p|q) -> [A](p;p)").unwrap();
    let r = countermodel_search(&f, 2, 0, 100_000);
    let cm = r.countermodel.ok_or("no countermodel within two worlds")?;
    ensure(cm.parsed.len() <= 2, || "countermodel too large".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut instances = 0;
    for schema in Schema::ALL {
        for _ in 0..4 {
            let inst = schema.instance(&mut rng, 1);
            let r = countermodel_search(&inst, 3, instances, 3_000);
            ensure(!r.refuted(), || format!("{schema} instance {inst} refuted"))?;
            instances += 1;
        }
    }
    Ok(format!("refuted after {} models; {instances} axiom instances unrefuted", r.models_checked))
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("distribution pair", criterion_1),
        ("0/1 matrix pair", criterion_2),
        ("composition pair and congruence", criterion_3),
        ("representation round trip", criterion_4),
        ("forward conditions", criterion_5),
        ("equivalence hierarchy", criterion_6),
        ("axiom soundness", criterion_7),
        ("bisimulation invariance", criterion_8),
        ("algebra laws", criterion_9),
        ("composition semantics", criterion_10),
        ("refutation sanity", criterion_11),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("{} of 11 criteria passed in {:.2?}", 11 - failed, start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
