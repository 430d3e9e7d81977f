//! Sampled soundness checks for the axiom schemata of IGL and GL.

use std::collections::BTreeMap;

use rand::seq::IteratorRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::random::{random_formula, random_game_model, random_instantial_model};
use super::{model_check, model_check_exact, Formula};
use crate::game::Player;

const ATOMS: [&str; 3] = ["p", "q", "r"];

/// The axiom schemata. The first eight are checked on instantial game
/// models, the `Gl*` ones on game models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Schema {
    Mon,
    Weak,
    Un,
    Lem,
    Bot,
    NonEm,
    Inst,
    Cons,
    GlNonEm,
    GlMon,
    GlCons,
}

impl std::fmt::Display for Schema {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.name())
    }
}

impl Schema {
    pub const ALL: [Schema; 11] = [
        Schema::Mon,
        Schema::Weak,
        Schema::Un,
        Schema::Lem,
        Schema::Bot,
        Schema::NonEm,
        Schema::Inst,
        Schema::Cons,
        Schema::GlNonEm,
        Schema::GlMon,
        Schema::GlCons,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Schema::Mon => "mon",
            Schema::Weak => "weak",
            Schema::Un => "un",
            Schema::Lem => "lem",
            Schema::Bot => "bot",
            Schema::NonEm => "non-em",
            Schema::Inst => "inst",
            Schema::Cons => "cons",
            Schema::GlNonEm => "gl-non-em",
            Schema::GlMon => "gl-mon",
            Schema::GlCons => "gl-cons",
        }
    }

    pub fn is_game_logic(self) -> bool {
        matches!(self, Schema::GlNonEm | Schema::GlMon | Schema::GlCons)
    }

    /// A random instance with subformulas of modal depth at most `depth`.
    pub fn instance<R: Rng>(self, rng: &mut R, depth: usize) -> Formula {
        let gl = self.is_game_logic();
        let mut f = |rng: &mut R| random_formula(rng, &ATOMS, depth, gl);
        let p = if rng.gen_bool(0.5) { Player::A } else { Player::B };
        let psis = |rng: &mut R, f: &mut dyn FnMut(&mut R) -> Formula| -> Vec<Formula> {
            let k = rng.gen_range(0..=2);
            (0..k).map(|_| f(rng)).collect()
        };
        match self {
            Schema::Mon => {
                let ps = psis(rng, &mut f);
                let phi = f(rng);
                let weaker: Vec<Formula> = ps.iter().map(|psi| Formula::or(psi.clone(), f(rng))).collect();
                Formula::implies(
                    Formula::instantial(p, ps, phi.clone()),
                    Formula::instantial(p, weaker, Formula::or(phi, f(rng))),
                )
            }
            Schema::Weak => {
                let ps = psis(rng, &mut f);
                let phi = f(rng);
                let keep = rng.gen_range(0..=ps.len());
                let sub: Vec<Formula> = ps.iter().cloned().choose_multiple(rng, keep);
                Formula::implies(Formula::instantial(p, ps, phi.clone()), Formula::instantial(p, sub, phi))
            }
            Schema::Un => {
                let ps = psis(rng, &mut f);
                let phi = f(rng);
                let joined: Vec<Formula> = ps.iter().map(|psi| Formula::and(psi.clone(), phi.clone())).collect();
                Formula::implies(Formula::instantial(p, ps, phi.clone()), Formula::instantial(p, joined, phi))
            }
            Schema::Lem => {
                let ps = psis(rng, &mut f);
                let phi = f(rng);
                let gamma = f(rng);
                let mut with = ps.clone();
                with.push(gamma.clone());
                Formula::implies(
                    Formula::instantial(p, ps.clone(), phi.clone()),
                    Formula::or(
                        Formula::instantial(p, with, phi.clone()),
                        Formula::instantial(p, ps, Formula::and(phi, Formula::negate(gamma))),
                    ),
                )
            }
            Schema::Bot => Formula::negate(Formula::instantial(p, [Formula::False], f(rng))),
            Schema::NonEm | Schema::GlNonEm => Formula::boxed(p, Formula::True),
            Schema::Inst => {
                let psi = f(rng);
                Formula::iff(
                    Formula::instantial(p, [psi.clone()], Formula::True),
                    Formula::instantial(p.dual(), [psi], Formula::True),
                )
            }
            Schema::GlMon => {
                let phi = f(rng);
                let psi = f(rng);
                Formula::implies(Formula::boxed(p, phi.clone()), Formula::boxed(p, Formula::or(phi, psi)))
            }
            Schema::Cons | Schema::GlCons => {
                let phi = f(rng);
                Formula::implies(
                    Formula::boxed(p, phi.clone()),
                    Formula::negate(Formula::boxed(p.dual(), Formula::negate(phi))),
                )
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub sample: usize,
    pub schema: Schema,
    pub formula: String,
    pub model: serde_json::Value,
    pub worlds: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub samples: usize,
    pub per_schema: BTreeMap<Schema, usize>,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Instantiates the schemata in rotation with random subformulas of modal
/// depth at most two over three atoms and checks each instance on a fresh
/// random valid model with at most five worlds. Game-logic instances are
/// evaluated under both box readings.
pub fn axiom_soundness_suite(seed: u64, samples: usize) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_schema = BTreeMap::new();
    let mut violations = Vec::new();
    for sample in 0..samples {
        let schema = Schema::ALL[sample % Schema::ALL.len()];
        *per_schema.entry(schema).or_insert(0) += 1;
        let f = schema.instance(&mut rng, 2);
        let m = if schema.is_game_logic() {
            random_game_model(&mut rng, 5, &ATOMS)
        } else {
            random_instantial_model(&mut rng, 5, &ATOMS)
        };
        let mut ext = model_check(&m, &f);
        if schema.is_game_logic() {
            ext = ext.intersection(model_check_exact(&m, &f).expect("game-logic instance"));
        }
        if ext != m.all() {
            violations.push(AxiomViolation {
                sample,
                schema,
                formula: f.to_string(),
                model: m.to_json(),
                worlds: m.worlds().names(m.all().difference(ext)),
            });
        }
    }
    AxiomReport {
        seed,
        samples,
        per_schema,
        violations,
    }
}
