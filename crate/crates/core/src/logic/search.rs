//! Bounded search for instantial game models refuting a formula.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::random::random_instantial_model;
use super::{model_check, Formula, NeighborhoodModel};
use crate::game::{odometer, Player};
use crate::outcome::{nonempty_subsets, OutcomeSet, Outcomes};
use crate::powers::{check_conditions, PowerFamily};

/// A pointed model where the formula fails.
#[derive(Clone, Debug, Serialize)]
pub struct Countermodel {
    pub model: serde_json::Value,
    pub world: String,
    #[serde(skip)]
    pub parsed: NeighborhoodModel,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub formula: String,
    /// Models evaluated, including those of the exhaustive phase.
    pub models_checked: u64,
    /// Whether every model of the exhaustive phase was examined.
    pub exhaustive_complete: bool,
    pub countermodel: Option<Countermodel>,
}

impl SearchReport {
    pub fn refuted(&self) -> bool {
        self.countermodel.is_some()
    }
}

/// Largest number of neighborhoods per player and world in the exhaustive
/// phase, indexed by world count.
const FAMILY_CAP: [usize; 4] = [0, 2, 2, 1];

/// Looks for a valid instantial game model falsifying `f`.
///
/// All models with at most three worlds (and at most `max_worlds`) are tried
/// first, with the number of neighborhoods per world capped and every
/// valuation of the atoms of `f`. Then random models with up to
/// `max_worlds` worlds are drawn from `seed`. `budget` bounds the total
/// number of models evaluated. Not finding a countermodel proves nothing.
pub fn countermodel_search(f: &Formula, max_worlds: usize, seed: u64, budget: u64) -> SearchReport {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let atom_refs: Vec<&str> = atoms.iter().map(String::as_str).collect();
    let mut checked = 0u64;
    let report = |checked: u64, complete: bool, found: Option<(NeighborhoodModel, usize)>| SearchReport {
        formula: f.to_string(),
        models_checked: checked,
        exhaustive_complete: complete,
        countermodel: found.map(|(m, w)| Countermodel {
            model: m.to_json(),
            world: m.worlds().label(w).to_string(),
            parsed: m,
        }),
    };
    let refutes = |m: &NeighborhoodModel| model_check(m, f).complement_in(m.all()).min();

    for (n, &cap) in FAMILY_CAP.iter().enumerate().skip(1).take(max_worlds) {
        let worlds = Outcomes::new((1..=n).map(|i| format!("w{i}"))).expect("fresh names");
        let pairs = legal_pairs(&worlds, cap);
        for frame in odometer(vec![pairs.len(); n]) {
            let mut m = NeighborhoodModel::new(worlds.clone());
            for (w, &k) in frame.iter().enumerate() {
                m.set_neighborhoods(Player::A, w, pairs[k].0.iter().copied());
                m.set_neighborhoods(Player::B, w, pairs[k].1.iter().copied());
            }
            for val in odometer(vec![1usize << n; atoms.len()]) {
                if checked >= budget {
                    return report(checked, false, None);
                }
                checked += 1;
                for (p, &bits) in atoms.iter().zip(&val) {
                    m.set_atom(p.clone(), OutcomeSet(bits as u64));
                }
                if let Some(w) = refutes(&m) {
                    return report(checked, false, Some((m, w)));
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while checked < budget && max_worlds > 0 {
        checked += 1;
        let m = random_instantial_model(&mut rng, max_worlds, &atom_refs);
        if let Some(w) = refutes(&m) {
            return report(checked, true, Some((m, w)));
        }
    }
    report(checked, true, None)
}

type Family = Vec<OutcomeSet>;

/// Every pair of families with at most `cap` members each that is legal at
/// a single world.
fn legal_pairs(worlds: &Outcomes, cap: usize) -> Vec<(Family, Family)> {
    let subsets = nonempty_subsets(worlds.full());
    let mut families: Vec<Family> = Vec::new();
    for size in 1..=cap {
        for pick in odometer(vec![subsets.len(); size]) {
            if pick.windows(2).all(|w| w[0] < w[1]) {
                families.push(pick.iter().map(|&i| subsets[i]).collect());
            }
        }
    }
    let mut out = Vec::new();
    for fa in &families {
        for fb in &families {
            let a = PowerFamily::new(worlds.clone(), fa.iter().copied()).expect("world sets");
            let b = PowerFamily::new(worlds.clone(), fb.iter().copied()).expect("world sets");
            let (pa, pb) = check_conditions(&a, &b).expect("same worlds");
            if pa.basic_ok() && pb.basic_ok() {
                out.push((fa.clone(), fb.clone()));
            }
        }
    }
    out
}
