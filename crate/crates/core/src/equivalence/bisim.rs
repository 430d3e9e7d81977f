//! Power and instantial bisimulation between neighborhood models.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{EquivalenceVerdict, RelationKind, VerdictWitness};
use crate::game::Player;
use crate::logic::NeighborhoodModel;
use crate::outcome::{OutcomeSet, Outcomes, Relation};
use crate::powers::{egli_milner, upward_closure, PowerFamily};

/// The greatest bisimulation between two models, with the reason each
/// removed pair was dropped.
#[derive(Clone, Debug)]
pub struct Bisimulation {
    pub relation: Relation,
    reasons: Vec<Option<String>>,
    right_len: usize,
}

impl Bisimulation {
    pub fn related(&self, w1: usize, w2: usize) -> bool {
        self.relation.contains(w1, w2)
    }

    /// Why `(w1, w2)` is not related, if it is not.
    pub fn reason(&self, w1: usize, w2: usize) -> Option<&str> {
        self.reasons[w1 * self.right_len + w2].as_deref()
    }
}

fn forth_back(b: &Relation, z: OutcomeSet, z2: OutcomeSet) -> bool {
    z2.is_subset(b.image(z))
}

fn back_forth(b: &Relation, z: OutcomeSet, z2: OutcomeSet) -> bool {
    z.is_subset(b.preimage(z2))
}

/// Refines the atom-agreeing world pairs to the greatest power bisimulation
/// (`instantial = false`) or instantial bisimulation (`instantial = true`).
pub fn greatest_bisimulation(m1: &NeighborhoodModel, m2: &NeighborhoodModel, instantial: bool) -> Bisimulation {
    let (n1, n2) = (m1.len(), m2.len());
    let atoms: BTreeSet<&String> = m1.valuation().keys().chain(m2.valuation().keys()).collect();
    let mut relation = Relation::empty(n1, n2);
    let mut reasons = vec![None; n1 * n2];
    for u in 0..n1 {
        for v in 0..n2 {
            match atoms.iter().find(|p| m1.atom(p).contains(u) != m2.atom(p).contains(v)) {
                Some(p) => reasons[u * n2 + v] = Some(format!("atom {p} differs")),
                None => relation.insert(u, v),
            }
        }
    }
    let forth_ok = |b: &Relation, z: OutcomeSet, z2: OutcomeSet| {
        if instantial {
            egli_milner(b, z, z2)
        } else {
            forth_back(b, z, z2)
        }
    };
    let back_ok = |b: &Relation, z: OutcomeSet, z2: OutcomeSet| {
        if instantial {
            egli_milner(b, z, z2)
        } else {
            back_forth(b, z, z2)
        }
    };
    loop {
        let mut drop = Vec::new();
        for (u, v) in relation.pairs() {
            for p in Player::BOTH {
                let r1 = m1.neighborhoods(p, u);
                let r2 = m2.neighborhoods(p, v);
                if let Some(z) = r1.iter().find(|&&z| !r2.iter().any(|&z2| forth_ok(&relation, z, z2))) {
                    drop.push((u, v, format!("forth fails for {p} at {}", m1.worlds().show(*z))));
                    break;
                }
                if let Some(z2) = r2.iter().find(|&&z2| !r1.iter().any(|&z| back_ok(&relation, z, z2))) {
                    drop.push((u, v, format!("back fails for {p} at {}", m2.worlds().show(*z2))));
                    break;
                }
            }
        }
        if drop.is_empty() {
            break;
        }
        for (u, v, why) in drop {
            relation.remove(u, v);
            reasons[u * n2 + v] = Some(why);
        }
    }
    Bisimulation {
        relation,
        reasons,
        right_len: n2,
    }
}

fn verdict(
    m1: &NeighborhoodModel,
    w1: usize,
    m2: &NeighborhoodModel,
    w2: usize,
    instantial: bool,
) -> EquivalenceVerdict {
    let b = greatest_bisimulation(m1, m2, instantial);
    let relation = if instantial {
        RelationKind::InstantialBisimulation
    } else {
        RelationKind::PowerBisimulation
    };
    let witness = if b.related(w1, w2) {
        VerdictWitness::Bisimulation {
            pairs: b
                .relation
                .pairs()
                .map(|(u, v)| (m1.worlds().label(u).to_string(), m2.worlds().label(v).to_string()))
                .collect(),
        }
    } else {
        VerdictWitness::Worlds {
            left: m1.worlds().label(w1).to_string(),
            right: m2.worlds().label(w2).to_string(),
            reason: b.reason(w1, w2).unwrap_or_default().to_string(),
        }
    };
    EquivalenceVerdict {
        relation,
        verdict: b.related(w1, w2),
        witness: Some(witness),
    }
}

/// Whether `(m1, w1)` and `(m2, w2)` are power bisimilar.
pub fn power_bisimilar(m1: &NeighborhoodModel, w1: usize, m2: &NeighborhoodModel, w2: usize) -> EquivalenceVerdict {
    verdict(m1, w1, m2, w2, false)
}

/// Whether `(m1, w1)` and `(m2, w2)` are instantially bisimilar.
pub fn instantial_bisimilar(m1: &NeighborhoodModel, w1: usize, m2: &NeighborhoodModel, w2: usize) -> EquivalenceVerdict {
    verdict(m1, w1, m2, w2, true)
}

/// A model with two copies `w.0`, `w.1` of every world `w`, bisimilar to `m`
/// via the projection. Each neighborhood `Z` of `w` becomes one or two random
/// lifts: sets projecting exactly onto `Z`. With `monotone` the lifted
/// families are closed upward, which keeps the projection a power
/// bisimulation when `m` is a game model; otherwise it is an instantial
/// bisimulation.
///
/// Returns the copy and, for each world of the copy, the world it projects
/// to.
pub fn random_bisimilar_copy<R: Rng>(rng: &mut R, m: &NeighborhoodModel, monotone: bool) -> (NeighborhoodModel, Vec<usize>) {
    let n = m.len();
    let names: Vec<String> = (0..2 * n)
        .map(|i| format!("{}.{}", m.worlds().label(i / 2), i % 2))
        .collect();
    let worlds = Outcomes::new(names.iter().cloned()).expect("copies are distinct");
    let index: Vec<usize> = names.iter().map(|s| worlds.index_of(s).expect("copy")).collect();
    let mut proj = vec![0; 2 * n];
    for (i, &k) in index.iter().enumerate() {
        proj[k] = i / 2;
    }
    let mut c = NeighborhoodModel::new(worlds.clone());
    let lift = |rng: &mut R, z: OutcomeSet| {
        OutcomeSet::from_indices(z.iter().flat_map(|w| {
            let both = [index[2 * w], index[2 * w + 1]];
            let k = rng.gen_range(1..=2);
            both.choose_multiple(rng, k).copied().collect::<Vec<_>>()
        }))
    };
    for (u, &pu) in proj.iter().enumerate() {
        for p in Player::BOTH {
            let mut sets = Vec::new();
            for &z in m.neighborhoods(p, pu) {
                for _ in 0..rng.gen_range(1..=2) {
                    sets.push(lift(rng, z));
                }
            }
            if monotone {
                let fam = PowerFamily::new(worlds.clone(), sets).expect("world sets");
                sets = upward_closure(&fam).iter().collect();
            }
            c.set_neighborhoods(p, u, sets);
        }
    }
    for (p, &ext) in m.valuation() {
        c.set_atom(p.clone(), OutcomeSet::from_indices((0..2 * n).filter(|&u| ext.contains(proj[u]))));
    }
    (c, proj)
}
