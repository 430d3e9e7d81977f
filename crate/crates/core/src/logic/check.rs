use super::{Formula, NeighborhoodModel};
use crate::outcome::OutcomeSet;

/// The extension of `f` in `m`.
///
/// `u` satisfies `[P](ψ1..ψn; φ)` iff some neighborhood `Z` of `u` for `P`
/// lies inside the extension of `φ` and meets the extension of every `ψi`.
pub fn model_check(m: &NeighborhoodModel, f: &Formula) -> OutcomeSet {
    let all = m.all();
    match f {
        Formula::Atom(p) => m.atom(p).intersection(all),
        Formula::True => all,
        Formula::False => OutcomeSet::EMPTY,
        Formula::Not(g) => model_check(m, g).complement_in(all),
        Formula::And(l, r) => model_check(m, l).intersection(model_check(m, r)),
        // l | r  =  !(!l & !r)
        Formula::Or(l, r) => model_check(m, l).union(model_check(m, r)),
        // l -> r  =  !(l & !r)
        Formula::Implies(l, r) => model_check(m, l).complement_in(all).union(model_check(m, r)),
        Formula::Box {
            player,
            instances,
            scope,
        } => {
            let inside = model_check(m, scope);
            let hits: Vec<OutcomeSet> = instances.iter().map(|g| model_check(m, g)).collect();
            OutcomeSet::from_indices((0..m.len()).filter(|&u| {
                m.neighborhoods(*player, u)
                    .iter()
                    .any(|z| z.is_subset(inside) && hits.iter().all(|h| z.intersects(*h)))
            }))
        }
    }
}

/// Game-logic truth through the inverse image of the neighborhood relation:
/// `u` satisfies `[P]φ` iff the extension of `φ` is itself a neighborhood of
/// `u`. Returns `None` for formulas outside game logic.
pub fn model_check_exact(m: &NeighborhoodModel, f: &Formula) -> Option<OutcomeSet> {
    let all = m.all();
    Some(match f {
        Formula::Atom(p) => m.atom(p).intersection(all),
        Formula::True => all,
        Formula::False => OutcomeSet::EMPTY,
        Formula::Not(g) => model_check_exact(m, g)?.complement_in(all),
        Formula::And(l, r) => model_check_exact(m, l)?.intersection(model_check_exact(m, r)?),
        Formula::Or(l, r) => model_check_exact(m, l)?.union(model_check_exact(m, r)?),
        Formula::Implies(l, r) => model_check_exact(m, l)?
            .complement_in(all)
            .union(model_check_exact(m, r)?),
        Formula::Box {
            player,
            instances,
            scope,
        } => {
            if !instances.is_empty() {
                return None;
            }
            let ext = model_check_exact(m, scope)?;
            OutcomeSet::from_indices((0..m.len()).filter(|&u| m.neighborhoods(*player, u).contains(&ext)))
        }
    })
}

/// Whether `f` holds at every world of `m`.
pub fn valid_in(m: &NeighborhoodModel, f: &Formula) -> bool {
    model_check(m, f) == m.all()
}
