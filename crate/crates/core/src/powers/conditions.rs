use serde::Serialize;

use super::PowerFamily;
use crate::error::Result;
use crate::game::Player;
use crate::outcome::{OutcomeSet, Outcomes, Relation};

/// A concrete counterexample to one condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// The player's family has no members.
    EmptyFamily,
    /// `member` is in the family but its superset `superset` is not.
    MissingSuperset {
        member: Vec<String>,
        superset: Vec<String>,
    },
    /// An A-member and a B-member with empty intersection.
    DisjointPair { a: Vec<String>, b: Vec<String> },
    /// Neither `set` is in the player's family nor `complement` in the
    /// opponent's.
    Undetermined {
        set: Vec<String>,
        complement: Vec<String>,
    },
    /// `element` of `member` lies in no member of the opponent's family.
    Uninstantiated { member: Vec<String>, element: String },
    /// The union of `parts` is missing from the family.
    MissingUnion {
        parts: Vec<Vec<String>>,
        union: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    fn from_witness(witness: Option<Witness>) -> Self {
        Check {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// The six family conditions, decided for one player of a pair `(F_A, F_B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionProfile {
    pub player: Player,
    pub non_emptiness: Check,
    pub monotonicity: Check,
    pub consistency: Check,
    pub determinacy: Check,
    pub instantiatedness: Check,
    pub union_closure: Check,
}

impl ConditionProfile {
    /// Non-emptiness, Monotonicity and Consistency.
    pub fn plain_ok(&self) -> bool {
        self.non_emptiness.holds && self.monotonicity.holds && self.consistency.holds
    }

    /// Non-emptiness, Instantiatedness and Consistency.
    pub fn basic_ok(&self) -> bool {
        self.non_emptiness.holds && self.instantiatedness.holds && self.consistency.holds
    }

    /// The basic conditions plus Union Closure.
    pub fn relational_ok(&self) -> bool {
        self.basic_ok() && self.union_closure.holds
    }

    pub fn all_ok(&self) -> bool {
        self.plain_ok() && self.basic_ok() && self.determinacy.holds && self.union_closure.holds
    }
}

/// Decides every condition for both players by exhaustive search. Witnesses
/// are the first counterexamples in canonical order.
pub fn check_conditions(
    fa: &PowerFamily,
    fb: &PowerFamily,
) -> Result<(ConditionProfile, ConditionProfile)> {
    fa.outcomes().ensure_same(fb.outcomes())?;
    let o = fa.outcomes();
    let consistency = Check::from_witness(consistency_witness(o, fa, fb));
    let profile = |player: Player, own: &PowerFamily, other: &PowerFamily| ConditionProfile {
        player,
        non_emptiness: Check::from_witness(own.is_empty().then_some(Witness::EmptyFamily)),
        monotonicity: Check::from_witness(monotonicity_witness(o, own)),
        consistency: consistency.clone(),
        determinacy: Check::from_witness(determinacy_witness(o, own, other)),
        instantiatedness: Check::from_witness(instantiatedness_witness(o, own, other)),
        union_closure: Check::from_witness(union_witness(o, own)),
    };
    Ok((profile(Player::A, fa, fb), profile(Player::B, fb, fa)))
}

fn monotonicity_witness(o: &Outcomes, f: &PowerFamily) -> Option<Witness> {
    let full = o.full();
    for m in f.iter() {
        let mut supers: Vec<OutcomeSet> = m.supersets_within(full).collect();
        supers.sort();
        if let Some(q) = supers.into_iter().find(|q| !f.contains(*q)) {
            return Some(Witness::MissingSuperset {
                member: o.names(m),
                superset: o.names(q),
            });
        }
    }
    None
}

fn consistency_witness(o: &Outcomes, fa: &PowerFamily, fb: &PowerFamily) -> Option<Witness> {
    for p in fa.iter() {
        if let Some(q) = fb.iter().find(|q| !p.intersects(*q)) {
            return Some(Witness::DisjointPair {
                a: o.names(p),
                b: o.names(q),
            });
        }
    }
    None
}

fn determinacy_witness(o: &Outcomes, own: &PowerFamily, other: &PowerFamily) -> Option<Witness> {
    let full = o.full();
    let mut all: Vec<OutcomeSet> = full.subsets().collect();
    all.sort();
    all.into_iter()
        .find(|&p| !own.contains(p) && !other.contains(p.complement_in(full)))
        .map(|p| Witness::Undetermined {
            set: o.names(p),
            complement: o.names(p.complement_in(full)),
        })
}

fn instantiatedness_witness(
    o: &Outcomes,
    own: &PowerFamily,
    other: &PowerFamily,
) -> Option<Witness> {
    let covered = other.iter().fold(OutcomeSet::EMPTY, OutcomeSet::union);
    own.iter().find_map(|m| {
        m.difference(covered).min().map(|x| Witness::Uninstantiated {
            member: o.names(m),
            element: o.label(x).to_string(),
        })
    })
}

// Closure under binary unions is equivalent to closure under unions of all
// nonempty finite subfamilies.
fn union_witness(o: &Outcomes, f: &PowerFamily) -> Option<Witness> {
    for x in f.iter() {
        for y in f.iter() {
            let u = x.union(y);
            if !f.contains(u) {
                return Some(Witness::MissingUnion {
                    parts: vec![o.names(x), o.names(y)],
                    union: o.names(u),
                });
            }
        }
    }
    None
}

/// Egli-Milner lifting: every element of `z1` has an `r`-successor in `z2`
/// and every element of `z2` has an `r`-predecessor in `z1`.
pub fn egli_milner(r: &Relation, z1: OutcomeSet, z2: OutcomeSet) -> bool {
    z1.iter().all(|x| r.successors(x).intersects(z2)) && z2.is_subset(r.image(z1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(o: &Outcomes, sets: &[&[&str]]) -> PowerFamily {
        PowerFamily::from_labels(o.clone(), sets).unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn distribution_pair_left_matrix_families() {
        let o = Outcomes::new(["1", "2", "3"]).unwrap();
        let fa = fam(&o, &[&["1"], &["2", "3"]]);
        let fb = fam(&o, &[&["1", "2"], &["1", "3"]]);
        let (a, b) = check_conditions(&fa, &fb).unwrap();
        assert!(a.non_emptiness.holds && b.non_emptiness.holds);
        assert!(a.consistency.holds && b.consistency.holds);
        assert!(a.instantiatedness.holds && b.instantiatedness.holds);
        assert!(!a.monotonicity.holds);
        assert_eq!(
            a.monotonicity.witness,
            Some(Witness::MissingSuperset {
                member: names(&["1"]),
                superset: names(&["1", "2"]),
            })
        );
        assert!(a.basic_ok() && b.basic_ok());
    }

    #[test]
    fn whole_set_families_satisfy_everything() {
        let o = Outcomes::new(["x"]).unwrap();
        let f = fam(&o, &[&["x"]]);
        let (a, b) = check_conditions(&f, &f).unwrap();
        assert!(a.all_ok() && b.all_ok());
    }

    #[test]
    fn whole_set_families_are_undetermined_beyond_one_outcome() {
        let o = Outcomes::new(["1", "2"]).unwrap();
        let f = fam(&o, &[&["1", "2"]]);
        let (a, _) = check_conditions(&f, &f).unwrap();
        assert!(a.plain_ok() && a.relational_ok());
        assert_eq!(
            a.determinacy.witness,
            Some(Witness::Undetermined {
                set: names(&["1"]),
                complement: names(&["2"]),
            })
        );
    }

    #[test]
    fn disjoint_families_are_inconsistent() {
        let o = Outcomes::new(["1", "2"]).unwrap();
        let (a, _) = check_conditions(&fam(&o, &[&["1"]]), &fam(&o, &[&["2"]])).unwrap();
        assert_eq!(
            a.consistency.witness,
            Some(Witness::DisjointPair {
                a: names(&["1"]),
                b: names(&["2"]),
            })
        );
        assert!(!a.instantiatedness.holds);
    }

    #[test]
    fn empty_family_and_missing_union() {
        let o = Outcomes::new(["x", "y"]).unwrap();
        let (a, b) = check_conditions(&PowerFamily::empty(o.clone()), &fam(&o, &[&["x"], &["y"]])).unwrap();
        assert_eq!(a.non_emptiness.witness, Some(Witness::EmptyFamily));
        assert_eq!(
            b.union_closure.witness,
            Some(Witness::MissingUnion {
                parts: vec![names(&["x"]), names(&["y"])],
                union: names(&["x", "y"]),
            })
        );
    }

    #[test]
    fn mismatched_outcomes_rejected() {
        let f = fam(&Outcomes::new(["x"]).unwrap(), &[&["x"]]);
        let g = fam(&Outcomes::new(["y"]).unwrap(), &[&["y"]]);
        assert!(check_conditions(&f, &g).is_err());
    }

    #[test]
    fn egli_milner_cases() {
        let id = Relation::identity(3);
        for z in OutcomeSet::full(3).subsets() {
            assert!(egli_milner(&id, z, z));
        }
        assert!(!egli_milner(&id, OutcomeSet::EMPTY, OutcomeSet::singleton(0)));
        // r = {(1,a),(2,a)} with 1,2 at indices 0,1 and a at index 0
        let r = Relation::from_pairs(2, 1, [(0, 0), (1, 0)]);
        assert!(egli_milner(&r, OutcomeSet::full(2), OutcomeSet::singleton(0)));
        assert!(!egli_milner(&r, OutcomeSet::full(2), OutcomeSet::EMPTY));
    }
}
