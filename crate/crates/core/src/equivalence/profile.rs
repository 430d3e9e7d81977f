//! Strategy profile bisimulation between strategic forms.

use super::{EquivalenceVerdict, RelationKind, Side, VerdictWitness};
use crate::error::{Error, Result};
use crate::game::StrategicGame;

/// Largest number of profile pairs the refinement will allocate.
pub const MAX_PROFILE_PAIRS: u128 = 1 << 26;

/// The greatest strategy profile bisimulation between two strategic games.
#[derive(Clone, Debug)]
pub struct ProfileBisimulation {
    rows: (usize, usize),
    cols: (usize, usize),
    related: Vec<bool>,
    /// Refinement rounds until the relation was stable.
    pub rounds: usize,
}

impl ProfileBisimulation {
    fn index(&self, s1: usize, t1: usize, s2: usize, t2: usize) -> usize {
        ((s1 * self.cols.0 + t1) * self.rows.1 + s2) * self.cols.1 + t2
    }

    pub fn contains(&self, p1: (usize, usize), p2: (usize, usize)) -> bool {
        self.related[self.index(p1.0, p1.1, p2.0, p2.1)]
    }

    /// Related profile pairs in row-major order.
    pub fn pairs(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        for s1 in 0..self.rows.0 {
            for t1 in 0..self.cols.0 {
                for s2 in 0..self.rows.1 {
                    for t2 in 0..self.cols.1 {
                        if self.related[self.index(s1, t1, s2, t2)] {
                            out.push(((s1, t1), (s2, t2)));
                        }
                    }
                }
            }
        }
        out
    }

    /// Profiles of the left game related to nothing.
    pub fn unmatched_left(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s1 in 0..self.rows.0 {
            for t1 in 0..self.cols.0 {
                let any = (0..self.rows.1).any(|s2| (0..self.cols.1).any(|t2| self.contains((s1, t1), (s2, t2))));
                if !any {
                    out.push((s1, t1));
                }
            }
        }
        out
    }

    /// Profiles of the right game related to nothing.
    pub fn unmatched_right(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for s2 in 0..self.rows.1 {
            for t2 in 0..self.cols.1 {
                let any = (0..self.rows.0).any(|s1| (0..self.cols.0).any(|t1| self.contains((s1, t1), (s2, t2))));
                if !any {
                    out.push((s2, t2));
                }
            }
        }
        out
    }
}

/// Refines the outcome-agreeing profile pairs until the Forth and Back
/// clauses for both players hold everywhere.
///
/// The A-clauses of a pair only involve its columns `(t1, t2)`: with those
/// fixed, the relation must be total and surjective between rows. Dually
/// for B. Each round therefore recomputes one flag per column pair and per
/// row pair and drops every pair with a failing flag.
pub fn profile_bisimulation(g1: &StrategicGame, g2: &StrategicGame) -> Result<ProfileBisimulation> {
    g1.outcomes().ensure_same(g2.outcomes())?;
    let rows = (g1.rows().len(), g2.rows().len());
    let cols = (g1.cols().len(), g2.cols().len());
    let total = (rows.0 * cols.0) as u128 * (rows.1 * cols.1) as u128;
    if total > MAX_PROFILE_PAIRS {
        return Err(Error::TooManyStrategies {
            count: total,
            limit: MAX_PROFILE_PAIRS,
        });
    }
    let mut b = ProfileBisimulation {
        rows,
        cols,
        related: vec![false; total as usize],
        rounds: 0,
    };
    for s1 in 0..rows.0 {
        for t1 in 0..cols.0 {
            for s2 in 0..rows.1 {
                for t2 in 0..cols.1 {
                    let i = b.index(s1, t1, s2, t2);
                    b.related[i] = g1.outcome(s1, t1) == g2.outcome(s2, t2);
                }
            }
        }
    }
    loop {
        b.rounds += 1;
        // columns fixed, rows vary
        let mut col_ok = vec![true; cols.0 * cols.1];
        for t1 in 0..cols.0 {
            for t2 in 0..cols.1 {
                let forth = (0..rows.0).all(|s1| (0..rows.1).any(|s2| b.contains((s1, t1), (s2, t2))));
                let back = (0..rows.1).all(|s2| (0..rows.0).any(|s1| b.contains((s1, t1), (s2, t2))));
                col_ok[t1 * cols.1 + t2] = forth && back;
            }
        }
        let mut row_ok = vec![true; rows.0 * rows.1];
        for s1 in 0..rows.0 {
            for s2 in 0..rows.1 {
                let forth = (0..cols.0).all(|t1| (0..cols.1).any(|t2| b.contains((s1, t1), (s2, t2))));
                let back = (0..cols.1).all(|t2| (0..cols.0).any(|t1| b.contains((s1, t1), (s2, t2))));
                row_ok[s1 * rows.1 + s2] = forth && back;
            }
        }
        let mut changed = false;
        for s1 in 0..rows.0 {
            for t1 in 0..cols.0 {
                for s2 in 0..rows.1 {
                    for t2 in 0..cols.1 {
                        let i = b.index(s1, t1, s2, t2);
                        if b.related[i] && !(col_ok[t1 * cols.1 + t2] && row_ok[s1 * rows.1 + s2]) {
                            b.related[i] = false;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return Ok(b);
        }
    }
}

/// True iff the greatest profile bisimulation relates every profile of each
/// game to some profile of the other.
pub fn strategic_form_equivalent(g1: &StrategicGame, g2: &StrategicGame) -> Result<EquivalenceVerdict> {
    let b = profile_bisimulation(g1, g2)?;
    let left = b.unmatched_left();
    let right = b.unmatched_right();
    let witness = if let Some(&(s, t)) = right.first() {
        Some(VerdictWitness::Profile {
            side: Side::Right,
            row: g2.rows()[s].clone(),
            col: g2.cols()[t].clone(),
        })
    } else {
        left.first().map(|&(s, t)| VerdictWitness::Profile {
            side: Side::Left,
            row: g1.rows()[s].clone(),
            col: g1.cols()[t].clone(),
        })
    };
    if witness.is_some() {
        return Ok(EquivalenceVerdict {
            relation: RelationKind::Strategic,
            verdict: false,
            witness,
        });
    }
    let show = |g: &StrategicGame, (s, t): (usize, usize)| format!("({},{})", g.rows()[s], g.cols()[t]);
    Ok(EquivalenceVerdict {
        relation: RelationKind::Strategic,
        verdict: true,
        witness: Some(VerdictWitness::Bisimulation {
            pairs: b.pairs().into_iter().map(|(p1, p2)| (show(g1, p1), show(g2, p2))).collect(),
        }),
    })
}
