use std::collections::BTreeSet;
use std::fmt;

use crate::game::Player;

/// A formula of instantial game logic. Game logic is the fragment whose
/// boxes all have an empty instantial set.
///
/// Disjunction, implication and the constants are kept as syntax so that
/// printing round-trips, but they are evaluated through their definitions in
/// terms of negation and conjunction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    /// `[P](Ψ; φ)`: the player has a neighborhood inside `φ` meeting every
    /// member of `Ψ`.
    Box {
        player: Player,
        instances: BTreeSet<Formula>,
        scope: Box<Formula>,
    },
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn negate(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    /// `(l -> r) & (r -> l)`.
    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::and(Formula::implies(l.clone(), r.clone()), Formula::implies(r, l))
    }

    /// `[P]φ`.
    pub fn boxed(player: Player, scope: Formula) -> Self {
        Formula::instantial(player, [], scope)
    }

    /// `[P](ψ1,...,ψn; φ)`.
    pub fn instantial<I: IntoIterator<Item = Formula>>(player: Player, instances: I, scope: Formula) -> Self {
        Formula::Box {
            player,
            instances: instances.into_iter().collect(),
            scope: Box::new(scope),
        }
    }

    /// Right-nested disjunction of `fs`, `false` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(fs: I) -> Self {
        let mut fs: Vec<Formula> = fs.into_iter().collect();
        let Some(mut acc) = fs.pop() else {
            return Formula::False;
        };
        while let Some(f) = fs.pop() {
            acc = Formula::or(f, acc);
        }
        acc
    }

    /// Box nesting depth.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            Formula::Box {
                instances, scope, ..
            } => 1 + instances
                .iter()
                .map(Formula::modal_depth)
                .chain(std::iter::once(scope.modal_depth()))
                .max()
                .unwrap_or(0),
        }
    }

    /// Whether every box has an empty instantial set.
    pub fn is_game_logic(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => true,
            Formula::Not(f) => f.is_game_logic(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.is_game_logic() && r.is_game_logic()
            }
            Formula::Box {
                instances, scope, ..
            } => instances.is_empty() && scope.is_game_logic(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::True | Formula::False => {}
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            Formula::Box {
                instances, scope, ..
            } => {
                for f in instances {
                    f.collect_atoms(out);
                }
                scope.collect_atoms(out);
            }
        }
    }

    /// Replaces every occurrence of `from` by `to`.
    pub fn replace(&self, from: &Formula, to: &Formula) -> Formula {
        if self == from {
            return to.clone();
        }
        let r = |f: &Formula| Box::new(f.replace(from, to));
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => self.clone(),
            Formula::Not(f) => Formula::Not(r(f)),
            Formula::And(a, b) => Formula::And(r(a), r(b)),
            Formula::Or(a, b) => Formula::Or(r(a), r(b)),
            Formula::Implies(a, b) => Formula::Implies(r(a), r(b)),
            Formula::Box {
                player,
                instances,
                scope,
            } => Formula::Box {
                player: *player,
                instances: instances.iter().map(|f| f.replace(from, to)).collect(),
                scope: r(scope),
            },
        }
    }

    fn precedence(&self) -> u8 {
        // 1 implication, 2 disjunction, 3 conjunction, 4 unary, 5 atomic
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 5,
            Formula::Not(_) | Formula::Box { .. } => 4,
            Formula::And(..) => 3,
            Formula::Or(..) => 2,
            Formula::Implies(..) => 1,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        if self.precedence() < level {
            f.write_str("(")?;
            self.write_body(f)?;
            f.write_str(")")
        } else {
            self.write_body(f)
        }
    }

    fn write_body(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p) => f.write_str(p),
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Not(g) => {
                f.write_str("!")?;
                g.write_at(f, 4)
            }
            Formula::And(l, r) => {
                l.write_at(f, 3)?;
                f.write_str(" & ")?;
                r.write_at(f, 4)
            }
            Formula::Or(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" | ")?;
                r.write_at(f, 3)
            }
            Formula::Implies(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" -> ")?;
                r.write_at(f, 1)
            }
            Formula::Box {
                player,
                instances,
                scope,
            } => {
                write!(f, "[{player}]")?;
                if instances.is_empty() {
                    return scope.write_at(f, 4);
                }
                f.write_str("(")?;
                for (i, psi) in instances.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    psi.write_at(f, 1)?;
                }
                f.write_str("; ")?;
                scope.write_at(f, 1)?;
                f.write_str(")")
            }
        }
    }
}

/// Prints in the concrete syntax accepted by [`super::parse_formula`], with
/// as few parentheses as the precedences allow.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 1)
    }
}
