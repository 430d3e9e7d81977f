//! Game equivalences, strategy bisimulation and the bisimulations of
//! neighborhood models.

mod bisim;
mod profile;

use std::borrow::Cow;

use serde::Serialize;

use crate::error::Result;
use crate::game::{to_strategic_form, AnyGameFile, ExtensiveGame, Player, StrategicGame};
use crate::outcome::{OutcomeSet, Outcomes, Relation};
use crate::powers::{egli_milner, PowerFamily, PowerKind, PowerSource};

pub use bisim::{greatest_bisimulation, instantial_bisimilar, power_bisimilar, random_bisimilar_copy, Bisimulation};
pub use profile::{profile_bisimulation, strategic_form_equivalent, ProfileBisimulation};

/// Which equivalence a verdict is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Power,
    Strong,
    Semi,
    Strategic,
    PowerBisimulation,
    InstantialBisimulation,
}

impl std::str::FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "power" => Ok(RelationKind::Power),
            "strong" => Ok(RelationKind::Strong),
            "semi" => Ok(RelationKind::Semi),
            "strategic" => Ok(RelationKind::Strategic),
            other => Err(format!("unknown relation `{other}`")),
        }
    }
}

/// Which game of a pair a witness refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerdictWitness {
    /// A family member of one game missing from the other.
    Power {
        player: Player,
        set: Vec<String>,
        present_in: Side,
    },
    /// A profile related to no profile of the other game.
    Profile { side: Side, row: String, col: String },
    /// A world pair outside the greatest bisimulation.
    Worlds {
        left: String,
        right: String,
        reason: String,
    },
    /// The computed relation, as related pairs.
    Bisimulation { pairs: Vec<(String, String)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub relation: RelationKind,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<VerdictWitness>,
}

/// A game in either presentation.
#[derive(Clone, Debug)]
pub enum Game {
    Extensive(ExtensiveGame),
    Strategic(StrategicGame),
}

impl Game {
    /// Reads either JSON game format.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(match serde_json::from_str::<AnyGameFile>(text)? {
            AnyGameFile::Extensive(f) => Game::Extensive(f.to_game()?),
            AnyGameFile::Strategic(f) => Game::Strategic(f.to_game()?),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Game::Extensive(g) => g.to_json(),
            Game::Strategic(g) => g.to_json(),
        }
    }

    pub fn strategic_form(&self) -> Result<Cow<'_, StrategicGame>> {
        match self {
            Game::Extensive(g) => Ok(Cow::Owned(to_strategic_form(g)?)),
            Game::Strategic(g) => Ok(Cow::Borrowed(g)),
        }
    }
}

impl From<ExtensiveGame> for Game {
    fn from(g: ExtensiveGame) -> Self {
        Game::Extensive(g)
    }
}

impl From<StrategicGame> for Game {
    fn from(g: StrategicGame) -> Self {
        Game::Strategic(g)
    }
}

impl PowerSource for Game {
    fn outcomes(&self) -> &Outcomes {
        match self {
            Game::Extensive(g) => g.outcomes(),
            Game::Strategic(g) => g.outcomes(),
        }
    }

    fn basic_powers(&self, player: Player) -> PowerFamily {
        match self {
            Game::Extensive(g) => g.basic_powers(player),
            Game::Strategic(g) => g.basic_powers(player),
        }
    }

    fn relational_basic_powers(&self, player: Player) -> PowerFamily {
        match self {
            Game::Extensive(g) => g.relational_basic_powers(player),
            Game::Strategic(g) => g.relational_basic_powers(player),
        }
    }

    fn powers(&self, player: Player) -> PowerFamily {
        match self {
            Game::Extensive(g) => g.powers(player),
            Game::Strategic(g) => g.powers(player),
        }
    }
}

fn compare_families<G1, G2>(g1: &G1, g2: &G2, kind: PowerKind, relation: RelationKind) -> Result<EquivalenceVerdict>
where
    G1: PowerSource + ?Sized,
    G2: PowerSource + ?Sized,
{
    g1.outcomes().ensure_same(g2.outcomes())?;
    for player in Player::BOTH {
        let f1 = crate::powers::powers_of(g1, player, kind);
        let f2 = crate::powers::powers_of(g2, player, kind);
        if let Some(&set) = f1.symmetric_difference(&f2).first() {
            let present_in = if f1.contains(set) { Side::Left } else { Side::Right };
            return Ok(EquivalenceVerdict {
                relation,
                verdict: false,
                witness: Some(VerdictWitness::Power {
                    player,
                    set: g1.outcomes().names(set),
                    present_in,
                }),
            });
        }
    }
    Ok(EquivalenceVerdict {
        relation,
        verdict: true,
        witness: None,
    })
}

/// Equal powers for both players.
pub fn power_equivalent<G1, G2>(g1: &G1, g2: &G2) -> Result<EquivalenceVerdict>
where
    G1: PowerSource + ?Sized,
    G2: PowerSource + ?Sized,
{
    compare_families(g1, g2, PowerKind::Plain, RelationKind::Power)
}

/// Equal basic powers for both players.
pub fn strongly_power_equivalent<G1, G2>(g1: &G1, g2: &G2) -> Result<EquivalenceVerdict>
where
    G1: PowerSource + ?Sized,
    G2: PowerSource + ?Sized,
{
    compare_families(g1, g2, PowerKind::Basic, RelationKind::Strong)
}

/// Equal relational basic powers for both players.
pub fn semi_strongly_equivalent<G1, G2>(g1: &G1, g2: &G2) -> Result<EquivalenceVerdict>
where
    G1: PowerSource + ?Sized,
    G2: PowerSource + ?Sized,
{
    compare_families(g1, g2, PowerKind::Relational, RelationKind::Semi)
}

/// Decides one of the four game equivalences.
pub fn game_equivalence(g1: &Game, g2: &Game, relation: RelationKind) -> Result<EquivalenceVerdict> {
    match relation {
        RelationKind::Power => power_equivalent(g1, g2),
        RelationKind::Strong => strongly_power_equivalent(g1, g2),
        RelationKind::Semi => semi_strongly_equivalent(g1, g2),
        RelationKind::Strategic => strategic_form_equivalent(&*g1.strategic_form()?, &*g2.strategic_form()?),
        RelationKind::PowerBisimulation | RelationKind::InstantialBisimulation => {
            Err(crate::Error::InvalidModel("bisimulations relate models, not games".into()))
        }
    }
}

/// Whether `r ⊆ O1 × O2` matches every basic power of each game with an
/// Egli-Milner related basic power of the other, for both players.
pub fn strategy_bisimulation_check<G1, G2>(g1: &G1, g2: &G2, r: &Relation) -> bool
where
    G1: PowerSource + ?Sized,
    G2: PowerSource + ?Sized,
{
    Player::BOTH.iter().all(|&p| {
        let b1: Vec<OutcomeSet> = g1.basic_powers(p).iter().collect();
        let b2: Vec<OutcomeSet> = g2.basic_powers(p).iter().collect();
        b1.iter().all(|&z1| b2.iter().any(|&z2| egli_milner(r, z1, z2)))
            && b2.iter().all(|&z2| b1.iter().any(|&z1| egli_milner(r, z1, z2)))
    })
}

/// The four equivalences of one pair and any broken implication among them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchyReport {
    pub power: bool,
    pub strong: bool,
    pub semi: bool,
    /// `None` when a strategic form is too large to build.
    pub strategic: Option<bool>,
    pub violations: Vec<String>,
}

impl HierarchyReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates all four equivalences and checks strategic ⇒ strong ⇒ power and
/// strong ⇒ semi-strong ⇒ power.
pub fn hierarchy_audit(g1: &Game, g2: &Game) -> Result<HierarchyReport> {
    let power = power_equivalent(g1, g2)?.verdict;
    let strong = strongly_power_equivalent(g1, g2)?.verdict;
    let semi = semi_strongly_equivalent(g1, g2)?.verdict;
    let strategic = match (g1.strategic_form(), g2.strategic_form()) {
        (Ok(s1), Ok(s2)) => Some(strategic_form_equivalent(&s1, &s2)?.verdict),
        _ => None,
    };
    let mut violations = Vec::new();
    let mut implies = |a: bool, b: bool, text: &str| {
        if a && !b {
            violations.push(text.to_string());
        }
    };
    if let Some(s) = strategic {
        implies(s, strong, "strategic-form equivalent but not strongly power equivalent");
    }
    implies(strong, power, "strongly power equivalent but not power equivalent");
    implies(strong, semi, "strongly power equivalent but not semi-strongly equivalent");
    implies(semi, power, "semi-strongly equivalent but not power equivalent");
    Ok(HierarchyReport {
        power,
        strong,
        semi,
        strategic,
        violations,
    })
}
