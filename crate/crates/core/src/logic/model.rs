use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ExtensiveGame, Player};
use crate::outcome::{OutcomeSet, Outcomes};
use crate::powers::{check_conditions, powers_of, upward_closure, PowerFamily, PowerKind, Witness};

/// A finite neighborhood model: worlds, one neighborhood relation per player
/// and a valuation.
///
/// Worlds are kept in the canonical label order of [`Outcomes`] and world
/// sets are bitmasks over that order, so at most 64 worlds are supported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodModel {
    worlds: Outcomes,
    ra: Vec<BTreeSet<OutcomeSet>>,
    rb: Vec<BTreeSet<OutcomeSet>>,
    val: BTreeMap<String, OutcomeSet>,
}

impl NeighborhoodModel {
    /// A model over `worlds` with no neighborhoods and an empty valuation.
    pub fn new(worlds: Outcomes) -> Self {
        let n = worlds.len();
        NeighborhoodModel {
            worlds,
            ra: vec![BTreeSet::new(); n],
            rb: vec![BTreeSet::new(); n],
            val: BTreeMap::new(),
        }
    }

    pub fn worlds(&self) -> &Outcomes {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn all(&self) -> OutcomeSet {
        self.worlds.full()
    }

    pub fn world(&self, name: &str) -> Result<usize> {
        self.worlds
            .index_of(name)
            .ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn neighborhoods(&self, player: Player, w: usize) -> &BTreeSet<OutcomeSet> {
        match player {
            Player::A => &self.ra[w],
            Player::B => &self.rb[w],
        }
    }

    pub fn set_neighborhoods<I: IntoIterator<Item = OutcomeSet>>(&mut self, player: Player, w: usize, sets: I) {
        let sets = sets.into_iter().collect();
        match player {
            Player::A => self.ra[w] = sets,
            Player::B => self.rb[w] = sets,
        }
    }

    pub fn add_neighborhood(&mut self, player: Player, w: usize, z: OutcomeSet) {
        match player {
            Player::A => self.ra[w].insert(z),
            Player::B => self.rb[w].insert(z),
        };
    }

    /// The neighborhoods of `w` as a family over the worlds.
    pub fn family(&self, player: Player, w: usize) -> PowerFamily {
        PowerFamily::new(self.worlds.clone(), self.neighborhoods(player, w).iter().copied())
            .expect("neighborhoods are world sets")
    }

    pub fn valuation(&self) -> &BTreeMap<String, OutcomeSet> {
        &self.val
    }

    /// Extension of an atom; atoms without a valuation entry are false
    /// everywhere.
    pub fn atom(&self, p: &str) -> OutcomeSet {
        self.val.get(p).copied().unwrap_or_default()
    }

    pub fn set_atom(&mut self, p: impl Into<String>, worlds: OutcomeSet) {
        self.val.insert(p.into(), worlds);
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModelFile::from_model(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<ModelFile>(text)?.to_model()
    }
}

/// `{"worlds": [...], "RA": [[world, [worlds]], ...], "RB": [...],
/// "val": {atom: [worlds]}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    #[serde(rename = "RA")]
    pub ra: Vec<(String, Vec<String>)>,
    #[serde(rename = "RB")]
    pub rb: Vec<(String, Vec<String>)>,
    #[serde(default)]
    pub val: BTreeMap<String, Vec<String>>,
}

impl ModelFile {
    pub fn from_model(m: &NeighborhoodModel) -> Self {
        let rel = |p: Player| {
            (0..m.len())
                .flat_map(|w| {
                    m.neighborhoods(p, w)
                        .iter()
                        .map(move |&z| (m.worlds.label(w).to_string(), m.worlds.names(z)))
                })
                .collect()
        };
        ModelFile {
            worlds: m.worlds.labels().to_vec(),
            ra: rel(Player::A),
            rb: rel(Player::B),
            val: m
                .val
                .iter()
                .map(|(p, s)| (p.clone(), m.worlds.names(*s)))
                .collect(),
        }
    }

    pub fn to_model(&self) -> Result<NeighborhoodModel> {
        let worlds = Outcomes::new(self.worlds.iter().cloned())?;
        let mut m = NeighborhoodModel::new(worlds);
        let set = |m: &NeighborhoodModel, names: &[String]| -> Result<OutcomeSet> {
            names.iter().try_fold(OutcomeSet::EMPTY, |acc, n| {
                Ok(acc.union(OutcomeSet::singleton(m.world(n)?)))
            })
        };
        for (player, pairs) in [(Player::A, &self.ra), (Player::B, &self.rb)] {
            for (w, z) in pairs {
                let w = m.world(w)?;
                let z = set(&m, z)?;
                m.add_neighborhood(player, w, z);
            }
        }
        for (p, names) in &self.val {
            let s = set(&m, names)?;
            m.set_atom(p.clone(), s);
        }
        Ok(m)
    }
}

/// Which frame conditions to validate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameKind {
    /// Non-emptiness, Monotonicity and Consistency at every world.
    Game,
    /// Non-emptiness, Instantiatedness and Consistency at every world.
    Instantial,
}

impl std::str::FromStr for FrameKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "game" => Ok(FrameKind::Game),
            "instantial" => Ok(FrameKind::Instantial),
            other => Err(format!("unknown frame kind `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameFailure {
    pub world: String,
    pub player: Player,
    pub condition: &'static str,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameReport {
    pub kind: FrameKind,
    pub valid: bool,
    pub failures: Vec<FrameFailure>,
}

/// Checks the frame conditions of `kind` at every world.
pub fn validate_frame(m: &NeighborhoodModel, kind: FrameKind) -> FrameReport {
    let mut failures = Vec::new();
    for w in 0..m.len() {
        let (pa, pb) = check_conditions(&m.family(Player::A, w), &m.family(Player::B, w))
            .expect("families share the world set");
        let consistency_reported = |fs: &Vec<FrameFailure>| {
            fs.iter()
                .any(|f: &FrameFailure| f.world == m.worlds.label(w) && f.condition == "consistency")
        };
        for prof in [pa, pb] {
            let mut checks = vec![("non-emptiness", prof.non_emptiness)];
            checks.push(match kind {
                FrameKind::Game => ("monotonicity", prof.monotonicity),
                FrameKind::Instantial => ("instantiatedness", prof.instantiatedness),
            });
            if !consistency_reported(&failures) {
                checks.push(("consistency", prof.consistency));
            }
            for (condition, check) in checks {
                if let Some(witness) = check.witness {
                    failures.push(FrameFailure {
                        world: m.worlds.label(w).to_string(),
                        player: prof.player,
                        condition,
                        witness,
                    });
                }
            }
        }
    }
    FrameReport {
        kind,
        valid: failures.is_empty(),
        failures,
    }
}

/// Name of the designated world in [`encode_game_as_model`].
pub const ROOT_WORLD: &str = "root";

/// A one-step neighborhood model of a game: a root world whose neighborhoods
/// are the chosen power family (as sets of outcome worlds) plus one world
/// per outcome. Returns the model and the root index.
///
/// Outcome worlds get the neighborhood `{o}` for both players. For
/// [`PowerKind::Plain`] every neighborhood is closed upward within all
/// worlds, so the result is a game frame. The valuation is left empty; see
/// [`add_outcome_atoms`].
pub fn encode_game_as_model(g: &ExtensiveGame, kind: PowerKind) -> (NeighborhoodModel, usize) {
    encode_families(
        g.outcomes(),
        &powers_of(g, Player::A, kind),
        &powers_of(g, Player::B, kind),
        kind == PowerKind::Plain,
    )
}

pub(crate) fn encode_families(
    o: &Outcomes,
    fa: &PowerFamily,
    fb: &PowerFamily,
    monotone: bool,
) -> (NeighborhoodModel, usize) {
    let mut root = ROOT_WORLD.to_string();
    while o.index_of(&root).is_some() {
        root.push('\'');
    }
    let worlds = Outcomes::new(o.labels().iter().cloned().chain([root.clone()]))
        .expect("root name is fresh");
    let mut m = NeighborhoodModel::new(worlds);
    let r = m.world(&root).expect("root exists");
    let embed = |m: &NeighborhoodModel, z: OutcomeSet| -> OutcomeSet {
        z.iter()
            .map(|i| m.world(o.label(i)).expect("outcome world"))
            .fold(OutcomeSet::EMPTY, |acc, w| acc.union(OutcomeSet::singleton(w)))
    };
    let close = |m: &NeighborhoodModel, sets: Vec<OutcomeSet>| -> Vec<OutcomeSet> {
        if !monotone {
            return sets;
        }
        let fam = PowerFamily::new(m.worlds.clone(), sets).expect("world sets");
        upward_closure(&fam).iter().collect()
    };
    for (p, fam) in [(Player::A, fa), (Player::B, fb)] {
        let sets: Vec<OutcomeSet> = fam.iter().map(|z| embed(&m, z)).collect();
        let sets = close(&m, sets);
        m.set_neighborhoods(p, r, sets);
        for i in 0..o.len() {
            let w = m.world(o.label(i)).expect("outcome world");
            let sets = close(&m, vec![OutcomeSet::singleton(w)]);
            m.set_neighborhoods(p, w, sets);
        }
    }
    (m, r)
}

/// Makes the atom `prefix<label>` true exactly at the world of each outcome
/// of `o`.
pub fn add_outcome_atoms(m: &mut NeighborhoodModel, o: &Outcomes, prefix: &str) {
    for label in o.labels() {
        if let Ok(w) = m.world(label) {
            m.set_atom(format!("{prefix}{label}"), OutcomeSet::singleton(w));
        }
    }
}
