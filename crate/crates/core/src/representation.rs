//! Realizing a legal pair of power families as a game.
//!
//! Given families `F_A`, `F_B` over `O` satisfying Non-emptiness,
//! Instantiatedness and Consistency, the constructed strategic game gives B
//! the strategies `F_B × O × {0,1}` and gives A every choice map `c` with
//! `c(Z,u,j) ∈ Z` whose image lies in `F_A`; the outcome of `(c, t)` is
//! `c(t)`. Its basic powers are exactly `F_A` and `F_B`.
//!
//! A's strategy set is usually far too large to list, so [`ConstructedGame`]
//! keeps it implicit. Basic powers are decided exactly by bipartite matching:
//! a set `Y ∈ F_A` is the image of a legal map iff every triple's set meets
//! `Y` and the elements of `Y` can be assigned to distinct triples containing
//! them. Small instances can still be materialized with
//! [`ConstructedGame::to_strategic`].

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{odometer, Player, StrategicGame};
use crate::outcome::{nonempty_subsets, OutcomeSet, Outcomes};
use crate::powers::{check_conditions, union_closure, PowerFamily, PowerSource};

/// Which power notion the families describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Basic,
    Relational,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "basic" => Ok(Mode::Basic),
            "relational" => Ok(Mode::Relational),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationInput {
    pub fa: PowerFamily,
    pub fb: PowerFamily,
    pub mode: Mode,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    outcomes: Vec<String>,
    #[serde(rename = "FA")]
    fa: Vec<Vec<String>>,
    #[serde(rename = "FB")]
    fb: Vec<Vec<String>>,
    #[serde(default = "basic_mode")]
    mode: Mode,
}

fn basic_mode() -> Mode {
    Mode::Basic
}

impl RepresentationInput {
    pub fn new(fa: PowerFamily, fb: PowerFamily, mode: Mode) -> Result<Self> {
        fa.outcomes().ensure_same(fb.outcomes())?;
        Ok(RepresentationInput { fa, fb, mode })
    }

    pub fn outcomes(&self) -> &Outcomes {
        self.fa.outcomes()
    }

    /// Reads `{"outcomes": [...], "FA": [[...]], "FB": [[...]], "mode": ...}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: InputFile = serde_json::from_str(text)?;
        let o = Outcomes::new(file.outcomes)?;
        let fam = |sets: &[Vec<String>]| {
            let refs: Vec<&[String]> = sets.iter().map(Vec::as_slice).collect();
            PowerFamily::from_labels(o.clone(), &refs)
        };
        RepresentationInput::new(fam(&file.fa)?, fam(&file.fb)?, file.mode)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(InputFile {
            outcomes: self.outcomes().labels().to_vec(),
            fa: self.fa.member_labels(),
            fb: self.fb.member_labels(),
            mode: self.mode,
        })
        .expect("serializable")
    }

    /// Rejects families violating the conditions the mode requires.
    pub fn check(&self) -> Result<()> {
        let (a, b) = check_conditions(&self.fa, &self.fb)?;
        let ok = match self.mode {
            Mode::Basic => a.basic_ok() && b.basic_ok(),
            Mode::Relational => a.relational_ok() && b.relational_ok(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IllegalFamilies(Box::new((a, b))))
        }
    }
}

/// One strategy of B: a member of `F_B`, an outcome tag and a bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub z: OutcomeSet,
    pub u: usize,
    pub j: u8,
}

/// A strategy of A: one outcome per B-strategy, indexed like
/// [`ConstructedGame::triples`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChoiceMap(pub Vec<usize>);

impl ChoiceMap {
    pub fn image(&self) -> OutcomeSet {
        OutcomeSet::from_indices(self.0.iter().copied())
    }
}

/// The game built from a legal input, with A's strategies left implicit.
#[derive(Clone, Debug)]
pub struct ConstructedGame {
    input: RepresentationInput,
    triples: Vec<Triple>,
}

/// Builds the game for a legal input.
pub fn construct_game(input: &RepresentationInput) -> Result<ConstructedGame> {
    input.check()?;
    let n = input.outcomes().len();
    let mut triples = Vec::with_capacity(input.fb.len() * n * 2);
    for z in input.fb.iter() {
        for u in 0..n {
            for j in 0..2 {
                triples.push(Triple { z, u, j });
            }
        }
    }
    Ok(ConstructedGame {
        input: input.clone(),
        triples,
    })
}

impl ConstructedGame {
    pub fn input(&self) -> &RepresentationInput {
        &self.input
    }

    /// B's strategies in canonical order: members of `F_B`, then tag, then
    /// bit.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn triple_index(&self, t: Triple) -> Option<usize> {
        self.triples.binary_search_by(|x| {
            x.z.cmp(&t.z).then(x.u.cmp(&t.u)).then(x.j.cmp(&t.j))
        }).ok()
    }

    pub fn is_strategy(&self, c: &ChoiceMap) -> bool {
        c.0.len() == self.triples.len()
            && c.0.iter().zip(&self.triples).all(|(&v, t)| t.z.contains(v))
            && self.input.fa.contains(c.image())
    }

    /// Number of A-strategies, or `None` if it does not fit in an `i128`.
    pub fn a_strategy_count(&self) -> Option<u128> {
        let mut total: i128 = 0;
        for y in self.input.fa.iter() {
            // maps into Y with image exactly Y, by inclusion-exclusion
            for s in y.subsets() {
                let mut prod: i128 = 1;
                for t in &self.triples {
                    prod = prod.checked_mul(t.z.intersection(s).len() as i128)?;
                }
                let sign = if (y.len() - s.len()) % 2 == 0 { 1 } else { -1 };
                total = total.checked_add(sign * prod)?;
            }
        }
        u128::try_from(total).ok()
    }

    /// Every A-strategy, by brute force over all maps `c(t) ∈ Z_t`. Fails if
    /// that search space exceeds `limit`.
    pub fn enumerate_a_strategies(&self, limit: u128) -> Result<Vec<ChoiceMap>> {
        let space = self
            .triples
            .iter()
            .try_fold(1u128, |acc, t| acc.checked_mul(t.z.len() as u128))
            .unwrap_or(u128::MAX);
        if space > limit {
            return Err(Error::TooManyStrategies { count: space, limit });
        }
        let options: Vec<Vec<usize>> = self.triples.iter().map(|t| t.z.iter().collect()).collect();
        let radices = options.iter().map(Vec::len).collect();
        Ok(odometer(radices)
            .map(|d| ChoiceMap(d.iter().zip(&options).map(|(&i, o)| o[i]).collect()))
            .filter(|c| self.input.fa.contains(c.image()))
            .collect())
    }

    /// The materialized strategic game; rows are A's maps in enumeration
    /// order, columns the triples.
    pub fn to_strategic(&self, limit: u128) -> Result<StrategicGame> {
        let maps = self.enumerate_a_strategies(limit)?;
        let o = self.input.outcomes();
        let rows = maps
            .iter()
            .map(|c| {
                let vals: Vec<&str> = c.0.iter().map(|&v| o.label(v)).collect();
                format!("c[{}]", vals.join(","))
            })
            .collect();
        let cols = self
            .triples
            .iter()
            .map(|t| format!("({},{},{})", o.show(t.z), o.label(t.u), t.j))
            .collect();
        let matrix = maps.into_iter().map(|c| c.0).collect();
        StrategicGame::new(o.clone(), rows, cols, matrix)
    }

    /// Whether some A-strategy has image exactly `y`, optionally with
    /// `c(triples[t]) = v` forced.
    fn realizable(&self, y: OutcomeSet, forced: Option<(usize, usize)>) -> bool {
        if !self.input.fa.contains(y) || self.triples.iter().any(|t| !t.z.intersects(y)) {
            return false;
        }
        let mut need = y;
        let mut blocked = None;
        if let Some((t, v)) = forced {
            if !y.contains(v) || !self.triples[t].z.contains(v) {
                return false;
            }
            need = need.difference(OutcomeSet::singleton(v));
            blocked = Some(t);
        }
        saturating_matching(need, &self.triples, blocked)
    }

    /// Outcomes reachable against B's strategy `triples[t]`.
    pub fn column_outcomes(&self, t: usize) -> OutcomeSet {
        let z = self.triples[t].z;
        OutcomeSet::from_indices(z.iter().filter(|&v| {
            self.input
                .fa
                .iter()
                .any(|y| self.realizable(y, Some((t, v))))
        }))
    }
}

/// Whether every element of `need` can be matched to a distinct triple (other
/// than `blocked`) whose set contains it.
fn saturating_matching(need: OutcomeSet, triples: &[Triple], blocked: Option<usize>) -> bool {
    let elems: Vec<usize> = need.iter().collect();
    let mut owner: Vec<Option<usize>> = vec![None; triples.len()];
    fn augment(
        e: usize,
        elems: &[usize],
        triples: &[Triple],
        blocked: Option<usize>,
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for (t, tr) in triples.iter().enumerate() {
            if Some(t) == blocked || seen[t] || !tr.z.contains(elems[e]) {
                continue;
            }
            seen[t] = true;
            let free = match owner[t] {
                None => true,
                Some(other) => augment(other, elems, triples, blocked, owner, seen),
            };
            if free {
                owner[t] = Some(e);
                return true;
            }
        }
        false
    }
    (0..elems.len()).all(|e| {
        let mut seen = vec![false; triples.len()];
        augment(e, &elems, triples, blocked, &mut owner, &mut seen)
    })
}

impl PowerSource for ConstructedGame {
    fn outcomes(&self) -> &Outcomes {
        self.input.outcomes()
    }

    fn basic_powers(&self, player: Player) -> PowerFamily {
        let sets: Vec<OutcomeSet> = match player {
            Player::A => self
                .input
                .fa
                .iter()
                .filter(|&y| self.realizable(y, None))
                .collect(),
            Player::B => (0..self.triples.len()).map(|t| self.column_outcomes(t)).collect(),
        };
        PowerFamily::new(self.input.outcomes().clone(), sets).expect("subsets of O")
    }

    /// As in any strategic game, unions of rows or of columns.
    fn relational_basic_powers(&self, player: Player) -> PowerFamily {
        union_closure(&self.basic_powers(player))
    }
}

/// The choice map of the existence argument for `z ∈ F_A`: each `u ∈ z` is
/// placed at `(g(u), u, 0)` where `g(u)` is the first member of `F_B`
/// containing `u`, and every other triple `(Z', u', k)` gets the least
/// element of `z ∩ Z'`.
pub fn claim_witness(game: &ConstructedGame, z: OutcomeSet) -> Result<ChoiceMap> {
    let inp = game.input();
    if !inp.fa.contains(z) {
        return Err(Error::NotAMember(inp.outcomes().show(z)));
    }
    let mut values = Vec::with_capacity(game.triples.len());
    for t in &game.triples {
        let tagged = t.j == 0
            && z.contains(t.u)
            && inp.fb.iter().find(|zb| zb.contains(t.u)) == Some(t.z);
        let v = if tagged {
            t.u
        } else {
            z.intersection(t.z).min().expect("consistency")
        };
        values.push(v);
    }
    Ok(ChoiceMap(values))
}

/// A legal map sending the B-strategy `triples[t] = (Z, u', j)` to `u ∈ Z`,
/// obtained by modifying the [`claim_witness`] map of the first member of
/// `F_A` containing `u`.
pub fn claim_two_witness(game: &ConstructedGame, t: usize, u: usize) -> Result<ChoiceMap> {
    let inp = game.input();
    let tr = game.triples[t];
    if !tr.z.contains(u) {
        return Err(Error::NotAMember(inp.outcomes().label(u).to_string()));
    }
    let za = inp
        .fa
        .iter()
        .find(|y| y.contains(u))
        .ok_or_else(|| Error::NotAMember(inp.outcomes().label(u).to_string()))?;
    let mut c = claim_witness(game, za)?;
    let twin = |j: u8| game.triple_index(Triple { j, ..tr }).expect("both bits exist");
    if tr.j == 0 {
        let previous = c.0[t];
        c.0[t] = u;
        c.0[twin(1)] = previous;
    } else {
        c.0[t] = u;
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub mode: Mode,
    /// `"enumeration"` when A's maps were listed, otherwise `"matching"`.
    pub method: &'static str,
    pub a_strategies: Option<String>,
    pub b_strategies: usize,
    pub a_equal: bool,
    pub b_equal: bool,
    /// Every column yields exactly its `Z`.
    pub columns_exact: bool,
    /// The constructed witnesses are legal and have the required values.
    pub witnesses_ok: bool,
    pub computed_a: PowerFamily,
    pub computed_b: PowerFamily,
}

impl RoundTrip {
    pub fn ok(&self) -> bool {
        self.a_equal && self.b_equal && self.columns_exact && self.witnesses_ok
    }
}

/// Largest map space [`verify_roundtrip`] enumerates before falling back to
/// matching.
pub const ENUMERATION_LIMIT: u128 = 1 << 18;

/// Builds the game and compares its (relational) basic powers with the
/// input families.
pub fn verify_roundtrip(input: &RepresentationInput) -> Result<RoundTrip> {
    let game = construct_game(input)?;
    let (computed_a, computed_b, columns, method) = match game.to_strategic(ENUMERATION_LIMIT) {
        Ok(sg) => {
            let cols: Vec<OutcomeSet> = (0..sg.cols().len())
                .map(|j| sg.strategy_outcomes(Player::B, j))
                .collect();
            let (a, b) = match input.mode {
                Mode::Basic => (sg.basic_powers(Player::A), sg.basic_powers(Player::B)),
                Mode::Relational => (
                    sg.relational_basic_powers(Player::A),
                    sg.relational_basic_powers(Player::B),
                ),
            };
            (a, b, cols, "enumeration")
        }
        Err(Error::TooManyStrategies { .. }) => {
            let cols = (0..game.triples.len()).map(|t| game.column_outcomes(t)).collect();
            let (a, b) = match input.mode {
                Mode::Basic => (game.basic_powers(Player::A), game.basic_powers(Player::B)),
                Mode::Relational => (
                    game.relational_basic_powers(Player::A),
                    game.relational_basic_powers(Player::B),
                ),
            };
            (a, b, cols, "matching")
        }
        Err(e) => return Err(e),
    };
    let columns_exact = columns.iter().zip(&game.triples).all(|(c, t)| *c == t.z);
    let claim1 = input.fa.iter().all(|z| {
        claim_witness(&game, z).is_ok_and(|c| game.is_strategy(&c) && c.image() == z)
    });
    let claim2 = (0..game.triples.len()).all(|t| {
        game.triples[t].z.iter().all(|u| {
            claim_two_witness(&game, t, u).is_ok_and(|c| game.is_strategy(&c) && c.0[t] == u)
        })
    });
    Ok(RoundTrip {
        mode: input.mode,
        method,
        a_strategies: game.a_strategy_count().map(|n| n.to_string()),
        b_strategies: game.triples.len(),
        a_equal: computed_a == input.fa,
        b_equal: computed_b == input.fb,
        columns_exact,
        witnesses_ok: claim1 && claim2,
        computed_a,
        computed_b,
    })
}

/// Bound on rejection-sampling attempts in [`sample_legal_families`].
pub const SAMPLING_ATTEMPTS: usize = 100_000;

/// A seeded random pair of families over `{0, ..., o_size-1}` satisfying
/// the conditions of `mode`.
pub fn sample_legal_families(o_size: usize, seed: u64, mode: Mode) -> Result<RepresentationInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_pair(&mut rng, &Outcomes::numbered(o_size), mode)
}

/// Rejection sampling: draw two small random families (closed under unions
/// in relational mode) until the condition check passes.
pub(crate) fn sample_pair<R: Rng>(rng: &mut R, o: &Outcomes, mode: Mode) -> Result<RepresentationInput> {
    let subsets = nonempty_subsets(o.full());
    let max_members = subsets.len().min(4);
    let draw = |rng: &mut R| {
        let k = rng.gen_range(1..=max_members);
        let members: Vec<OutcomeSet> = subsets.choose_multiple(rng, k).copied().collect();
        let fam = PowerFamily::new(o.clone(), members).expect("subsets of O");
        match mode {
            Mode::Basic => fam,
            Mode::Relational => union_closure(&fam),
        }
    };
    for _ in 0..SAMPLING_ATTEMPTS {
        let fa = draw(rng);
        let fb = draw(rng);
        let input = RepresentationInput { fa, fb, mode };
        if input.check().is_ok() {
            return Ok(input);
        }
    }
    Err(Error::SamplingExhausted {
        attempts: SAMPLING_ATTEMPTS,
    })
}
