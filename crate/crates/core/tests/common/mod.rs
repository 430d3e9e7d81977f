//! Brute-force reference implementations used as test oracles.
//!
//! Everything here works on label strings and the tree/JSON forms of games
//! and models, so it shares no code with the bitset-based library paths.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use gamepowers::game::{ExtensiveGame, Player, StrategicGame, TreeSpec};
use gamepowers::logic::{Formula, NeighborhoodModel};
use gamepowers::powers::PowerFamily;

pub type Set = BTreeSet<String>;
pub type Fam = BTreeSet<Set>;

pub fn set(labels: &[&str]) -> Set {
    labels.iter().map(|s| s.to_string()).collect()
}

pub fn fam(members: &[&[&str]]) -> Fam {
    members.iter().map(|m| set(m)).collect()
}

pub fn fam_of(f: &PowerFamily) -> Fam {
    f.member_labels().into_iter().map(|m| m.into_iter().collect()).collect()
}

/// Every subset of `universe`, the empty set included.
pub fn all_subsets(universe: &[String]) -> Vec<Set> {
    (0u64..1 << universe.len())
        .map(|mask| {
            universe
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect()
        })
        .collect()
}

pub fn upward(f: &Fam, universe: &[String]) -> Fam {
    all_subsets(universe)
        .into_iter()
        .filter(|q| f.iter().any(|p| p.is_subset(q)))
        .collect()
}

pub fn union_close(f: &Fam) -> Fam {
    let mut out = f.clone();
    loop {
        let mut added = Vec::new();
        for a in &out {
            for b in &out {
                let u: Set = a.union(b).cloned().collect();
                if !out.contains(&u) {
                    added.push(u);
                }
            }
        }
        if added.is_empty() {
            return out;
        }
        out.extend(added);
    }
}

struct FlatNode {
    player: Option<Player>,
    cell: String,
    children: Vec<usize>,
    outcome: Option<String>,
}

fn flatten(t: &TreeSpec, path: &str, out: &mut Vec<FlatNode>) -> usize {
    let id = out.len();
    match t {
        TreeSpec::Leaf(o) => out.push(FlatNode {
            player: None,
            cell: String::new(),
            children: vec![],
            outcome: Some(o.clone()),
        }),
        TreeSpec::Move {
            player,
            info,
            children,
        } => {
            out.push(FlatNode {
                player: Some(*player),
                cell: info.clone().map_or_else(|| format!("@{path}"), |n| format!("#{n}")),
                children: vec![],
                outcome: None,
            });
            let kids: Vec<usize> = children
                .iter()
                .enumerate()
                .map(|(i, c)| flatten(c, &format!("{path}.{i}"), out))
                .collect();
            out[id].children = kids;
        }
    }
    id
}

/// A game as a flat node list with cells keyed by name or path.
pub struct Flat {
    nodes: Vec<FlatNode>,
}

impl Flat {
    pub fn new(g: &ExtensiveGame) -> Self {
        let mut nodes = Vec::new();
        flatten(&g.to_tree(), "", &mut nodes);
        Flat { nodes }
    }

    /// Cells of `p` with their arity, in key order.
    pub fn cells(&self, p: Player) -> Vec<(String, usize)> {
        let mut m = BTreeMap::new();
        for n in &self.nodes {
            if n.player == Some(p) {
                m.insert(n.cell.clone(), n.children.len());
            }
        }
        m.into_iter().collect()
    }

    /// Outcomes reachable when the owner `p` may use the moves `allowed`
    /// grants per cell and the opponent moves freely.
    pub fn outcomes(&self, p: Player, allowed: &BTreeMap<String, BTreeSet<usize>>) -> Set {
        let mut out = Set::new();
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            let n = &self.nodes[i];
            if let Some(o) = &n.outcome {
                out.insert(o.clone());
                continue;
            }
            for (k, &c) in n.children.iter().enumerate() {
                if n.player != Some(p) || allowed[&n.cell].contains(&k) {
                    stack.push(c);
                }
            }
        }
        out
    }

    /// The single outcome of a functional profile.
    pub fn play(&self, a: &BTreeMap<String, usize>, b: &BTreeMap<String, usize>) -> String {
        let mut i = 0;
        loop {
            let n = &self.nodes[i];
            if let Some(o) = &n.outcome {
                return o.clone();
            }
            let choice = match n.player {
                Some(Player::A) => a[&n.cell],
                _ => b[&n.cell],
            };
            i = n.children[choice];
        }
    }
}

fn product<T: Clone>(options: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![vec![]];
    for opts in options {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    acc
}

pub fn functional_strategies(flat: &Flat, p: Player) -> Vec<BTreeMap<String, usize>> {
    let cells = flat.cells(p);
    let options: Vec<Vec<usize>> = cells.iter().map(|(_, k)| (0..*k).collect()).collect();
    product(&options)
        .into_iter()
        .map(|choice| cells.iter().map(|(c, _)| c.clone()).zip(choice).collect())
        .collect()
}

pub fn relational_strategies(flat: &Flat, p: Player) -> Vec<BTreeMap<String, BTreeSet<usize>>> {
    let cells = flat.cells(p);
    let options: Vec<Vec<BTreeSet<usize>>> = cells
        .iter()
        .map(|(_, k)| {
            (1u32..1 << k)
                .map(|mask| (0..*k).filter(|i| mask >> i & 1 == 1).collect())
                .collect()
        })
        .collect();
    product(&options)
        .into_iter()
        .map(|choice| cells.iter().map(|(c, _)| c.clone()).zip(choice).collect())
        .collect()
}

pub fn basic_powers(g: &ExtensiveGame, p: Player) -> Fam {
    let flat = Flat::new(g);
    functional_strategies(&flat, p)
        .into_iter()
        .map(|s| {
            let allowed = s.into_iter().map(|(c, k)| (c, BTreeSet::from([k]))).collect();
            flat.outcomes(p, &allowed)
        })
        .collect()
}

pub fn relational_powers(g: &ExtensiveGame, p: Player) -> Fam {
    let flat = Flat::new(g);
    relational_strategies(&flat, p)
        .into_iter()
        .map(|s| flat.outcomes(p, &s))
        .collect()
}

pub fn plain_powers(g: &ExtensiveGame, p: Player) -> Fam {
    upward(&basic_powers(g, p), g.outcomes().labels())
}

/// The outcome matrix with rows for A's and columns for B's functional
/// strategies.
pub fn matrix(g: &ExtensiveGame) -> Vec<Vec<String>> {
    let flat = Flat::new(g);
    let (sa, sb) = (
        functional_strategies(&flat, Player::A),
        functional_strategies(&flat, Player::B),
    );
    sa.iter()
        .map(|a| sb.iter().map(|b| flat.play(a, b)).collect())
        .collect()
}

pub fn matrix_powers(m: &[Vec<String>]) -> (Fam, Fam) {
    let rows = m.iter().map(|r| r.iter().cloned().collect()).collect();
    let cols = (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect();
    (rows, cols)
}

/// Greatest strategy profile bisimulation by removing one violating pair at
/// a time, checking the four clauses literally.
pub fn profile_bisimilar(m1: &[Vec<String>], m2: &[Vec<String>]) -> bool {
    type P = (usize, usize);
    let profiles = |m: &[Vec<String>]| -> Vec<P> {
        (0..m.len()).flat_map(|r| (0..m[0].len()).map(move |c| (r, c))).collect()
    };
    let (p1, p2) = (profiles(m1), profiles(m2));
    let mut rel: BTreeSet<(P, P)> = p1
        .iter()
        .flat_map(|&a| p2.iter().map(move |&b| (a, b)))
        .filter(|&((r1, c1), (r2, c2))| m1[r1][c1] == m2[r2][c2])
        .collect();
    loop {
        let bad = rel.iter().copied().find(|&((s1, t1), (s2, t2))| {
            let forth_a = (0..m1.len()).all(|s| (0..m2.len()).any(|s_| rel.contains(&((s, t1), (s_, t2)))));
            let back_a = (0..m2.len()).all(|s_| (0..m1.len()).any(|s| rel.contains(&((s, t1), (s_, t2)))));
            let forth_b = (0..m1[0].len()).all(|t| (0..m2[0].len()).any(|t_| rel.contains(&((s1, t), (s2, t_)))));
            let back_b = (0..m2[0].len()).all(|t_| (0..m1[0].len()).any(|t| rel.contains(&((s1, t), (s2, t_)))));
            !(forth_a && back_a && forth_b && back_b)
        });
        match bad {
            Some(pair) => {
                rel.remove(&pair);
            }
            None => break,
        }
    }
    p1.iter().all(|a| rel.iter().any(|(x, _)| x == a)) && p2.iter().all(|b| rel.iter().any(|(_, y)| y == b))
}

pub fn strategic_matrix(g: &StrategicGame) -> Vec<Vec<String>> {
    g.label_matrix()
}

/// The six conditions, decided literally for `fa` (own) against `fb`.
#[derive(Debug, PartialEq, Eq)]
pub struct Conditions {
    pub non_emptiness: bool,
    pub monotonicity: bool,
    pub consistency: bool,
    pub determinacy: bool,
    pub instantiatedness: bool,
    pub union_closure: bool,
}

pub fn conditions(own: &Fam, other: &Fam, universe: &[String]) -> Conditions {
    let all = all_subsets(universe);
    let full: Set = universe.iter().cloned().collect();
    let union_closure = if own.len() <= 12 {
        let members: Vec<&Set> = own.iter().collect();
        (1u32..1 << members.len()).all(|mask| {
            let u: Set = members
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, m)| m.iter().cloned())
                .collect();
            own.contains(&u)
        })
    } else {
        union_close(own) == *own
    };
    Conditions {
        non_emptiness: !own.is_empty(),
        monotonicity: own
            .iter()
            .all(|p| all.iter().filter(|q| p.is_subset(q)).all(|q| own.contains(q))),
        consistency: own.iter().all(|p| other.iter().all(|q| !p.is_disjoint(q))),
        determinacy: all.iter().all(|p| {
            let comp: Set = full.difference(p).cloned().collect();
            own.contains(p) || other.contains(&comp)
        }),
        instantiatedness: own
            .iter()
            .all(|p| p.iter().all(|x| other.iter().any(|q| q.contains(x)))),
        union_closure,
    }
}

/// A neighborhood model over label strings.
pub struct Model {
    pub worlds: Vec<String>,
    pub ra: BTreeMap<String, Vec<Set>>,
    pub rb: BTreeMap<String, Vec<Set>>,
    pub val: BTreeMap<String, Set>,
}

impl Model {
    pub fn of(m: &NeighborhoodModel) -> Self {
        let v = m.to_json();
        let sets = |x: &serde_json::Value| -> Set {
            x.as_array()
                .unwrap()
                .iter()
                .map(|s| s.as_str().unwrap().to_string())
                .collect()
        };
        let rel = |key: &str| {
            let mut out: BTreeMap<String, Vec<Set>> = BTreeMap::new();
            for pair in v[key].as_array().unwrap() {
                out.entry(pair[0].as_str().unwrap().to_string())
                    .or_default()
                    .push(sets(&pair[1]));
            }
            out
        };
        Model {
            worlds: sets(&v["worlds"]).into_iter().collect(),
            ra: rel("RA"),
            rb: rel("RB"),
            val: v["val"]
                .as_object()
                .unwrap()
                .iter()
                .map(|(k, x)| (k.clone(), sets(x)))
                .collect(),
        }
    }

    pub fn nbhd(&self, p: Player, w: &str) -> &[Set] {
        let r = match p {
            Player::A => &self.ra,
            Player::B => &self.rb,
        };
        r.get(w).map_or(&[], |v| v.as_slice())
    }

    pub fn holds(&self, w: &str, p: &str) -> bool {
        self.val.get(p).is_some_and(|s| s.contains(w))
    }
}

/// Truth at one world, following the semantic clauses directly.
pub fn truth(m: &Model, w: &str, f: &Formula) -> bool {
    match f {
        Formula::Atom(p) => m.holds(w, p),
        Formula::True => true,
        Formula::False => false,
        Formula::Not(g) => !truth(m, w, g),
        Formula::And(l, r) => truth(m, w, l) && truth(m, w, r),
        Formula::Or(l, r) => truth(m, w, l) || truth(m, w, r),
        Formula::Implies(l, r) => !truth(m, w, l) || truth(m, w, r),
        Formula::Box {
            player,
            instances,
            scope,
        } => m.nbhd(*player, w).iter().any(|z| {
            z.iter().all(|v| truth(m, v, scope)) && instances.iter().all(|psi| z.iter().any(|v| truth(m, v, psi)))
        }),
    }
}

/// Greatest bisimulation by literal clause checking; `instantial` adds the
/// Forth-Forth and Back-Back clauses.
pub fn bisimilar(m1: &Model, w1: &str, m2: &Model, w2: &str, instantial: bool) -> bool {
    let atoms: BTreeSet<&String> = m1.val.keys().chain(m2.val.keys()).collect();
    let mut rel: BTreeSet<(String, String)> = m1
        .worlds
        .iter()
        .flat_map(|u| m2.worlds.iter().map(move |v| (u.clone(), v.clone())))
        .filter(|(u, v)| atoms.iter().all(|p| m1.holds(u, p) == m2.holds(v, p)))
        .collect();
    loop {
        let lifts = |z: &Set, z_: &Set, rel: &BTreeSet<(String, String)>, fwd: bool, bwd: bool| {
            let f = !fwd || z.iter().all(|v| z_.iter().any(|v_| rel.contains(&(v.clone(), v_.clone()))));
            let b = !bwd || z_.iter().all(|v_| z.iter().any(|v| rel.contains(&(v.clone(), v_.clone()))));
            f && b
        };
        let bad = rel.iter().find(|(u, v)| {
            [Player::A, Player::B].iter().any(|&p| {
                // Forth: Forth-Back, plus Forth-Forth when instantial.
                let forth = m1
                    .nbhd(p, u)
                    .iter()
                    .all(|z| m2.nbhd(p, v).iter().any(|z_| lifts(z, z_, &rel, instantial, true)));
                // Back: Back-Forth, plus Back-Back when instantial.
                let back = m2
                    .nbhd(p, v)
                    .iter()
                    .all(|z_| m1.nbhd(p, u).iter().any(|z| lifts(z, z_, &rel, true, instantial)));
                !(forth && back)
            })
        })
        .cloned();
        match bad {
            Some(pair) => {
                rel.remove(&pair);
            }
            None => break,
        }
    }
    rel.contains(&(w1.to_string(), w2.to_string()))
}

pub fn data(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn game(name: &str) -> ExtensiveGame {
    ExtensiveGame::from_json(&data(name)).unwrap()
}

pub fn dist_pair() -> (ExtensiveGame, ExtensiveGame) {
    (game("dist_left.json"), game("dist_right.json"))
}

pub fn comp_pair() -> (ExtensiveGame, ExtensiveGame) {
    (game("comp_left.json"), game("comp_right.json"))
}

pub fn zero_one_matrices() -> (StrategicGame, StrategicGame) {
    (
        StrategicGame::from_json(&data("matrix_left.json")).unwrap(),
        StrategicGame::from_json(&data("matrix_right.json")).unwrap(),
    )
}
