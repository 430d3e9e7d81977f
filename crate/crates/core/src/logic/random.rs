//! Seeded generators for formulas and valid models.

use rand::Rng;

use super::{Formula, NeighborhoodModel};
use crate::game::Player;
use crate::outcome::{OutcomeSet, Outcomes};
use crate::powers::upward_closure;
use crate::representation::{sample_pair, Mode};

/// A random formula over `atoms` with modal depth at most `depth`. Boxes
/// carry up to two instances unless `game_logic` is set.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize, game_logic: bool) -> Formula {
    gen(rng, atoms, depth, 2, game_logic)
}

fn gen<R: Rng>(rng: &mut R, atoms: &[&str], modal: usize, local: usize, gl: bool) -> Formula {
    let leaf = |rng: &mut R| match rng.gen_range(0..10) {
        0 => Formula::True,
        1 => Formula::False,
        _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
    };
    if local == 0 && modal == 0 {
        return leaf(rng);
    }
    let roll = rng.gen_range(0..10);
    if roll < 3 {
        return leaf(rng);
    }
    if (roll >= 7 || local == 0) && modal > 0 {
        let player = if rng.gen_bool(0.5) { Player::A } else { Player::B };
        let k = if gl { 0 } else { rng.gen_range(0..=2) };
        let instances: Vec<Formula> = (0..k).map(|_| gen(rng, atoms, modal - 1, 2, gl)).collect();
        let scope = gen(rng, atoms, modal - 1, 2, gl);
        return Formula::instantial(player, instances, scope);
    }
    if local == 0 {
        return leaf(rng);
    }
    let sub = |rng: &mut R| gen(rng, atoms, modal, local - 1, gl);
    match roll {
        3 => Formula::negate(sub(rng)),
        4 => Formula::and(sub(rng), sub(rng)),
        5 => Formula::or(sub(rng), sub(rng)),
        _ => Formula::implies(sub(rng), sub(rng)),
    }
}

fn worlds<R: Rng>(rng: &mut R, max_worlds: usize) -> Outcomes {
    let n = rng.gen_range(1..=max_worlds.max(1));
    Outcomes::new((1..=n).map(|i| format!("w{i}"))).expect("fresh names")
}

/// Independent random extensions for each of `atoms`.
pub fn random_valuation<R: Rng>(rng: &mut R, m: &mut NeighborhoodModel, atoms: &[&str]) {
    let n = m.len();
    for p in atoms {
        let bits = rng.gen_range(0..(1u64 << n));
        m.set_atom(*p, OutcomeSet(bits));
    }
}

/// A random instantial game model: every world gets a seeded legal pair of
/// basic-power families (union-closed half of the time).
pub fn random_instantial_model<R: Rng>(rng: &mut R, max_worlds: usize, atoms: &[&str]) -> NeighborhoodModel {
    let w = worlds(rng, max_worlds);
    let mut m = NeighborhoodModel::new(w.clone());
    for u in 0..w.len() {
        let mode = if rng.gen_bool(0.5) { Mode::Basic } else { Mode::Relational };
        let pair = sample_pair(rng, &w, mode).expect("small world sets always admit a legal pair");
        m.set_neighborhoods(Player::A, u, pair.fa.iter());
        m.set_neighborhoods(Player::B, u, pair.fb.iter());
    }
    random_valuation(rng, &mut m, atoms);
    m
}

/// A random game model: the upward closures of a legal pair at each world.
pub fn random_game_model<R: Rng>(rng: &mut R, max_worlds: usize, atoms: &[&str]) -> NeighborhoodModel {
    let w = worlds(rng, max_worlds);
    let mut m = NeighborhoodModel::new(w.clone());
    for u in 0..w.len() {
        let pair = sample_pair(rng, &w, Mode::Basic).expect("small world sets always admit a legal pair");
        m.set_neighborhoods(Player::A, u, upward_closure(&pair.fa).iter());
        m.set_neighborhoods(Player::B, u, upward_closure(&pair.fb).iter());
    }
    random_valuation(rng, &mut m, atoms);
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{validate_frame, FrameKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_models_are_valid_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_instantial_model(&mut rng, 5, &["p", "q"]);
            assert!(validate_frame(&m, FrameKind::Instantial).valid);
            let g = random_game_model(&mut rng, 5, &["p"]);
            assert!(validate_frame(&g, FrameKind::Game).valid);
        }
    }

    #[test]
    fn formulas_respect_depth_and_fragment() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let f = random_formula(&mut rng, &["p", "q", "r"], 2, false);
            assert!(f.modal_depth() <= 2);
            let g = random_formula(&mut rng, &["p"], 3, true);
            assert!(g.modal_depth() <= 3 && g.is_game_logic());
        }
    }
}
