use std::collections::BTreeSet;

use super::extensive::{ExtensiveGame, NodeKind};
use super::strategy::{enumerate_functional, odometer};
use super::{Player, TreeSpec};
use crate::error::{Error, Result};
use crate::outcome::{OutcomeSet, Outcomes};

/// Largest strategy set [`to_strategic_form`] will materialize per player.
pub const MAX_PROFILE_STRATEGIES: u128 = 1 << 16;

/// A two-player game in strategic form: rows are A's strategies, columns are
/// B's, and each cell holds an outcome index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategicGame {
    outcomes: Outcomes,
    rows: Vec<String>,
    cols: Vec<String>,
    matrix: Vec<Vec<usize>>,
}

impl StrategicGame {
    pub fn new(
        outcomes: Outcomes,
        rows: Vec<String>,
        cols: Vec<String>,
        matrix: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::InvalidStrategicGame(
                "both strategy sets must be nonempty".into(),
            ));
        }
        for (what, labels) in [("row", &rows), ("column", &cols)] {
            let distinct: BTreeSet<&String> = labels.iter().collect();
            if distinct.len() != labels.len() {
                return Err(Error::InvalidStrategicGame(format!("duplicate {what} label")));
            }
        }
        if matrix.len() != rows.len() || matrix.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::InvalidStrategicGame(format!(
                "matrix must be {}x{}",
                rows.len(),
                cols.len()
            )));
        }
        if matrix.iter().flatten().any(|&o| o >= outcomes.len()) {
            return Err(Error::InvalidStrategicGame("outcome index out of range".into()));
        }
        Ok(StrategicGame {
            outcomes,
            rows,
            cols,
            matrix,
        })
    }

    /// Builds a game from outcome labels, naming strategies `r0.. / c0..`.
    pub fn from_labels<S: AsRef<str>>(outcomes: Outcomes, matrix: &[Vec<S>]) -> Result<Self> {
        let cells = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|l| outcomes.require(l.as_ref()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = (0..cells.len()).map(|i| format!("r{i}")).collect();
        let cols = (0..cells.first().map_or(0, Vec::len))
            .map(|j| format!("c{j}"))
            .collect();
        StrategicGame::new(outcomes, rows, cols, cells)
    }

    pub fn outcomes(&self) -> &Outcomes {
        &self.outcomes
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn matrix(&self) -> &[Vec<usize>] {
        &self.matrix
    }

    pub fn outcome(&self, row: usize, col: usize) -> usize {
        self.matrix[row][col]
    }

    /// The matrix with outcome labels.
    pub fn label_matrix(&self) -> Vec<Vec<String>> {
        self.matrix
            .iter()
            .map(|r| r.iter().map(|&o| self.outcomes.label(o).to_string()).collect())
            .collect()
    }

    /// Outcome set of row `i` (for A) or column `i` (for B).
    pub fn strategy_outcomes(&self, player: Player, i: usize) -> OutcomeSet {
        match player {
            Player::A => OutcomeSet::from_indices(self.matrix[i].iter().copied()),
            Player::B => OutcomeSet::from_indices(self.matrix.iter().map(|r| r[i])),
        }
    }

    pub fn strategy_count(&self, player: Player) -> usize {
        match player {
            Player::A => self.rows.len(),
            Player::B => self.cols.len(),
        }
    }

    /// Whether some bijections between the strategy sets preserve outcomes.
    pub fn isomorphic(&self, other: &StrategicGame) -> bool {
        if self.outcomes != other.outcomes
            || self.rows.len() != other.rows.len()
            || self.cols.len() != other.cols.len()
        {
            return false;
        }
        let sorted = |r: &Vec<usize>| {
            let mut r = r.clone();
            r.sort_unstable();
            r
        };
        let mine: Vec<Vec<usize>> = self.matrix.iter().map(sorted).collect();
        let theirs: Vec<Vec<usize>> = other.matrix.iter().map(sorted).collect();
        let mut used = vec![false; other.rows.len()];
        let mut assignment = Vec::with_capacity(self.rows.len());
        self.iso_rows(other, &mine, &theirs, &mut used, &mut assignment)
    }

    fn iso_rows(
        &self,
        other: &StrategicGame,
        mine: &[Vec<usize>],
        theirs: &[Vec<usize>],
        used: &mut [bool],
        assignment: &mut Vec<usize>,
    ) -> bool {
        let i = assignment.len();
        if i == self.rows.len() {
            // rows fixed: columns must match as vectors, as multisets
            let column = |g: &StrategicGame, perm: Option<&[usize]>, j: usize| -> Vec<usize> {
                (0..g.rows.len())
                    .map(|r| g.matrix[perm.map_or(r, |p| p[r])][j])
                    .collect()
            };
            let mut a: Vec<Vec<usize>> = (0..self.cols.len()).map(|j| column(self, None, j)).collect();
            let mut b: Vec<Vec<usize>> = (0..other.cols.len())
                .map(|j| column(other, Some(assignment), j))
                .collect();
            a.sort();
            b.sort();
            return a == b;
        }
        for k in 0..other.rows.len() {
            if !used[k] && mine[i] == theirs[k] {
                used[k] = true;
                assignment.push(k);
                if self.iso_rows(other, mine, theirs, used, assignment) {
                    return true;
                }
                assignment.pop();
                used[k] = false;
            }
        }
        false
    }
}

fn strategy_count(game: &ExtensiveGame, player: Player) -> u128 {
    game.cells_of(player)
        .try_fold(1u128, |acc, (_, c)| acc.checked_mul(c.arity as u128))
        .unwrap_or(u128::MAX)
}

/// The strategic normal form: rows and columns are the enumerated functional
/// strategies of A and B, each cell the outcome of the unique jointly guided
/// match.
pub fn to_strategic_form(game: &ExtensiveGame) -> Result<StrategicGame> {
    for p in Player::BOTH {
        let count = strategy_count(game, p);
        if count > MAX_PROFILE_STRATEGIES {
            return Err(Error::TooManyStrategies {
                count,
                limit: MAX_PROFILE_STRATEGIES,
            });
        }
    }
    let digit_of = |p: Player| -> Vec<Option<usize>> {
        let mut pos = vec![None; game.cells().len()];
        for (k, (ci, _)) in game.cells_of(p).enumerate() {
            pos[ci] = Some(k);
        }
        pos
    };
    let pos_a = digit_of(Player::A);
    let pos_b = digit_of(Player::B);
    let radices = |p: Player| game.cells_of(p).map(|(_, c)| c.arity).collect::<Vec<_>>();
    let a_digits: Vec<Vec<usize>> = odometer(radices(Player::A)).collect();
    let b_digits: Vec<Vec<usize>> = odometer(radices(Player::B)).collect();
    let matrix = a_digits
        .iter()
        .map(|da| {
            b_digits
                .iter()
                .map(|db| {
                    let mut at = game.root();
                    loop {
                        match &game.node(at).kind {
                            NodeKind::Leaf { outcome } => break *outcome,
                            NodeKind::Move {
                                player,
                                cell,
                                children,
                            } => {
                                let d = match player {
                                    Player::A => da[pos_a[*cell].expect("A cell")],
                                    Player::B => db[pos_b[*cell].expect("B cell")],
                                };
                                at = children[d];
                            }
                        }
                    }
                })
                .collect()
        })
        .collect();
    let rows = enumerate_functional(game, Player::A).map(|s| s.label()).collect();
    let cols = enumerate_functional(game, Player::B).map(|s| s.label()).collect();
    StrategicGame::new(game.outcomes().clone(), rows, cols, matrix)
}

/// The canonical imperfect-information realization of a strategic game: A
/// picks a row, then B picks a column without seeing it.
pub fn strategic_to_extensive(sg: &StrategicGame) -> ExtensiveGame {
    let tree = TreeSpec::a(
        sg.matrix
            .iter()
            .map(|row| {
                TreeSpec::b(
                    row.iter()
                        .map(|&o| TreeSpec::leaf(sg.outcomes.label(o)))
                        .collect(),
                )
                .info("columns")
            })
            .collect(),
    );
    ExtensiveGame::from_tree(sg.outcomes.clone(), &tree)
        .expect("realization of a valid strategic game is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o123() -> Outcomes {
        Outcomes::new(["1", "2", "3"]).unwrap()
    }

    fn dist_left() -> ExtensiveGame {
        ExtensiveGame::from_tree(
            o123(),
            &TreeSpec::a(vec![
                TreeSpec::leaf("1"),
                TreeSpec::b(vec![TreeSpec::leaf("2"), TreeSpec::leaf("3")]),
            ]),
        )
        .unwrap()
    }

    fn dist_right() -> ExtensiveGame {
        ExtensiveGame::from_tree(
            o123(),
            &TreeSpec::b(vec![
                TreeSpec::a(vec![TreeSpec::leaf("1"), TreeSpec::leaf("2")]),
                TreeSpec::a(vec![TreeSpec::leaf("1"), TreeSpec::leaf("3")]),
            ]),
        )
        .unwrap()
    }

    #[test]
    fn distribution_pair_matrices() {
        let left = to_strategic_form(&dist_left()).unwrap();
        assert_eq!(left.label_matrix(), vec![vec!["1", "1"], vec!["2", "3"]]);
        let right = to_strategic_form(&dist_right()).unwrap();
        assert_eq!(
            right.label_matrix(),
            vec![
                vec!["1", "1"],
                vec!["2", "1"],
                vec!["1", "3"],
                vec!["2", "3"]
            ]
        );
    }

    #[test]
    fn single_leaf_is_one_by_one() {
        let g = ExtensiveGame::leaf(&o123(), "2").unwrap();
        let sg = to_strategic_form(&g).unwrap();
        assert_eq!(sg.label_matrix(), vec![vec!["2"]]);
    }

    #[test]
    fn realization_of_one_by_one() {
        let sg = StrategicGame::from_labels(Outcomes::new(["x"]).unwrap(), &[vec!["x"]]).unwrap();
        let g = strategic_to_extensive(&sg);
        assert_eq!(g.nodes().len(), 3);
        assert!(to_strategic_form(&g).unwrap().isomorphic(&sg));
    }

    #[test]
    fn realization_gives_one_b_strategy_per_column() {
        let sg = StrategicGame::from_labels(
            Outcomes::new(["0", "1"]).unwrap(),
            &[vec!["1", "1", "0"], vec!["0", "0", "0"]],
        )
        .unwrap();
        let g = strategic_to_extensive(&sg);
        assert_eq!(enumerate_functional(&g, Player::B).count(), 3);
        let back = to_strategic_form(&g).unwrap();
        assert_eq!(back.matrix(), sg.matrix());
        assert!(back.isomorphic(&sg));
    }

    #[test]
    fn isomorphism_up_to_permutation() {
        let o = Outcomes::new(["0", "1", "2"]).unwrap();
        let a = StrategicGame::from_labels(o.clone(), &[vec!["0", "1"], vec!["2", "0"]]).unwrap();
        let b = StrategicGame::from_labels(o.clone(), &[vec!["0", "2"], vec!["1", "0"]]).unwrap();
        let c = StrategicGame::from_labels(o, &[vec!["0", "1"], vec!["0", "2"]]).unwrap();
        assert!(a.isomorphic(&b));
        assert!(!a.isomorphic(&c));
    }

    #[test]
    fn malformed_matrices_rejected() {
        let o = Outcomes::new(["0"]).unwrap();
        assert!(StrategicGame::new(o.clone(), vec![], vec!["c".into()], vec![]).is_err());
        assert!(StrategicGame::new(
            o.clone(),
            vec!["r".into()],
            vec!["c".into()],
            vec![vec![0, 0]]
        )
        .is_err());
        assert!(StrategicGame::new(o, vec!["r".into()], vec!["c".into()], vec![vec![3]]).is_err());
    }
}
