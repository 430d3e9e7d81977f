//! JSON game files.
//!
//! Extensive: `{"outcomes": [...], "tree": node}` where a node is either
//! `{"outcome": label}` or `{"player": "A"|"B", "info": id, "children": [...]}`
//! (`info` optional). Strategic: `{"outcomes": [...], "rows": [...],
//! "cols": [...], "matrix": [[label, ...], ...]}`.

use serde::{Deserialize, Serialize};

use super::extensive::{ExtensiveGame, GameSpec, TreeSpec};
use super::strategic::StrategicGame;
use super::Player;
use crate::error::Result;
use crate::outcome::Outcomes;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum NodeFile {
    Leaf {
        outcome: String,
    },
    Move {
        player: Player,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        info: Option<String>,
        children: Vec<NodeFile>,
    },
}

impl NodeFile {
    fn to_tree(&self) -> TreeSpec {
        match self {
            NodeFile::Leaf { outcome } => TreeSpec::Leaf(outcome.clone()),
            NodeFile::Move {
                player,
                info,
                children,
            } => TreeSpec::Move {
                player: *player,
                info: info.clone(),
                children: children.iter().map(NodeFile::to_tree).collect(),
            },
        }
    }

    fn from_tree(tree: &TreeSpec) -> Self {
        match tree {
            TreeSpec::Leaf(o) => NodeFile::Leaf { outcome: o.clone() },
            TreeSpec::Move {
                player,
                info,
                children,
            } => NodeFile::Move {
                player: *player,
                info: info.clone(),
                children: children.iter().map(NodeFile::from_tree).collect(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensiveGameFile {
    outcomes: Vec<String>,
    tree: NodeFile,
}

impl ExtensiveGameFile {
    pub fn from_game(game: &ExtensiveGame) -> Self {
        ExtensiveGameFile {
            outcomes: game.outcomes().labels().to_vec(),
            tree: NodeFile::from_tree(&game.to_tree()),
        }
    }

    pub fn to_spec(&self) -> Result<GameSpec> {
        Ok(GameSpec::from_tree(
            Outcomes::new(self.outcomes.iter().cloned())?,
            &self.tree.to_tree(),
        ))
    }

    pub fn to_game(&self) -> Result<ExtensiveGame> {
        self.to_spec()?.build()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategicGameFile {
    outcomes: Vec<String>,
    rows: Vec<String>,
    cols: Vec<String>,
    matrix: Vec<Vec<String>>,
}

impl StrategicGameFile {
    pub fn from_game(game: &StrategicGame) -> Self {
        StrategicGameFile {
            outcomes: game.outcomes().labels().to_vec(),
            rows: game.rows().to_vec(),
            cols: game.cols().to_vec(),
            matrix: game.label_matrix(),
        }
    }

    pub fn to_game(&self) -> Result<StrategicGame> {
        let outcomes = Outcomes::new(self.outcomes.iter().cloned())?;
        let matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|l| outcomes.require(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        StrategicGame::new(outcomes, self.rows.clone(), self.cols.clone(), matrix)
    }
}

/// Either game file format.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AnyGameFile {
    Extensive(ExtensiveGameFile),
    Strategic(StrategicGameFile),
}

impl ExtensiveGame {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<ExtensiveGameFile>(text)?.to_game()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ExtensiveGameFile::from_game(self)).expect("serializable")
    }
}

impl StrategicGame {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<StrategicGameFile>(text)?.to_game()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(StrategicGameFile::from_game(self)).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_extensive_file() {
        let text = r#"{"outcomes":["1","2","3"],"tree":{"player":"A","children":[
            {"outcome":"1"},
            {"player":"B","info":"h","children":[{"outcome":"2"},{"outcome":"3"}]}]}}"#;
        let g = ExtensiveGame::from_json(text).unwrap();
        assert_eq!(g.nodes().len(), 5);
        let back = ExtensiveGame::from_json(&g.to_json().to_string()).unwrap();
        assert!(g.same_structure(&back));
    }

    #[test]
    fn parses_strategic_file() {
        let text = r#"{"outcomes":["0","1"],"rows":["u","d"],"cols":["l","r"],
            "matrix":[["0","1"],["1","1"]]}"#;
        let g = StrategicGame::from_json(text).unwrap();
        assert_eq!(g.outcome(0, 1), 1);
        assert!(matches!(
            serde_json::from_str::<AnyGameFile>(text).unwrap(),
            AnyGameFile::Strategic(_)
        ));
    }

    #[test]
    fn invalid_extensive_file_is_an_error() {
        let text = r#"{"outcomes":["1"],"tree":{"player":"A","children":[]}}"#;
        assert!(ExtensiveGame::from_json(text).is_err());
        let unknown = r#"{"outcomes":["1"],"tree":{"outcome":"9"}}"#;
        assert!(ExtensiveGame::from_json(unknown).is_err());
    }
}
