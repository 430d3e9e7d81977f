//! Powers of players in finite two-player games.
//!
//! The crate computes what each player can force in an extensive or
//! strategic game at three levels of detail:
//!
//! * **powers**, outcome sets a strategy keeps every match inside;
//! * **basic powers**, the exact outcome set of one functional strategy;
//! * **relational basic powers**, the exact outcome set of a strategy that
//!   may leave several moves open.
//!
//! On top of these it decides the matching game equivalences and model
//! bisimulations ([`equivalence`]), rebuilds a game from any legal pair of
//! basic-power families ([`representation`]), evaluates game logic and
//! instantial game logic over neighborhood models ([`logic`]) and checks the
//! laws of the game algebra on seeded samples ([`algebra`]).
//!
//! ```
//! use gamepowers::game::{ExtensiveGame, Player, TreeSpec};
//! use gamepowers::outcome::Outcomes;
//! use gamepowers::powers::PowerSource;
//!
//! let o = Outcomes::new(["1", "2", "3"]).unwrap();
//! let g = ExtensiveGame::from_tree(
//!     o,
//!     &TreeSpec::a(vec![
//!         TreeSpec::leaf("1"),
//!         TreeSpec::b(vec![TreeSpec::leaf("2"), TreeSpec::leaf("3")]),
//!     ]),
//! )
//! .unwrap();
//! assert_eq!(g.basic_powers(Player::A).to_string(), "{{1},{2,3}}");
//! ```

pub mod algebra;
pub mod cli;
pub mod equivalence;
pub mod error;
pub mod game;
pub mod logic;
pub mod outcome;
pub mod powers;
pub mod representation;

pub use error::{Error, Result};
