//! Game logic and instantial game logic over neighborhood models.

mod axioms;
mod check;
mod formula;
mod model;
mod parser;
mod random;
mod search;

pub use axioms::{axiom_soundness_suite, AxiomReport, AxiomViolation, Schema};
pub use check::{model_check, model_check_exact, valid_in};
pub use formula::Formula;
pub use model::{
    add_outcome_atoms, encode_game_as_model, validate_frame, FrameFailure, FrameKind, FrameReport, ModelFile,
    NeighborhoodModel, ROOT_WORLD,
};
pub use parser::{parse_formula, ParseError};
pub use random::{random_formula, random_game_model, random_instantial_model, random_valuation};
pub use search::{countermodel_search, Countermodel, SearchReport};
