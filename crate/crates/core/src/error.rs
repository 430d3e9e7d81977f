use thiserror::Error;

use crate::game::ValidationReport;
use crate::powers::ConditionProfile;

/// Errors raised by the library. Violations of game or frame conditions that
/// are part of an analysis result are reported as data, not through this type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate outcome label `{0}`")]
    DuplicateOutcome(String),

    #[error("unknown outcome label `{0}`")]
    UnknownOutcome(String),

    #[error("at most {max} outcomes are supported, got {got}")]
    TooManyOutcomes { got: usize, max: usize },

    #[error("outcome sets differ: {left:?} vs {right:?}")]
    OutcomeMismatch { left: Vec<String>, right: Vec<String> },

    #[error("invalid game: {0}")]
    InvalidGame(ValidationReport),

    #[error("invalid strategic game: {0}")]
    InvalidStrategicGame(String),

    #[error("strategy does not fit the game: {0}")]
    InvalidStrategy(String),

    #[error("strategy space too large: {count} strategies exceed the limit {limit}")]
    TooManyStrategies { count: u128, limit: u128 },

    #[error("power families violate the required conditions")]
    IllegalFamilies(Box<(ConditionProfile, ConditionProfile)>),

    #[error("{0} is not a member of the family")]
    NotAMember(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("unknown world `{0}`")]
    UnknownWorld(String),

    #[error(transparent)]
    Parse(#[from] crate::logic::ParseError),

    #[error("term error: {0}")]
    Term(String),

    #[error("sampling exhausted after {attempts} attempts")]
    SamplingExhausted { attempts: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
