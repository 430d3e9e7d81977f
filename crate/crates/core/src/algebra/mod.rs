//! Game operations, dynamic games and sample-based equation checking.

mod dynamic;
mod laws;
pub(crate) mod ops;
mod random;
mod term;

pub use dynamic::{composed_power_relation, seq_compose, DynamicGame};
pub use laws::{
    check_congruence, check_equation, small_dynamic_games, state_set, CongruenceCounterexample, CongruenceReport,
    EquationCounterexample, EquationReport, Equiv, Op, Position, SamplerConfig,
};
pub use ops::{op_dual, op_plus, op_times};
pub use random::{random_game, random_game_with, small_games};
pub use term::{eval_dynamic, eval_static, parse_equation, parse_term, Equation, GameTerm};
