//! Büchi automata for LTL, prefix automata and their determinization.

mod buchi;
mod dfa;
mod dot;
mod generalized;

mod ops;
mod simulation;
mod tableau;

pub use buchi::{BuchiAutomaton, Edge, Guard, Nfa};
pub use dfa::{determinize, determinize_pruned, dfa_minimize, Dfa};
pub use dot::{buchi_to_dot, dfa_to_dot, nfa_to_dot};
pub use generalized::{GeneralizedBuchi, GeneralizedEdge, Marks};
pub use ops::{
    buchi_intersection, live_states, prefix_nfa, product_language_of_truth_value, truth_value_generalized,
};
pub use tableau::{ltl_to_buchi, ltl_to_generalized};

pub(crate) use dfa::quotient;

use crate::error::Error;

/// Upper bound on the number of states any single construction may create.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub cap: usize,
}

impl Budget {
    pub const DEFAULT_CAP: usize = 100_000;

    pub(crate) fn exceeded(self, stage: &str) -> Error {
        Error::BudgetExceeded {
            stage: stage.to_string(),
            cap: self.cap,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            cap: Self::DEFAULT_CAP,
        }
    }
}
