//! Truth-value domains and exact valuation of LTL and rLTL over lasso words.
//!
//! The evaluators here are deliberately independent of the automata
//! pipeline and serve as its oracle.

mod lasso;
mod translate;
mod values;

pub use lasso::{eval_ltl_lasso, eval_rltl_lasso};
pub use translate::ltl_bit;
pub use values::{specificity_leq, truth_value_leq, xi, Ternary, TruthValue4, Verdict3, Verdict4};
