//! Monitor compiler and runtime for robust Linear Temporal Logic (rLTL).
//!
//! Formulas are parsed into a shared [`Formula`] AST and interpreted either
//! classically (plain LTL) or robustly (five-valued rLTL). The compilation
//! pipeline translates a formula into Büchi automata, derives prefix automata
//! from them, determinizes, and finally assembles a minimized Moore machine
//! whose output after every event is the four-cell robust verdict (or the
//! three-valued LTL verdict for classical formulas).
//!
//! ```
//! use rltl_core::{parse, Alphabet, Flavor, build_rltl_monitor, BuildOptions};
//!
//! let phi = parse("G a", None, Flavor::Robust).unwrap();
//! let alphabet = Alphabet::from_formula(&phi.formula).unwrap();
//! let monitor = build_rltl_monitor(&phi.formula, &alphabet, &BuildOptions::default()).unwrap();
//! let mut run = monitor.start();
//! assert_eq!(run.verdict().to_string(), "????");
//! assert_eq!(run.step(alphabet.letter(["a"]).unwrap()).unwrap().to_string(), "???1");
//! assert_eq!(run.step(alphabet.empty_letter()).unwrap().to_string(), "0??1");
//! ```

pub mod alphabet;
pub mod automata;
pub mod error;
pub mod monitor;
pub mod semantics;
pub mod syntax;

pub use alphabet::{Alphabet, LassoWord, Letter, MAX_PROPOSITIONS};
pub use error::{Error, Result};
pub use monitor::{
    analyze_monitorability, build_ltl3_monitor, build_rltl_monitor, build_rltl_monitor_per_bit,
    compile, minimize_moore, reachable_verdicts, BuildOptions, BuildStats, MonitorMode,
    MonitorReport, MonitorRun, Monitorability, MooreMonitor, Verdict,
};
pub use semantics::{
    eval_ltl_lasso, eval_rltl_lasso, ltl_bit, specificity_leq, truth_value_leq, xi, Ternary,
    TruthValue4, Verdict3, Verdict4,
};
pub use syntax::{
    desugar, fragment_of, parse, rewrite_implications, Flavor, Formula, Fragment, Property,
    Proposition,
};
