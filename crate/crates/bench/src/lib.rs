//! Formulas exercised by the pipeline benchmarks.

/// Robust formulas of increasing construction cost.
pub const FORMULAS: &[&str] = &[
    "G a",
    "a R a",
    "G F a",
    "F G a & F !F a",
    "G (a -> F b)",
    "(((a & d) | (!a & !d)) & G (!b | (!a & d))) | (((!a & d) | (a & !d)) & F (b & (a | !d))) | (a & G b)",
];
