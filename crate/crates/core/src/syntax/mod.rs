//! Formula AST shared by LTL and rLTL, plus the structural rewrites the
//! rest of the pipeline relies on.
//!
//! The surface syntax does not distinguish dotted (robust) from plain
//! temporal operators. Whether `G a` means the robust or the classical
//! always is decided by the [`Flavor`] a formula is parsed with.

mod parse;
mod print;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use parse::parse;

/// An atomic proposition: an ASCII letter followed by letters, digits or `_`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Proposition(String);

impl Proposition {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_identifier(&name) && !parse::is_keyword(&name) {
            Ok(Self(name))
        } else {
            Err(Error::InvalidProposition(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl TryFrom<String> for Proposition {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Proposition> for String {
    fn from(p: Proposition) -> Self {
        p.0
    }
}

impl fmt::Display for Proposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// How the temporal operators of a formula are interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Robust,
    Classical,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Robust => "robust",
            Flavor::Classical => "classical",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Proposition),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Always(Box<Formula>),
}

/// A formula together with the flavor it was read in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Property {
    pub formula: Formula,
    pub flavor: Flavor,
}

impl Property {
    pub fn new(formula: Formula, flavor: Flavor) -> Self {
        Self { formula, flavor }
    }

    /// Returns the formula if it was read with the expected flavor.
    pub fn expect_flavor(&self, expected: Flavor) -> Result<&Formula> {
        if self.flavor == expected {
            Ok(&self.formula)
        } else {
            Err(Error::FlavorMismatch {
                expected,
                found: self.flavor,
            })
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.formula.fmt(f)
    }
}

/// Syntactic fragment of a robust formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fragment {
    ReleaseFree,
    Full,
}

impl Formula {
    /// Builds an atom, panicking on an invalid name. Meant for literals in
    /// code and tests; use [`Proposition::new`] for untrusted input.
    pub fn atom(name: &str) -> Self {
        Formula::Atom(Proposition::new(name).expect("invalid proposition name"))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Self) -> Self {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Self) -> Self {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn next(self) -> Self {
        Formula::Next(Box::new(self))
    }

    pub fn until(self, rhs: Self) -> Self {
        Formula::Until(Box::new(self), Box::new(rhs))
    }

    pub fn release(self, rhs: Self) -> Self {
        Formula::Release(Box::new(self), Box::new(rhs))
    }

    pub fn eventually(self) -> Self {
        Formula::Eventually(Box::new(self))
    }

    pub fn always(self) -> Self {
        Formula::Always(Box::new(self))
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => vec![],
            Formula::Not(a) | Formula::Next(a) | Formula::Eventually(a) | Formula::Always(a) => {
                vec![a]
            }
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => vec![a, b],
        }
    }

    /// Number of distinct subformulas.
    pub fn size(&self) -> usize {
        fn collect<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>) {
            if seen.insert(f) {
                for c in f.children() {
                    collect(c, seen);
                }
            }
        }
        let mut seen = HashSet::new();
        collect(self, &mut seen);
        seen.len()
    }

    /// Nesting depth; atoms and constants have depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<Proposition> {
        fn collect(f: &Formula, out: &mut BTreeSet<Proposition>) {
            if let Formula::Atom(p) = f {
                out.insert(p.clone());
            }
            for c in f.children() {
                collect(c, out);
            }
        }
        let mut out = BTreeSet::new();
        collect(self, &mut out);
        out
    }

    pub fn contains_implication(&self) -> bool {
        matches!(self, Formula::Implies(..)) || self.children().iter().any(|c| c.contains_implication())
    }

    fn map_children(&self, f: &mut impl FnMut(&Formula) -> Formula) -> Formula {
        let b = |x: &Formula, f: &mut dyn FnMut(&Formula) -> Formula| Box::new(f(x));
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(a) => Formula::Not(b(a, f)),
            Formula::Next(a) => Formula::Next(b(a, f)),
            Formula::Eventually(a) => Formula::Eventually(b(a, f)),
            Formula::Always(a) => Formula::Always(b(a, f)),
            Formula::And(x, y) => Formula::And(b(x, f), b(y, f)),
            Formula::Or(x, y) => Formula::Or(b(x, f), b(y, f)),
            Formula::Implies(x, y) => Formula::Implies(b(x, f), b(y, f)),
            Formula::Until(x, y) => Formula::Until(b(x, f), b(y, f)),
            Formula::Release(x, y) => Formula::Release(b(x, f), b(y, f)),
        }
    }
}

/// Replaces every `φ -> ψ` by `!φ | ψ`.
pub fn rewrite_implications(phi: &Formula) -> Formula {
    match phi {
        Formula::Implies(a, b) => rewrite_implications(a).not().or(rewrite_implications(b)),
        _ => phi.map_children(&mut rewrite_implications),
    }
}

/// Expands `F ψ` to `true U ψ` and `G ψ` to `false R ψ`.
pub fn desugar(phi: &Formula) -> Formula {
    match phi {
        Formula::Eventually(a) => Formula::True.until(desugar(a)),
        Formula::Always(a) => Formula::False.release(desugar(a)),
        _ => phi.map_children(&mut desugar),
    }
}

/// Classifies a formula by whether it syntactically uses release. The
/// always operator does not count even though it is release in disguise.
pub fn fragment_of(phi: &Formula) -> Fragment {
    fn has_release(f: &Formula) -> bool {
        matches!(f, Formula::Release(..)) || f.children().into_iter().any(has_release)
    }
    if has_release(phi) {
        Fragment::Full
    } else {
        Fragment::ReleaseFree
    }
}
