//! Propositions, letters and ultimately periodic words.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{Formula, Proposition};

/// Largest alphabet whose letters (`2^P`) are materialized.
pub const MAX_PROPOSITIONS: usize = 16;

/// An ordered, duplicate-free set of propositions. Letters are bitmasks over
/// the declaration order: proposition `i` is bit `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Proposition>", into = "Vec<Proposition>")]
pub struct Alphabet {
    props: Vec<Proposition>,
}

/// A set of propositions, encoded relative to some [`Alphabet`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter(pub u32);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let props = names
            .into_iter()
            .map(Proposition::new)
            .collect::<Result<Vec<_>>>()?;
        Self::from_props(props)
    }

    pub fn from_props(props: Vec<Proposition>) -> Result<Self> {
        if props.len() > MAX_PROPOSITIONS {
            return Err(Error::AlphabetTooLarge {
                size: props.len(),
                max: MAX_PROPOSITIONS,
            });
        }
        for (i, p) in props.iter().enumerate() {
            if props[..i].contains(p) {
                return Err(Error::InvalidProposition(format!("{p} (duplicate)")));
            }
        }
        Ok(Self { props })
    }

    /// The atoms of `phi` in lexicographic order.
    pub fn from_formula(phi: &Formula) -> Result<Self> {
        Self::from_props(phi.atoms().into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn propositions(&self) -> &[Proposition] {
        &self.props
    }

    pub fn index_of(&self, p: &Proposition) -> Option<usize> {
        self.props.iter().position(|q| q == p)
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.props.iter().position(|q| q.as_str() == name)
    }

    /// Number of letters, `2^|P|`.
    pub fn letter_count(&self) -> usize {
        1 << self.props.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count() as u32).map(Letter)
    }

    pub fn empty_letter(&self) -> Letter {
        Letter::EMPTY
    }

    /// Builds the letter holding exactly the named propositions.
    pub fn letter<I, S>(&self, names: I) -> Result<Letter>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u32;
        for name in names {
            let name = name.as_ref();
            let i = self
                .index_of_name(name)
                .ok_or_else(|| Error::UnknownProposition(name.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Letter(bits))
    }

    pub fn check(&self, letter: Letter) -> Result<Letter> {
        if (letter.0 as usize) < self.letter_count() {
            Ok(letter)
        } else {
            Err(Error::LetterOutOfRange {
                letter: letter.0,
                size: self.len(),
            })
        }
    }

    pub fn names_in(&self, letter: Letter) -> Vec<&str> {
        self.props
            .iter()
            .enumerate()
            .filter(|(i, _)| letter.contains(*i))
            .map(|(_, p)| p.as_str())
            .collect()
    }

    /// Renders a letter as `{a,b}`; the empty letter is `{}`.
    pub fn format_letter(&self, letter: Letter) -> String {
        format!("{{{}}}", self.names_in(letter).join(","))
    }
}

impl TryFrom<Vec<Proposition>> for Alphabet {
    type Error = Error;

    fn try_from(props: Vec<Proposition>) -> Result<Self> {
        Self::from_props(props)
    }
}

impl From<Alphabet> for Vec<Proposition> {
    fn from(a: Alphabet) -> Self {
        a.props
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.props.iter().map(Proposition::as_str).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// An ultimately periodic word `stem · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    stem: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::EmptyLoop);
        }
        Ok(Self { stem, cycle })
    }

    /// `cycle^ω`.
    pub fn periodic(cycle: Vec<Letter>) -> Result<Self> {
        Self::new(Vec::new(), cycle)
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Number of distinct positions, `|stem| + |cycle|`.
    pub fn positions(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn letter_at(&self, position: usize) -> Letter {
        if position < self.stem.len() {
            self.stem[position]
        } else {
            self.cycle[(position - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Position reached after one step; the last cycle position loops back.
    pub fn successor(&self, position: usize) -> usize {
        if position + 1 < self.positions() {
            position + 1
        } else {
            self.stem.len()
        }
    }

    /// Whether `position` lies on the cycle, i.e. recurs infinitely often.
    pub fn is_recurrent(&self, position: usize) -> bool {
        position >= self.stem.len()
    }

    /// The word with the first `n` letters removed.
    pub fn suffix(&self, n: usize) -> LassoWord {
        if n <= self.stem.len() {
            return Self {
                stem: self.stem[n..].to_vec(),
                cycle: self.cycle.clone(),
            };
        }
        let shift = (n - self.stem.len()) % self.cycle.len();
        let mut cycle = self.cycle[shift..].to_vec();
        cycle.extend_from_slice(&self.cycle[..shift]);
        Self {
            stem: Vec::new(),
            cycle,
        }
    }

    /// `prefix · self`.
    pub fn prepend(&self, prefix: &[Letter]) -> LassoWord {
        let mut stem = prefix.to_vec();
        stem.extend_from_slice(&self.stem);
        Self {
            stem,
            cycle: self.cycle.clone(),
        }
    }

    pub fn display(&self, alphabet: &Alphabet) -> String {
        let render = |ls: &[Letter]| {
            ls.iter()
                .map(|&l| alphabet.format_letter(l))
                .collect::<Vec<_>>()
                .join("")
        };
        format!("{}({})^w", render(&self.stem), render(&self.cycle))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_are_bitmasks() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        assert_eq!(ab.letter_count(), 4);
        assert_eq!(ab.letter(["b"]).unwrap(), Letter(2));
        assert_eq!(ab.letter(Vec::<&str>::new()).unwrap(), Letter::EMPTY);
        assert_eq!(ab.format_letter(Letter(3)), "{a,b}");
        assert_eq!(ab.format_letter(Letter(0)), "{}");
        assert!(ab.letter(["c"]).is_err());
        assert!(ab.check(Letter(4)).is_err());
    }

    #[test]
    fn alphabet_limits() {
        let names: Vec<String> = (0..17).map(|i| format!("p{i}")).collect();
        assert!(matches!(
            Alphabet::new(names),
            Err(Error::AlphabetTooLarge { size: 17, .. })
        ));
        assert!(Alphabet::new(["a", "a"]).is_err());
    }

    #[test]
    fn lasso_suffixes() {
        let (e, a) = (Letter(0), Letter(1));
        let w = LassoWord::new(vec![e], vec![a, e]).unwrap();
        assert_eq!(w.positions(), 3);
        assert_eq!(w.successor(2), 1);
        assert_eq!(w.letter_at(4), e);
        assert_eq!(w.suffix(1), LassoWord::periodic(vec![a, e]).unwrap());
        assert_eq!(w.suffix(2), LassoWord::periodic(vec![e, a]).unwrap());
        assert_eq!(w.suffix(4), LassoWord::periodic(vec![e, a]).unwrap());
        for n in 0..8 {
            let s = w.suffix(n);
            assert!(s.positions() <= w.positions());
            for k in 0..6 {
                assert_eq!(s.letter_at_step(k), w.letter_at_step(n + k));
            }
        }
        assert!(LassoWord::new(vec![a], vec![]).is_err());
    }

    impl LassoWord {
        fn letter_at_step(&self, k: usize) -> Letter {
            let mut p = 0;
            for _ in 0..k {
                p = self.successor(p);
            }
            self.letter_at(p)
        }
    }
}
