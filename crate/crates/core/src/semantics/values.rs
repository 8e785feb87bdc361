use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the five monotone rLTL truth values `0000 < 0001 < 0011 < 0111 < 1111`.
///
/// Stored as the number of trailing ones, which is also its rank in the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthValue4(u8);

impl TruthValue4 {
    pub const FALSE: Self = Self(0);
    pub const TRUE: Self = Self(4);
    pub const ALL: [Self; 5] = [Self(0), Self(1), Self(2), Self(3), Self(4)];

    /// Accepts only monotone bit patterns.
    pub fn from_bits(bits: [bool; 4]) -> Option<Self> {
        let ones = bits.iter().filter(|b| **b).count();
        let expected = Self(ones as u8).bits();
        (expected == bits).then_some(Self(ones as u8))
    }

    /// The value with `count` trailing ones.
    pub fn with_ones(count: u8) -> Self {
        assert!(count <= 4);
        Self(count)
    }

    pub fn ones(self) -> u8 {
        self.0
    }

    /// Bit `i` with `1 ≤ i ≤ 4`.
    pub fn bit(self, i: usize) -> bool {
        assert!((1..=4).contains(&i), "bit index {i} out of range");
        i > 4 - self.0 as usize
    }

    pub fn bits(self) -> [bool; 4] {
        [self.bit(1), self.bit(2), self.bit(3), self.bit(4)]
    }
}

impl fmt::Display for TruthValue4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for TruthValue4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Artifact(format!("invalid truth value `{s}`"));
        let chars: Vec<char> = s.chars().collect();
        if chars.len() != 4 {
            return Err(bad());
        }
        let mut bits = [false; 4];
        for (b, c) in bits.iter_mut().zip(chars) {
            *b = match c {
                '0' => false,
                '1' => true,
                _ => return Err(bad()),
            };
        }
        Self::from_bits(bits).ok_or_else(bad)
    }
}

/// A three-valued verdict cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ternary {
    Zero,
    Unknown,
    One,
}

impl Ternary {
    pub fn as_char(self) -> char {
        match self {
            Ternary::Zero => '0',
            Ternary::Unknown => '?',
            Ternary::One => '1',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '0' => Some(Ternary::Zero),
            '?' => Some(Ternary::Unknown),
            '1' => Some(Ternary::One),
            _ => None,
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Ternary::One
        } else {
            Ternary::Zero
        }
    }

    /// `self ⪯ other`: a definite cell must be kept.
    pub fn refined_by(self, other: Ternary) -> bool {
        self == Ternary::Unknown || self == other
    }
}

/// Robust monitor verdict: four cells of shape `0^a ?^b 1^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Verdict4([Ternary; 4]);

impl Verdict4 {
    pub const UNKNOWN: Self = Self([Ternary::Unknown; 4]);

    pub fn new(cells: [Ternary; 4]) -> Option<Self> {
        cells.windows(2).all(|w| w[0] <= w[1]).then_some(Self(cells))
    }

    /// All fifteen legal verdicts in lexicographic cell order.
    pub fn all() -> Vec<Self> {
        let cells = [Ternary::Zero, Ternary::Unknown, Ternary::One];
        let mut out = Vec::new();
        for a in cells {
            for b in cells {
                for c in cells {
                    for d in cells {
                        if let Some(v) = Self::new([a, b, c, d]) {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn cells(self) -> [Ternary; 4] {
        self.0
    }

    /// Cell `i` with `1 ≤ i ≤ 4`.
    pub fn cell(self, i: usize) -> Ternary {
        self.0[i - 1]
    }

    pub fn is_unknown(self) -> bool {
        self == Self::UNKNOWN
    }

    pub fn from_truth_value(v: TruthValue4) -> Self {
        Self(v.bits().map(Ternary::from_bool))
    }
}

impl fmt::Display for Verdict4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.0 {
            write!(f, "{}", c.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Verdict4 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Artifact(format!("invalid robust verdict `{s}`"));
        let cells: Vec<Ternary> = s.chars().map(Ternary::from_char).collect::<Option<_>>().ok_or_else(bad)?;
        let cells: [Ternary; 4] = cells.try_into().map_err(|_| bad())?;
        Self::new(cells).ok_or_else(bad)
    }
}

/// Classical three-valued (LTL3) verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Verdict3(pub Ternary);

impl Verdict3 {
    pub const UNKNOWN: Self = Self(Ternary::Unknown);

    pub fn is_unknown(self) -> bool {
        self.0 == Ternary::Unknown
    }
}

impl fmt::Display for Verdict3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.as_char())
    }
}

impl FromStr for Verdict3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next().and_then(Ternary::from_char), chars.next()) {
            (Some(t), None) => Ok(Self(t)),
            _ => Err(Error::Artifact(format!("invalid LTL3 verdict `{s}`"))),
        }
    }
}

macro_rules! string_serde {
    ($t:ty) => {
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_serde!(TruthValue4);
string_serde!(Verdict4);
string_serde!(Verdict3);

/// Collapses a set of possible truth values into a verdict: a cell is
/// definite when every value agrees on that bit.
pub fn xi<I: IntoIterator<Item = TruthValue4>>(values: I) -> Result<Verdict4> {
    let mut seen_zero = [false; 4];
    let mut seen_one = [false; 4];
    let mut any = false;
    for v in values {
        any = true;
        for (i, b) in v.bits().into_iter().enumerate() {
            if b {
                seen_one[i] = true;
            } else {
                seen_zero[i] = true;
            }
        }
    }
    if !any {
        return Err(Error::EmptyTruthSet);
    }
    let cells = std::array::from_fn(|i| match (seen_zero[i], seen_one[i]) {
        (true, false) => Ternary::Zero,
        (false, true) => Ternary::One,
        _ => Ternary::Unknown,
    });
    // Monotone inputs always collapse to a monotone verdict.
    Ok(Verdict4::new(cells).expect("xi of monotone values is monotone"))
}

/// `x ⪯ y`: every definite cell of `x` is kept by `y`.
pub fn specificity_leq(x: Verdict4, y: Verdict4) -> bool {
    x.0.iter().zip(y.0).all(|(a, b)| a.refined_by(b))
}

pub fn truth_value_leq(x: TruthValue4, y: TruthValue4) -> bool {
    x <= y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tv(s: &str) -> TruthValue4 {
        s.parse().unwrap()
    }
    fn v(s: &str) -> Verdict4 {
        s.parse().unwrap()
    }

    #[test]
    fn truth_values_are_monotone() {
        let strings: Vec<String> = TruthValue4::ALL.iter().map(|v| v.to_string()).collect();
        assert_eq!(strings, ["0000", "0001", "0011", "0111", "1111"]);
        assert!(TruthValue4::from_bits([true, false, false, false]).is_none());
        assert!("0101".parse::<TruthValue4>().is_err());
        assert!(tv("0001").bit(4));
        assert!(!tv("0001").bit(3));
    }

    #[test]
    fn exactly_fifteen_verdicts() {
        let all = Verdict4::all();
        assert_eq!(all.len(), 15);
        // brute force over all 81 cell combinations
        let shaped = (0..81)
            .filter(|n| {
                let s: String = (0..4)
                    .map(|k| ['0', '?', '1'][(n / 3usize.pow(k)) % 3])
                    .collect();
                let t = s.trim_start_matches('0').trim_start_matches('?').trim_start_matches('1');
                t.is_empty()
            })
            .count();
        assert_eq!(shaped, 15);
        assert!("0?1?".parse::<Verdict4>().is_err());
        assert!("1?".parse::<Verdict4>().is_err());
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi([tv("0000"), tv("1111")]).unwrap(), v("????"));
        assert_eq!(xi([tv("1111")]).unwrap(), v("1111"));
        assert_eq!(xi([tv("0001"), tv("0111")]).unwrap(), v("0??1"));
        assert_eq!(xi([]), Err(Error::EmptyTruthSet));
    }

    #[test]
    fn specificity_examples() {
        assert!(specificity_leq(v("????"), v("0??1")));
        assert!(!specificity_leq(v("0???"), v("???1")));
        for x in Verdict4::all() {
            assert!(specificity_leq(x, x));
            assert!(specificity_leq(Verdict4::UNKNOWN, x));
        }
    }

    #[test]
    fn truth_value_order() {
        assert!(truth_value_leq(tv("0011"), tv("0111")));
        assert!(!truth_value_leq(tv("1111"), tv("0000")));
        for x in TruthValue4::ALL {
            assert!(truth_value_leq(x, x));
        }
    }

    #[test]
    fn serde_as_strings() {
        assert_eq!(serde_json::to_string(&v("0??1")).unwrap(), "\"0??1\"");
        assert_eq!(serde_json::from_str::<Verdict3>("\"?\"").unwrap(), Verdict3::UNKNOWN);
        assert!(serde_json::from_str::<Verdict4>("\"1??0\"").is_err());
    }
}
