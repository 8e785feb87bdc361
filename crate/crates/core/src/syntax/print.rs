use std::fmt;

use super::Formula;

// Binding strength, loosest first. Unary operators and atoms bind tightest.
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNTIL: u8 = 4;
const UNARY: u8 = 5;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => IMPLIES,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        Formula::Until(..) | Formula::Release(..) => UNTIL,
        _ => UNARY,
    }
}

fn child(f: &mut fmt::Formatter<'_>, c: &Formula, min: u8) -> fmt::Result {
    if level(c) < min {
        write!(f, "({c})")
    } else {
        write!(f, "{c}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(p) => write!(f, "{p}"),
            Formula::Not(a) => {
                f.write_str("!")?;
                child(f, a, UNARY)
            }
            Formula::Next(a) => {
                f.write_str("X ")?;
                child(f, a, UNARY)
            }
            Formula::Eventually(a) => {
                f.write_str("F ")?;
                child(f, a, UNARY)
            }
            Formula::Always(a) => {
                f.write_str("G ")?;
                child(f, a, UNARY)
            }
            // left-associative chains
            Formula::Or(a, b) => {
                child(f, a, OR)?;
                f.write_str(" | ")?;
                child(f, b, OR + 1)
            }
            Formula::And(a, b) => {
                child(f, a, AND)?;
                f.write_str(" & ")?;
                child(f, b, AND + 1)
            }
            // right-associative
            Formula::Implies(a, b) => {
                child(f, a, IMPLIES + 1)?;
                f.write_str(" -> ")?;
                child(f, b, IMPLIES)
            }
            Formula::Until(a, b) => {
                child(f, a, UNTIL + 1)?;
                f.write_str(" U ")?;
                child(f, b, UNTIL)
            }
            Formula::Release(a, b) => {
                child(f, a, UNTIL + 1)?;
                f.write_str(" R ")?;
                child(f, b, UNTIL)
            }
        }
    }
}
