use crate::syntax::Formula;

/// Classical LTL formula whose truth on a word equals bit `i` of the robust
/// valuation of `phi`.
///
/// Negation always restarts at bit 1, implications below bit 4 carry the
/// condition for the next bit along, and robust always/release pick up the
/// `G`, `F G`, `G F`, `F` pattern of their bit.
pub fn ltl_bit(i: usize, phi: &Formula) -> Formula {
    assert!((1..=4).contains(&i), "bit index {i} out of range");
    match phi {
        Formula::True | Formula::False | Formula::Atom(_) => phi.clone(),
        Formula::Not(a) => ltl_bit(1, a).not(),
        Formula::Or(a, b) => ltl_bit(i, a).or(ltl_bit(i, b)),
        Formula::And(a, b) => ltl_bit(i, a).and(ltl_bit(i, b)),
        Formula::Implies(a, b) => {
            let here = ltl_bit(i, a).implies(ltl_bit(i, b));
            if i < 4 {
                here.and(ltl_bit(i + 1, phi))
            } else {
                here
            }
        }
        Formula::Next(a) => ltl_bit(i, a).next(),
        Formula::Eventually(a) => ltl_bit(i, a).eventually(),
        Formula::Always(a) => {
            let inner = ltl_bit(i, a);
            match i {
                1 => inner.always(),
                2 => inner.always().eventually(),
                3 => inner.eventually().always(),
                _ => inner.eventually(),
            }
        }
        Formula::Until(a, b) => ltl_bit(i, a).until(ltl_bit(i, b)),
        Formula::Release(a, b) => {
            let (lhs, rhs) = (ltl_bit(i, a), ltl_bit(i, b));
            match i {
                1 => lhs.release(rhs),
                2 => rhs.always().eventually().or(lhs.eventually()),
                3 => rhs.eventually().always().or(lhs.eventually()),
                _ => rhs.eventually().or(lhs.eventually()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Flavor};

    fn p(s: &str) -> Formula {
        parse(s, None, Flavor::Robust).unwrap().formula
    }

    #[test]
    fn robust_always_rows() {
        let g = p("G a");
        assert_eq!(ltl_bit(1, &g), p("G a"));
        assert_eq!(ltl_bit(2, &g), p("F G a"));
        assert_eq!(ltl_bit(3, &g), p("G F a"));
        assert_eq!(ltl_bit(4, &g), p("F a"));
    }

    #[test]
    fn robust_release_rows() {
        let r = p("a R b");
        assert_eq!(ltl_bit(1, &r), p("a R b"));
        assert_eq!(ltl_bit(2, &r), p("F G b | F a"));
        assert_eq!(ltl_bit(3, &r), p("G F b | F a"));
        assert_eq!(ltl_bit(4, &r), p("F b | F a"));
    }

    #[test]
    fn negation_uses_first_bit() {
        assert_eq!(ltl_bit(4, &p("!G a")), p("!G a"));
        assert_eq!(ltl_bit(2, &p("!(a R b)")), p("!(a R b)"));
    }

    #[test]
    fn implication_chains_to_higher_bits() {
        let phi = p("G a -> G b");
        assert_eq!(ltl_bit(4, &phi), p("F a -> F b"));
        assert_eq!(ltl_bit(3, &phi), p("(G F a -> G F b) & (F a -> F b)"));
        assert_eq!(
            ltl_bit(1, &phi),
            p("(G a -> G b) & ((F G a -> F G b) & ((G F a -> G F b) & (F a -> F b)))")
        );
    }

    #[test]
    fn other_rows_are_homomorphic() {
        assert_eq!(ltl_bit(3, &p("X a U F b")), p("X a U F b"));
        assert_eq!(ltl_bit(2, &p("a & b | true")), p("a & b | true"));
    }
}
