//! Exact evaluation over ultimately periodic words.
//!
//! Both evaluators work on the `|stem| + |cycle|` distinct positions of a
//! lasso, computing one value per position for every subformula bottom-up.

use super::values::TruthValue4;
use crate::alphabet::{Alphabet, LassoWord};
use crate::error::{Error, Result};
use crate::syntax::Formula;

fn atom_index(alphabet: &Alphabet, phi: &Formula) -> Result<usize> {
    match phi {
        Formula::Atom(p) => alphabet
            .index_of(p)
            .ok_or_else(|| Error::UnknownProposition(p.to_string())),
        _ => unreachable!(),
    }
}

/// Classical valuation `V(σ, φ)` of an LTL formula.
pub fn eval_ltl_lasso(word: &LassoWord, phi: &Formula, alphabet: &Alphabet) -> Result<bool> {
    Ok(ltl_table(word, phi, alphabet)?[0])
}

fn ltl_table(word: &LassoWord, phi: &Formula, alphabet: &Alphabet) -> Result<Vec<bool>> {
    let n = word.positions();
    let succ = |p| word.successor(p);
    Ok(match phi {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(_) => {
            let idx = atom_index(alphabet, phi)?;
            (0..n).map(|p| word.letter_at(p).contains(idx)).collect()
        }
        Formula::Not(a) => ltl_table(word, a, alphabet)?.into_iter().map(|b| !b).collect(),
        Formula::And(a, b) => zip(ltl_table(word, a, alphabet)?, ltl_table(word, b, alphabet)?, |x, y| x && y),
        Formula::Or(a, b) => zip(ltl_table(word, a, alphabet)?, ltl_table(word, b, alphabet)?, |x, y| x || y),
        Formula::Implies(a, b) => zip(ltl_table(word, a, alphabet)?, ltl_table(word, b, alphabet)?, |x, y| !x || y),
        Formula::Next(a) => {
            let t = ltl_table(word, a, alphabet)?;
            (0..n).map(|p| t[succ(p)]).collect()
        }
        Formula::Eventually(a) => until_fixpoint(word, &vec![true; n], &ltl_table(word, a, alphabet)?),
        Formula::Always(a) => release_fixpoint(word, &vec![false; n], &ltl_table(word, a, alphabet)?),
        Formula::Until(a, b) => {
            until_fixpoint(word, &ltl_table(word, a, alphabet)?, &ltl_table(word, b, alphabet)?)
        }
        Formula::Release(a, b) => {
            release_fixpoint(word, &ltl_table(word, a, alphabet)?, &ltl_table(word, b, alphabet)?)
        }
    })
}

fn zip(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

/// Least fixpoint of `u = ψ ∨ (φ ∧ X u)`.
fn until_fixpoint(word: &LassoWord, lhs: &[bool], rhs: &[bool]) -> Vec<bool> {
    let n = word.positions();
    let mut val = vec![false; n];
    // Every backward sweep carries values across the loop edge once.
    for _ in 0..=word.cycle().len() {
        for p in (0..n).rev() {
            val[p] = rhs[p] || (lhs[p] && val[word.successor(p)]);
        }
    }
    val
}

/// Greatest fixpoint of `r = ψ ∧ (φ ∨ X r)`.
fn release_fixpoint(word: &LassoWord, lhs: &[bool], rhs: &[bool]) -> Vec<bool> {
    let n = word.positions();
    let mut val = vec![true; n];
    for _ in 0..=word.cycle().len() {
        for p in (0..n).rev() {
            val[p] = rhs[p] && (lhs[p] || val[word.successor(p)]);
        }
    }
    val
}

/// Robust valuation `V_r(σ, φ)`, computed from the min/max definition over
/// suffixes.
pub fn eval_rltl_lasso(word: &LassoWord, phi: &Formula, alphabet: &Alphabet) -> Result<TruthValue4> {
    let table = rltl_table(word, phi, alphabet)?;
    Ok(to_value(table[0]))
}

type Bits = [bool; 4];

fn to_value(bits: Bits) -> TruthValue4 {
    TruthValue4::from_bits(bits).expect("robust valuation is monotone")
}

/// The positions `σ[n..]` for `n = 0, 1, ..` starting at `start`, cut off
/// after `|stem| + 2|cycle|` steps. From step `|stem| + |cycle|` on, every
/// reachable position has been visited and the sequence is periodic, so the
/// last `|cycle|` entries form one full period of the tail.
fn horizon(word: &LassoWord, start: usize) -> (Vec<usize>, usize) {
    let tail_start = word.positions();
    let len = tail_start + word.cycle().len();
    let mut out = Vec::with_capacity(len);
    let mut p = start;
    for _ in 0..len {
        out.push(p);
        p = word.successor(p);
    }
    (out, tail_start)
}

fn rltl_table(word: &LassoWord, phi: &Formula, alphabet: &Alphabet) -> Result<Vec<Bits>> {
    let n = word.positions();
    let sub = |f: &Formula| rltl_table(word, f, alphabet);
    Ok(match phi {
        Formula::True => vec![[true; 4]; n],
        Formula::False => vec![[false; 4]; n],
        Formula::Atom(_) => {
            let idx = atom_index(alphabet, phi)?;
            (0..n).map(|p| [word.letter_at(p).contains(idx); 4]).collect()
        }
        Formula::Not(a) => sub(a)?
            .into_iter()
            .map(|v| [to_value(v) != TruthValue4::TRUE; 4])
            .collect(),
        Formula::And(a, b) => {
            let (x, y) = (sub(a)?, sub(b)?);
            (0..n).map(|p| to_value(x[p]).min(to_value(y[p])).bits()).collect()
        }
        Formula::Or(a, b) => {
            let (x, y) = (sub(a)?, sub(b)?);
            (0..n).map(|p| to_value(x[p]).max(to_value(y[p])).bits()).collect()
        }
        Formula::Implies(a, b) => {
            let (x, y) = (sub(a)?, sub(b)?);
            (0..n)
                .map(|p| {
                    let (l, r) = (to_value(x[p]), to_value(y[p]));
                    if l <= r { TruthValue4::TRUE } else { r }.bits()
                })
                .collect()
        }
        Formula::Next(a) => {
            let x = sub(a)?;
            (0..n).map(|p| x[word.successor(p)]).collect()
        }
        Formula::Eventually(a) => {
            let x = sub(a)?;
            (0..n)
                .map(|p| {
                    let (seq, _) = horizon(word, p);
                    std::array::from_fn(|i| seq.iter().any(|&q| x[q][i]))
                })
                .collect()
        }
        Formula::Always(a) => {
            let x = sub(a)?;
            (0..n)
                .map(|p| {
                    let (seq, tail) = horizon(word, p);
                    [
                        seq.iter().all(|&q| x[q][0]),
                        // max over m of min over n ≥ m: the periodic tail
                        seq[tail..].iter().all(|&q| x[q][1]),
                        // min over m of max over n ≥ m
                        seq[tail..].iter().any(|&q| x[q][2]),
                        seq.iter().any(|&q| x[q][3]),
                    ]
                })
                .collect()
        }
        Formula::Until(a, b) => {
            let (x, y) = (sub(a)?, sub(b)?);
            (0..n)
                .map(|p| {
                    let (seq, _) = horizon(word, p);
                    std::array::from_fn(|i| {
                        // max over n of min(ψ at n, min over n' < n of φ)
                        let mut prefix_min = true;
                        let mut best = false;
                        for &q in &seq {
                            best |= y[q][i] && prefix_min;
                            prefix_min &= x[q][i];
                        }
                        best
                    })
                })
                .collect()
        }
        Formula::Release(a, b) => {
            let (x, y) = (sub(a)?, sub(b)?);
            (0..n)
                .map(|p| {
                    let (seq, tail) = horizon(word, p);
                    std::array::from_fn(|i| {
                        // term(n) = max(ψ at n, max over n' < n of φ)
                        let mut prefix_max = false;
                        let terms: Vec<bool> = seq
                            .iter()
                            .map(|&q| {
                                let t = y[q][i] || prefix_max;
                                prefix_max |= x[q][i];
                                t
                            })
                            .collect();
                        match i {
                            0 => terms.iter().all(|&t| t),
                            1 => terms[tail..].iter().all(|&t| t),
                            2 => terms[tail..].iter().any(|&t| t),
                            _ => terms.iter().any(|&t| t),
                        }
                    })
                })
                .collect()
        }
    })
}
