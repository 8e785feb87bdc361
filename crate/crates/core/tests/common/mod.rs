//! Shared generators and fixtures for the integration tests.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rltl_core::{parse, Alphabet, BuildOptions, Flavor, Formula, LassoWord, Letter, MooreMonitor};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct FormulaShape {
    pub depth: usize,
    pub props: usize,
    pub release: bool,
    pub implication: bool,
}

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// Random formula of depth at most `shape.depth` over the first
/// `shape.props` propositions.
pub fn random_formula(rng: &mut StdRng, shape: FormulaShape) -> Formula {
    if shape.depth == 0 || rng.gen_bool(0.15) {
        return match rng.gen_range(0..20) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::atom(NAMES[rng.gen_range(0..shape.props)]),
        };
    }
    let sub = FormulaShape {
        depth: shape.depth - 1,
        ..shape
    };
    let mut ops = vec!["!", "&", "|", "X", "F", "G", "U"];
    if shape.release {
        ops.push("R");
    }
    if shape.implication {
        ops.push("->");
    }
    match *ops.choose(rng).unwrap() {
        "!" => random_formula(rng, sub).not(),
        "X" => random_formula(rng, sub).next(),
        "F" => random_formula(rng, sub).eventually(),
        "G" => random_formula(rng, sub).always(),
        op => {
            let (l, r) = (random_formula(rng, sub), random_formula(rng, sub));
            match op {
                "&" => l.and(r),
                "|" => l.or(r),
                "U" => l.until(r),
                "R" => l.release(r),
                _ => l.implies(r),
            }
        }
    }
}

pub fn random_word(rng: &mut StdRng, alphabet: &Alphabet, max_stem: usize, max_cycle: usize) -> LassoWord {
    let n = alphabet.letter_count() as u32;
    let stem = (0..rng.gen_range(0..=max_stem)).map(|_| Letter(rng.gen_range(0..n))).collect();
    let cycle = (0..rng.gen_range(1..=max_cycle)).map(|_| Letter(rng.gen_range(0..n))).collect();
    LassoWord::new(stem, cycle).unwrap()
}

pub fn alphabet(props: usize) -> Alphabet {
    Alphabet::new(NAMES[..props].iter().copied()).unwrap()
}

pub fn robust(text: &str) -> Formula {
    parse(text, None, Flavor::Robust).unwrap().formula
}

pub fn classical(text: &str) -> Formula {
    parse(text, None, Flavor::Classical).unwrap().formula
}

pub fn rltl_monitor(text: &str) -> (MooreMonitor, Alphabet) {
    let phi = robust(text);
    let ab = Alphabet::from_formula(&phi).unwrap();
    (rltl_core::build_rltl_monitor(&phi, &ab, &BuildOptions::default()).unwrap(), ab)
}

/// Parses a word written as letters separated by spaces, each letter a
/// string of proposition names (`-` for the empty letter).
pub fn letters(alphabet: &Alphabet, text: &str) -> Vec<Letter> {
    text.split_whitespace()
        .map(|l| {
            if l == "-" {
                alphabet.empty_letter()
            } else {
                alphabet.letter(l.chars().map(|c| c.to_string())).unwrap()
            }
        })
        .collect()
}

/// Lasso `stem · cycle^ω` in the notation of [`letters`].
pub fn lasso(alphabet: &Alphabet, stem: &str, cycle: &str) -> LassoWord {
    LassoWord::new(letters(alphabet, stem), letters(alphabet, cycle)).unwrap()
}

/// Every word over `alphabet` of length at most `max_len`.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Vec<Letter>> {
    let mut all = vec![vec![]];
    let mut frontier: Vec<Vec<Letter>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for l in alphabet.letters() {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// (verdict, prefix, formula) rows of realizable robust verdicts.
pub const REALIZABLE: [(&str, &str, &str); 13] = [
    ("0000", "", "a & !a"),
    ("000?", "", "F G a & F !F a"),
    ("00??", "", "G a & G !a"),
    ("00?1", "- a", "G a & G !a"),
    ("0???", "-", "G a"),
    ("0??1", "- a", "G a"),
    ("0?11", "- a", "G a | G !a"),
    ("0111", "- a", "a R a"),
    ("????", "", "G a"),
    ("???1", "a", "G a"),
    ("??11", "", "G a | F !F a"),
    ("?111", "", "G a | !F !F !a"),
    ("1111", "", "a | !a"),
];

/// `(stem, cycle)` in the notation of [`letters`].
pub type Lasso = (&'static str, &'static str);

/// Formulas whose monitor emits one fixed verdict forever, with lassos
/// `(stem, cycle)` that settle every `?` cell to 0 and to 1 respectively.
pub const CONSTANT_UNMONITORABLE: [(&str, &str, Lasso, Lasso); 7] = [
    ("????", "F !F a", ("", "a"), ("", "-")),
    ("0???", "F (a & G !F a)", ("", "a"), ("a", "-")),
    ("00??", "G (a & X !a) & !F !F a", ("", "-"), ("", "a -")),
    ("000?", "F G a & F !F a", ("", "a"), ("a", "-")),
    ("???1", "!F !a | !F a | F G ((!a & X a) | (a & X !a))", ("-", "a"), ("", "a -")),
    ("??11", "F (!F a | G a)", ("", "a -"), ("", "a")),
    ("?111", "G a | G !a | (G F a & G F !a)", ("-", "a"), ("", "a -")),
];

pub const TEN_VERDICTS: &str =
    "(((a & d) | (!a & !d)) & G (!b | (!a & d))) | (((!a & d) | (a & !d)) & F (b & (a | !d))) | (a & G b)";

/// `a ∨ ⋁_{j=1..3} (ψ_{β_j} ∧ ψ_j)` where `ψ_j` asks for `j` empty letters
/// followed by `a`.
pub fn chain_formula() -> Formula {
    let betas = [
        "F (a & G !F a)",
        "G (a & X !a) & !F !F a",
        "F G a & F !F a",
    ];
    let mut phi = Formula::atom("a");
    for (j, beta) in (1..=3).zip(betas) {
        let mut psi = nexts(Formula::atom("a"), j);
        for k in (0..j).rev() {
            psi = nexts(Formula::atom("a").not(), k).and(psi);
        }
        phi = phi.or(robust(beta).and(psi));
    }
    phi
}

fn nexts(phi: Formula, n: usize) -> Formula {
    (0..n).fold(phi, |f, _| f.next())
}
