use std::fmt::Write;

use super::buchi::{BuchiAutomaton, Edge, Nfa};
use super::dfa::Dfa;
use crate::alphabet::{Alphabet, Letter};

fn label(alphabet: &Alphabet, letters: impl Iterator<Item = Letter>) -> String {
    letters
        .map(|l| alphabet.format_letter(l))
        .collect::<Vec<_>>()
        .join(", ")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn graph(alphabet: &Alphabet, initial: usize, accepting: &[bool], edges: &[Vec<(usize, Vec<Letter>)>]) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  init [shape=point];\n");
    for (q, acc) in accepting.iter().enumerate() {
        let shape = if *acc { "doublecircle" } else { "circle" };
        writeln!(out, "  q{q} [label=\"{q}\", shape={shape}];").unwrap();
    }
    writeln!(out, "  init -> q{initial};").unwrap();
    for (q, row) in edges.iter().enumerate() {
        for (target, letters) in row {
            let text = escape(&label(alphabet, letters.iter().copied()));
            writeln!(out, "  q{q} -> q{target} [label=\"{text}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Groups the letters matched by guarded edges per target state.
fn expand(alphabet: &Alphabet, edges: &[Vec<Edge>]) -> Vec<Vec<(usize, Vec<Letter>)>> {
    edges
        .iter()
        .map(|row| {
            let mut grouped: Vec<(usize, Vec<Letter>)> = Vec::new();
            for letter in alphabet.letters() {
                let mut targets: Vec<usize> = row
                    .iter()
                    .filter(|e| e.guard.matches(letter))
                    .map(|e| e.target)
                    .collect();
                targets.sort_unstable();
                targets.dedup();
                for t in targets {
                    match grouped.iter_mut().find(|(g, _)| *g == t) {
                        Some((_, ls)) => ls.push(letter),
                        None => grouped.push((t, vec![letter])),
                    }
                }
            }
            grouped.sort_by_key(|(t, _)| *t);
            grouped
        })
        .collect()
}

pub fn buchi_to_dot(a: &BuchiAutomaton) -> String {
    graph(&a.alphabet, a.initial, &a.accepting, &expand(&a.alphabet, &a.edges))
}

pub fn nfa_to_dot(a: &Nfa) -> String {
    graph(&a.alphabet, a.initial, &a.accepting, &expand(&a.alphabet, &a.edges))
}

pub fn dfa_to_dot(d: &Dfa) -> String {
    let edges: Vec<Vec<(usize, Vec<Letter>)>> = d
        .delta
        .iter()
        .map(|row| {
            let mut grouped: Vec<(usize, Vec<Letter>)> = Vec::new();
            for (l, &t) in row.iter().enumerate() {
                match grouped.iter_mut().find(|(g, _)| *g == t) {
                    Some((_, ls)) => ls.push(Letter(l as u32)),
                    None => grouped.push((t, vec![Letter(l as u32)])),
                }
            }
            grouped.sort_by_key(|(t, _)| *t);
            grouped
        })
        .collect();
    graph(&d.alphabet, d.initial, &d.accepting, &edges)
}
