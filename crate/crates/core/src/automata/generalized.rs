use std::collections::hash_map::Entry;
use std::collections::HashMap;

use super::buchi::{BuchiAutomaton, Edge, Guard, Nfa};
use super::ops::strongly_connected_components;
use super::Budget;
use crate::alphabet::{Alphabet, LassoWord};
use crate::error::Result;

/// Set of acceptance-set indices carried by a transition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marks(Vec<u64>);

impl Marks {
    pub fn new(sets: usize) -> Self {
        Marks(vec![0; sets.div_ceil(64)])
    }

    pub fn insert(&mut self, k: usize) {
        self.0[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0[k / 64] >> (k % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &Marks) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn is_full(&self, sets: usize) -> bool {
        (0..sets).all(|k| self.contains(k))
    }

    /// Marks over `sets_a + sets_b` sets: `a`'s first, then `b`'s shifted.
    fn concat(a: &Marks, sets_a: usize, b: &Marks, sets_b: usize) -> Marks {
        let mut out = Marks::new(sets_a + sets_b);
        for k in (0..sets_a).filter(|&k| a.contains(k)) {
            out.insert(k);
        }
        for k in (0..sets_b).filter(|&k| b.contains(k)) {
            out.insert(sets_a + k);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralizedEdge {
    pub guard: Guard,
    pub target: usize,
    pub marks: Marks,
}

/// Büchi automaton with transition-based generalized acceptance: a run is
/// accepting when, for every set `k < sets`, it takes infinitely many
/// transitions marked `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedBuchi {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub edges: Vec<Vec<GeneralizedEdge>>,
    pub sets: usize,
}

/// Live flags for a graph whose edges carry marks: a node is live when it
/// reaches a nontrivial component whose internal edges cover every set.
fn live_nodes(edges: &[Vec<(usize, &Marks)>], sets: usize) -> Vec<bool> {
    let successors: Vec<Vec<usize>> = edges.iter().map(|es| es.iter().map(|e| e.0).collect()).collect();
    let mut component_of = vec![0; edges.len()];
    let components = strongly_connected_components(&successors);
    for (c, members) in components.iter().enumerate() {
        for &q in members {
            component_of[q] = c;
        }
    }
    let mut live = vec![false; edges.len()];
    for (c, members) in components.iter().enumerate() {
        let mut seen = Marks::new(sets);
        let mut internal = false;
        for &q in members {
            for (t, marks) in &edges[q] {
                if component_of[*t] == c {
                    internal = true;
                    seen.union_with(marks);
                }
            }
        }
        let good = internal && seen.is_full(sets);
        let reaches = members.iter().any(|&q| successors[q].iter().any(|&t| live[t]));
        if good || reaches {
            for &q in members {
                live[q] = true;
            }
        }
    }
    live
}

impl GeneralizedBuchi {
    pub fn empty(alphabet: &Alphabet) -> Self {
        GeneralizedBuchi {
            alphabet: alphabet.clone(),
            initial: 0,
            edges: vec![vec![]],
            sets: 0,
        }
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn live_states(&self) -> Vec<bool> {
        let edges: Vec<Vec<(usize, &Marks)>> = self
            .edges
            .iter()
            .map(|es| es.iter().map(|e| (e.target, &e.marks)).collect())
            .collect();
        live_nodes(&edges, self.sets)
    }

    pub fn accepts_lasso(&self, word: &LassoWord) -> bool {
        let positions = word.positions();
        let n = self.state_count() * positions;
        let mut edges: Vec<Vec<(usize, &Marks)>> = vec![Vec::new(); n];
        for q in 0..self.state_count() {
            for p in 0..positions {
                let letter = word.letter_at(p);
                let next = word.successor(p);
                edges[q * positions + p] = self.edges[q]
                    .iter()
                    .filter(|e| e.guard.matches(letter))
                    .map(|e| (e.target * positions + next, &e.marks))
                    .collect();
            }
        }
        live_nodes(&edges, self.sets)[self.initial * positions]
    }

    /// Prefix automaton: accepting exactly at live states.
    pub fn prefix_nfa(&self) -> Nfa {
        Nfa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            edges: self
                .edges
                .iter()
                .map(|es| {
                    es.iter()
                        .map(|e| Edge {
                            guard: e.guard,
                            target: e.target,
                        })
                        .collect()
                })
                .collect(),
            accepting: self.live_states(),
        }
    }

    /// Drops transitions into dead states, then merges states with the
    /// same outgoing behaviour; states are renumbered breadth-first.
    pub fn reduce(&self) -> Self {
        let live = self.live_states();
        if !live[self.initial] {
            return GeneralizedBuchi {
                sets: self.sets,
                ..Self::empty(&self.alphabet)
            };
        }
        let edges: Vec<Vec<GeneralizedEdge>> = self
            .edges
            .iter()
            .map(|es| es.iter().filter(|e| live[e.target]).cloned().collect())
            .collect();
        let mut class = vec![0usize; edges.len()];
        let mut count = 1;
        loop {
            let mut ids: HashMap<Vec<(Guard, usize, &Marks)>, usize> = HashMap::new();
            let next: Vec<usize> = edges
                .iter()
                .map(|es| {
                    let mut signature: Vec<(Guard, usize, &Marks)> =
                        es.iter().map(|e| (e.guard, class[e.target], &e.marks)).collect();
                    signature.sort();
                    signature.dedup();
                    let fresh = ids.len();
                    *ids.entry(signature).or_insert(fresh)
                })
                .collect();
            let refined = ids.len();
            class = next;
            if refined == count {
                break;
            }
            count = refined;
        }
        // breadth-first renumbering of the classes reachable from the initial state
        let mut number: HashMap<usize, usize> = HashMap::from([(class[self.initial], 0)]);
        let mut representatives = vec![self.initial];
        let mut i = 0;
        while i < representatives.len() {
            for e in &edges[representatives[i]] {
                if let Entry::Vacant(slot) = number.entry(class[e.target]) {
                    slot.insert(representatives.len());
                    representatives.push(e.target);
                }
            }
            i += 1;
        }
        let new_edges = representatives
            .iter()
            .map(|&q| {
                let mut out: Vec<GeneralizedEdge> = Vec::new();
                for e in &edges[q] {
                    let edge = GeneralizedEdge {
                        guard: e.guard,
                        target: number[&class[e.target]],
                        marks: e.marks.clone(),
                    };
                    if !out.contains(&edge) {
                        out.push(edge);
                    }
                }
                out
            })
            .collect();
        GeneralizedBuchi {
            alphabet: self.alphabet.clone(),
            initial: 0,
            edges: new_edges,
            sets: self.sets,
        }
    }

    /// Synchronous product; acceptance sets of both operands are kept.
    pub fn intersection(&self, other: &Self, budget: Budget) -> Result<Self> {
        assert_eq!(self.alphabet, other.alphabet, "intersection over different alphabets");
        let start = (self.initial, other.initial);
        let mut ids = HashMap::from([(start, 0usize)]);
        let mut order = vec![start];
        let mut edges = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let (p, q) = order[i];
            let mut out = Vec::new();
            for ea in &self.edges[p] {
                for eb in &other.edges[q] {
                    let Some(guard) = ea.guard.and(eb.guard) else { continue };
                    let key = (ea.target, eb.target);
                    let target = match ids.get(&key) {
                        Some(&t) => t,
                        None => {
                            if order.len() >= budget.cap {
                                return Err(budget.exceeded("Büchi intersection"));
                            }
                            ids.insert(key, order.len());
                            order.push(key);
                            order.len() - 1
                        }
                    };
                    out.push(GeneralizedEdge {
                        guard,
                        target,
                        marks: Marks::concat(&ea.marks, self.sets, &eb.marks, other.sets),
                    });
                }
            }
            edges.push(out);
            i += 1;
        }
        Ok(GeneralizedBuchi {
            alphabet: self.alphabet.clone(),
            initial: 0,
            edges,
            sets: self.sets + other.sets,
        }
        .reduce())
    }

    /// State-based Büchi automaton for the same language. A counter tracks
    /// the next acceptance set to see; states whose counter wrapped around
    /// are accepting.
    pub fn degeneralize(&self, budget: Budget) -> Result<BuchiAutomaton> {
        let m = self.sets;
        let mut ids: HashMap<(usize, usize), usize> = HashMap::from([((self.initial, 0), 0)]);
        let mut order = vec![(self.initial, 0usize)];
        let mut edges = Vec::new();
        let mut k = 0;
        while k < order.len() {
            let (q, c) = order[k];
            let start = if c == m { 0 } else { c };
            let mut out = Vec::new();
            for e in &self.edges[q] {
                let mut level = start;
                while level < m && e.marks.contains(level) {
                    level += 1;
                }
                let key = (e.target, level);
                let id = match ids.get(&key) {
                    Some(&id) => id,
                    None => {
                        if order.len() >= budget.cap {
                            return Err(budget.exceeded("Büchi degeneralization"));
                        }
                        ids.insert(key, order.len());
                        order.push(key);
                        order.len() - 1
                    }
                };
                let edge = Edge {
                    guard: e.guard,
                    target: id,
                };
                if !out.contains(&edge) {
                    out.push(edge);
                }
            }
            edges.push(out);
            k += 1;
        }
        Ok(BuchiAutomaton {
            alphabet: self.alphabet.clone(),
            initial: 0,
            edges,
            accepting: order.iter().map(|&(_, c)| c == m).collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Letter;

    const E: Letter = Letter(0);
    const A: Letter = Letter(1);

    /// One state, a self-loop on `a` marked 0 and one on `!a` marked 1.
    fn both_infinitely_often() -> GeneralizedBuchi {
        let mut m0 = Marks::new(2);
        m0.insert(0);
        let mut m1 = Marks::new(2);
        m1.insert(1);
        GeneralizedBuchi {
            alphabet: Alphabet::new(["a"]).unwrap(),
            initial: 0,
            edges: vec![vec![
                GeneralizedEdge { guard: Guard { pos: 1, neg: 0 }, target: 0, marks: m0 },
                GeneralizedEdge { guard: Guard { pos: 0, neg: 1 }, target: 0, marks: m1 },
            ]],
            sets: 2,
        }
    }

    #[test]
    fn generalized_acceptance() {
        let g = both_infinitely_often();
        let alternating = LassoWord::periodic(vec![A, E]).unwrap();
        let settled = LassoWord::new(vec![E], vec![A]).unwrap();
        assert!(g.accepts_lasso(&alternating));
        assert!(!g.accepts_lasso(&settled));
        let b = g.degeneralize(Budget::default()).unwrap();
        assert!(b.accepts_lasso(&alternating));
        assert!(!b.accepts_lasso(&settled));
        assert_eq!(g.live_states(), vec![true]);
    }

    #[test]
    fn marks() {
        let mut m = Marks::new(70);
        m.insert(65);
        assert!(m.contains(65) && !m.contains(1));
        let c = Marks::concat(&m, 70, &m, 70);
        assert!(c.contains(65) && c.contains(135));
    }
}
