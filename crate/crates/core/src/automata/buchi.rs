use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::alphabet::{Alphabet, LassoWord, Letter};

/// Conjunction of literals labelling a transition: the letter must contain
/// every proposition in `pos` and none in `neg`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Guard {
    pub pos: u32,
    pub neg: u32,
}

impl Guard {
    pub const TRUE: Guard = Guard { pos: 0, neg: 0 };

    pub fn letter(letter: Letter, alphabet: &Alphabet) -> Guard {
        let all = alphabet.letter_count() as u32 - 1;
        Guard {
            pos: letter.0,
            neg: all & !letter.0,
        }
    }

    pub fn matches(self, letter: Letter) -> bool {
        letter.0 & self.pos == self.pos && letter.0 & self.neg == 0
    }

    pub fn and(self, other: Guard) -> Option<Guard> {
        let g = Guard {
            pos: self.pos | other.pos,
            neg: self.neg | other.neg,
        };
        (g.pos & g.neg == 0).then_some(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub guard: Guard,
    pub target: usize,
}

/// Nondeterministic automaton over guarded transitions. Read as a Büchi
/// automaton on infinite words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuchiAutomaton {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub edges: Vec<Vec<Edge>>,
    pub accepting: Vec<bool>,
}

/// Same shape as [`BuchiAutomaton`], read with finite-word acceptance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub edges: Vec<Vec<Edge>>,
    pub accepting: Vec<bool>,
}

impl BuchiAutomaton {
    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn transition_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// One accepting state with a universal self-loop.
    pub fn universal(alphabet: &Alphabet) -> Self {
        Self {
            alphabet: alphabet.clone(),
            initial: 0,
            edges: vec![vec![Edge { guard: Guard::TRUE, target: 0 }]],
            accepting: vec![true],
        }
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Self {
            alphabet: alphabet.clone(),
            initial: 0,
            edges: vec![vec![]],
            accepting: vec![false],
        }
    }

    /// Decides `word ∈ L(self)` by searching the product with the word's own
    /// lasso structure for a reachable cycle through an accepting state.
    pub fn accepts_lasso(&self, word: &LassoWord) -> bool {
        let positions = word.positions();
        let node = |q: usize, p: usize| q * positions + p;
        let succ = |q: usize, p: usize| {
            let letter = word.letter_at(p);
            let next = word.successor(p);
            self.edges[q]
                .iter()
                .filter(move |e| e.guard.matches(letter))
                .map(move |e| (e.target, next))
        };
        // reachable product nodes
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([(self.initial, 0)]);
        seen.insert(node(self.initial, 0));
        let mut reachable = Vec::new();
        while let Some((q, p)) = queue.pop_front() {
            reachable.push((q, p));
            for (q2, p2) in succ(q, p) {
                if seen.insert(node(q2, p2)) {
                    queue.push_back((q2, p2));
                }
            }
        }
        // an accepting product node that lies on a cycle
        reachable.iter().any(|&(q, p)| {
            if !self.accepting[q] {
                return false;
            }
            let start = node(q, p);
            let mut seen = HashSet::new();
            let mut stack: Vec<(usize, usize)> = succ(q, p).collect();
            while let Some((q2, p2)) = stack.pop() {
                let id = node(q2, p2);
                if id == start {
                    return true;
                }
                if seen.insert(id) {
                    stack.extend(succ(q2, p2));
                }
            }
            false
        })
    }

    /// Renumbers states by breadth-first discovery and drops unreachable ones.
    pub fn reachable_part(&self) -> Self {
        let mut index = HashMap::new();
        let mut order = vec![self.initial];
        index.insert(self.initial, 0);
        let mut i = 0;
        while i < order.len() {
            for e in &self.edges[order[i]] {
                if let Entry::Vacant(slot) = index.entry(e.target) {
                    slot.insert(order.len());
                    order.push(e.target);
                }
            }
            i += 1;
        }
        Self {
            alphabet: self.alphabet.clone(),
            initial: 0,
            edges: order
                .iter()
                .map(|&q| {
                    self.edges[q]
                        .iter()
                        .map(|e| Edge {
                            guard: e.guard,
                            target: index[&e.target],
                        })
                        .collect()
                })
                .collect(),
            accepting: order.iter().map(|&q| self.accepting[q]).collect(),
        }
    }
}

impl Nfa {
    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut current = vec![false; self.state_count()];
        current[self.initial] = true;
        for &letter in word {
            let mut next = vec![false; self.state_count()];
            for (q, on) in current.iter().enumerate() {
                if *on {
                    for e in &self.edges[q] {
                        if e.guard.matches(letter) {
                            next[e.target] = true;
                        }
                    }
                }
            }
            current = next;
        }
        current.iter().zip(&self.accepting).any(|(on, acc)| *on && *acc)
    }

    /// Merges states that are bisimilar as finite-word automata (same
    /// acceptance, same guarded moves into the same classes).
    pub fn reduce(&self) -> Nfa {
        let mut class: Vec<usize> = self.accepting.iter().map(|&a| a as usize).collect();
        let mut count = class.iter().collect::<HashSet<_>>().len();
        loop {
            let mut ids: HashMap<(usize, Vec<(Guard, usize)>), usize> = HashMap::new();
            let next: Vec<usize> = self
                .edges
                .iter()
                .enumerate()
                .map(|(q, es)| {
                    let mut moves: Vec<(Guard, usize)> = es.iter().map(|e| (e.guard, class[e.target])).collect();
                    moves.sort();
                    moves.dedup();
                    let fresh = ids.len();
                    *ids.entry((class[q], moves)).or_insert(fresh)
                })
                .collect();
            let refined = ids.len();
            class = next;
            if refined == count {
                break;
            }
            count = refined;
        }
        let mut number: HashMap<usize, usize> = HashMap::from([(class[self.initial], 0)]);
        let mut representatives = vec![self.initial];
        let mut i = 0;
        while i < representatives.len() {
            for e in &self.edges[representatives[i]] {
                if let Entry::Vacant(slot) = number.entry(class[e.target]) {
                    slot.insert(representatives.len());
                    representatives.push(e.target);
                }
            }
            i += 1;
        }
        Nfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            edges: representatives
                .iter()
                .map(|&q| {
                    let mut out: Vec<Edge> = self.edges[q]
                        .iter()
                        .map(|e| Edge {
                            guard: e.guard,
                            target: number[&class[e.target]],
                        })
                        .collect();
                    out.sort();
                    out.dedup();
                    out
                })
                .collect(),
            accepting: representatives.iter().map(|&q| self.accepting[q]).collect(),
        }
    }

    /// Removes states from which no accepting state is reachable. The
    /// initial state is always kept, so the result is never stateless.
    pub fn trim(&self) -> Nfa {
        let n = self.state_count();
        let mut reverse = vec![Vec::new(); n];
        for (q, edges) in self.edges.iter().enumerate() {
            for e in edges {
                reverse[e.target].push(q);
            }
        }
        let mut useful = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| useful[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if !useful[p] {
                    useful[p] = true;
                    stack.push(p);
                }
            }
        }
        useful[self.initial] = true;
        let mut index = vec![usize::MAX; n];
        let kept: Vec<usize> = (0..n).filter(|&q| useful[q]).collect();
        for (i, &q) in kept.iter().enumerate() {
            index[q] = i;
        }
        Nfa {
            alphabet: self.alphabet.clone(),
            initial: index[self.initial],
            edges: kept
                .iter()
                .map(|&q| {
                    self.edges[q]
                        .iter()
                        .filter(|e| useful[e.target])
                        .map(|e| Edge {
                            guard: e.guard,
                            target: index[e.target],
                        })
                        .collect()
                })
                .collect(),
            accepting: kept.iter().map(|&q| self.accepting[q]).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guards() {
        let ab = Alphabet::new(["a", "b"]).unwrap();
        let g = Guard { pos: 1, neg: 2 };
        assert!(g.matches(Letter(1)));
        assert!(!g.matches(Letter(3)));
        assert!(!g.matches(Letter(0)));
        assert_eq!(g.and(Guard { pos: 2, neg: 0 }), None);
        assert_eq!(Guard::letter(Letter(2), &ab), Guard { pos: 2, neg: 1 });
    }

    #[test]
    fn reduction_merges_bisimilar_states() {
        let ab = Alphabet::new(["a"]).unwrap();
        let loop_to = |t| vec![Edge { guard: Guard::TRUE, target: t }];
        let nfa = Nfa {
            alphabet: ab,
            initial: 0,
            edges: vec![
                vec![Edge { guard: Guard::TRUE, target: 1 }, Edge { guard: Guard::TRUE, target: 2 }],
                loop_to(2),
                loop_to(1),
            ],
            accepting: vec![true, true, true],
        };
        let reduced = nfa.reduce();
        assert_eq!(reduced.state_count(), 1);
        assert!(reduced.accepts(&[Letter(0), Letter(1)]));
    }

    #[test]
    fn universal_and_empty() {
        let ab = Alphabet::new(["a"]).unwrap();
        let w = LassoWord::new(vec![Letter(1)], vec![Letter(0)]).unwrap();
        assert!(BuchiAutomaton::universal(&ab).accepts_lasso(&w));
        assert!(!BuchiAutomaton::empty(&ab).accepts_lasso(&w));
    }
}
