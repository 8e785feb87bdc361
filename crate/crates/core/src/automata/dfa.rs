use std::collections::HashMap;

use super::buchi::Nfa;
use super::simulation::{maximal, simulation_quotient, successors_by_letter};
use super::Budget;
use crate::alphabet::{Alphabet, Letter};
use crate::error::Result;

/// Complete deterministic automaton with a dense transition table indexed by
/// letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub initial: usize,
    pub delta: Vec<Vec<usize>>,
    pub accepting: Vec<bool>,
}

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn run(&self, word: &[Letter]) -> usize {
        word.iter().fold(self.initial, |q, l| self.delta[q][l.index()])
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.accepting[self.run(word)]
    }
}

/// Subset construction. The empty subset is kept as an explicit sink so the
/// result is complete.
pub fn determinize(nfa: &Nfa, budget: Budget) -> Result<Dfa> {
    subsets(nfa, budget, |_| {})
}

/// Subset construction over the simulation quotient of `nfa`, keeping only
/// the maximal states of each subset. Accepts the same language as
/// [`determinize`] with usually far fewer states.
pub fn determinize_pruned(nfa: &Nfa, budget: Budget) -> Result<Dfa> {
    let (quotient, order) = simulation_quotient(nfa);
    subsets(&quotient, budget, |set| maximal(set, &order))
}

fn subsets(nfa: &Nfa, budget: Budget, prune: impl Fn(&mut Vec<usize>)) -> Result<Dfa> {
    let letters = nfa.alphabet.letter_count();
    let successors = successors_by_letter(nfa);
    let start = vec![nfa.initial];
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut delta = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(letters);
        let moves: Vec<&[Vec<usize>]> = subsets[i].iter().map(|&q| successors[q].as_slice()).collect();
        for l in 0..letters {
            let mut target: Vec<usize> = moves.iter().flat_map(|m| m[l].iter().copied()).collect();
            target.sort_unstable();
            target.dedup();
            prune(&mut target);
            let id = match ids.get(&target) {
                Some(&id) => id,
                None => {
                    if subsets.len() >= budget.cap {
                        return Err(budget.exceeded("subset construction"));
                    }
                    ids.insert(target.clone(), subsets.len());
                    subsets.push(target);
                    subsets.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepting = subsets
        .iter()
        .map(|s| s.iter().any(|&q| nfa.accepting[q]))
        .collect();
    Ok(Dfa {
        alphabet: nfa.alphabet.clone(),
        initial: 0,
        delta,
        accepting,
    })
}

/// Minimal complete DFA for the same language, states numbered canonically.
pub fn dfa_minimize(d: &Dfa) -> Dfa {
    let classes: Vec<usize> = d.accepting.iter().map(|&a| a as usize).collect();
    let q = quotient(d.initial, &d.delta, &classes);
    let mut accepting = vec![false; q.delta.len()];
    for (old, &new) in q.map.iter().enumerate() {
        if let Some(new) = new {
            accepting[new] = d.accepting[old];
        }
    }
    Dfa {
        alphabet: d.alphabet.clone(),
        initial: 0,
        delta: q.delta,
        accepting,
    }
}

/// Coarsest partition refining `classes` that is stable under `delta`.
pub(crate) fn refine(delta: &[Vec<usize>], classes: &[usize]) -> Vec<usize> {
    let mut current = classes.to_vec();
    let mut count = distinct(&current);
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let next: Vec<usize> = (0..delta.len())
            .map(|q| {
                let signature = (current[q], delta[q].iter().map(|&t| current[t]).collect());
                let fresh = ids.len();
                *ids.entry(signature).or_insert(fresh)
            })
            .collect();
        let next_count = ids.len();
        current = next;
        if next_count == count {
            return current;
        }
        count = next_count;
    }
}

fn distinct(classes: &[usize]) -> usize {
    let mut seen: Vec<usize> = classes.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

pub(crate) struct Quotient {
    pub delta: Vec<Vec<usize>>,
    /// New state of each old state, `None` when unreachable.
    pub map: Vec<Option<usize>>,
}

/// Merges equivalent reachable states and renumbers them in breadth-first
/// order from the initial state, scanning letters in increasing order. Two
/// machines with the same behaviour therefore come out identical.
pub(crate) fn quotient(initial: usize, delta: &[Vec<usize>], classes: &[usize]) -> Quotient {
    let blocks = refine(delta, classes);
    let mut block_id: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut queue = vec![initial];
    block_id.insert(blocks[initial], 0);
    representatives.push(initial);
    let mut i = 0;
    while i < queue.len() {
        let q = queue[i];
        for &t in &delta[q] {
            if let std::collections::hash_map::Entry::Vacant(slot) = block_id.entry(blocks[t]) {
                slot.insert(representatives.len());
                representatives.push(t);
                queue.push(t);
            }
        }
        i += 1;
    }
    let new_delta = representatives
        .iter()
        .map(|&q| delta[q].iter().map(|&t| block_id[&blocks[t]]).collect())
        .collect();
    let map = blocks.iter().map(|b| block_id.get(b).copied()).collect();
    Quotient { delta: new_delta, map }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::buchi::{Edge, Guard};

    fn ab2() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// NFA for words whose last letter contains `b`.
    fn ends_with_b() -> Nfa {
        let b = Guard { pos: 2, neg: 0 };
        Nfa {
            alphabet: ab2(),
            initial: 0,
            edges: vec![
                vec![Edge { guard: Guard::TRUE, target: 0 }, Edge { guard: b, target: 1 }],
                vec![],
            ],
            accepting: vec![false, true],
        }
    }

    fn words(alphabet: &Alphabet, max_len: usize) -> Vec<Vec<Letter>> {
        let mut all = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for l in alphabet.letters() {
                    let mut v: Vec<Letter> = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }

    #[test]
    fn subset_construction_textbook() {
        let nfa = ends_with_b();
        let dfa = determinize(&nfa, Budget::default()).unwrap();
        let min = dfa_minimize(&dfa);
        assert_eq!(min.state_count(), 2);
        let pruned = determinize_pruned(&nfa, Budget::default()).unwrap();
        assert_eq!(dfa_minimize(&pruned), min);
        for w in words(&ab2(), 6) {
            assert_eq!(nfa.accepts(&w), dfa.accepts(&w));
            assert_eq!(nfa.accepts(&w), min.accepts(&w));
        }
    }

    #[test]
    fn empty_language() {
        let nfa = Nfa {
            alphabet: ab2(),
            initial: 0,
            edges: vec![vec![]],
            accepting: vec![false],
        };
        let min = dfa_minimize(&determinize(&nfa, Budget::default()).unwrap());
        assert_eq!(min.state_count(), 1);
        assert!(!min.accepting[0]);
    }

    #[test]
    fn minimization_is_idempotent() {
        let min = dfa_minimize(&determinize(&ends_with_b(), Budget::default()).unwrap());
        assert_eq!(dfa_minimize(&min), min);
    }

    #[test]
    fn budget() {
        assert!(determinize(&ends_with_b(), Budget { cap: 1 }).is_err());
    }
}
