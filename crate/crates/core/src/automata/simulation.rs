use super::buchi::{Edge, Nfa};

/// Dense relation over NFA states; `row(q)` is a bitset over states.
#[derive(Clone, Debug)]
pub(crate) struct Relation {
    words: usize,
    bits: Vec<u64>,
}

impl Relation {
    fn full(n: usize) -> Self {
        let words = n.div_ceil(64);
        Relation {
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn contains(&self, q: usize, p: usize) -> bool {
        self.bits[q * self.words + p / 64] >> (p % 64) & 1 == 1
    }

    fn set(&mut self, q: usize, p: usize, on: bool) {
        let w = &mut self.bits[q * self.words + p / 64];
        if on {
            *w |= 1 << (p % 64);
        } else {
            *w &= !(1 << (p % 64));
        }
    }
}

/// Per-state, per-letter successor lists.
pub(crate) fn successors_by_letter(nfa: &Nfa) -> Vec<Vec<Vec<usize>>> {
    nfa.edges
        .iter()
        .map(|es| {
            nfa.alphabet
                .letters()
                .map(|l| {
                    let mut ts: Vec<usize> = es.iter().filter(|e| e.guard.matches(l)).map(|e| e.target).collect();
                    ts.sort_unstable();
                    ts.dedup();
                    ts
                })
                .collect()
        })
        .collect()
}

/// Greatest direct simulation: `contains(q, p)` when `p` can match every
/// move of `q` letter by letter, staying accepting whenever `q` is.
/// Then every word accepted from `q` is accepted from `p`.
pub(crate) fn direct_simulation(nfa: &Nfa, succ: &[Vec<Vec<usize>>]) -> Relation {
    let n = nfa.state_count();
    let mut sim = Relation::full(n);
    for q in 0..n {
        for p in 0..n {
            let ok = (nfa.accepting[p] || !nfa.accepting[q])
                && succ[q].iter().zip(&succ[p]).all(|(a, b)| a.is_empty() || !b.is_empty());
            sim.set(q, p, ok);
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for q in 0..n {
            for p in 0..n {
                if p == q || !sim.contains(q, p) {
                    continue;
                }
                let matched = succ[q].iter().zip(&succ[p]).all(|(qs, ps)| {
                    qs.iter().all(|&q2| ps.iter().any(|&p2| sim.contains(q2, p2)))
                });
                if !matched {
                    sim.set(q, p, false);
                    changed = true;
                }
            }
        }
    }
    sim
}

/// Quotient of `nfa` by simulation equivalence, together with the
/// simulation order between the merged states (a partial order).
pub(crate) fn simulation_quotient(nfa: &Nfa) -> (Nfa, Relation) {
    let succ = successors_by_letter(nfa);
    let sim = direct_simulation(nfa, &succ);
    let n = nfa.state_count();
    let mut class = vec![usize::MAX; n];
    let mut members = Vec::new();
    for q in 0..n {
        if class[q] != usize::MAX {
            continue;
        }
        class[q] = members.len();
        let id = members.len();
        for (p, c) in class.iter_mut().enumerate().skip(q + 1) {
            if *c == usize::MAX && sim.contains(q, p) && sim.contains(p, q) {
                *c = id;
            }
        }
        members.push(q);
    }
    let edges = members
        .iter()
        .map(|&q| {
            let mut out: Vec<Edge> = nfa.edges[q]
                .iter()
                .map(|e| Edge {
                    guard: e.guard,
                    target: class[e.target],
                })
                .collect();
            out.sort();
            out.dedup();
            out
        })
        .collect();
    let k = members.len();
    let mut order = Relation::full(k);
    for (a, &q) in members.iter().enumerate() {
        for (b, &p) in members.iter().enumerate() {
            order.set(a, b, sim.contains(q, p));
        }
    }
    let quotient = Nfa {
        alphabet: nfa.alphabet.clone(),
        initial: class[nfa.initial],
        edges,
        accepting: members.iter().map(|&q| nfa.accepting[q]).collect(),
    };
    (quotient, order)
}

/// Keeps the maximal elements of a sorted set under a partial order.
pub(crate) fn maximal(set: &mut Vec<usize>, order: &Relation) {
    let all = set.clone();
    set.retain(|&q| !all.iter().any(|&p| p != q && order.contains(q, p)));
}
