use std::collections::HashMap;

use super::buchi::{BuchiAutomaton, Edge, Nfa};
use super::generalized::GeneralizedBuchi;
use super::tableau::ltl_to_generalized;
use super::Budget;
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::semantics::{ltl_bit, TruthValue4};
use crate::syntax::Formula;

/// Two-copy product: copy 0 waits for an accepting state of `a`, copy 1 for
/// one of `b`.
pub fn buchi_intersection(a: &BuchiAutomaton, b: &BuchiAutomaton, budget: Budget) -> Result<BuchiAutomaton> {
    assert_eq!(a.alphabet, b.alphabet, "intersection over different alphabets");
    let start = (a.initial, b.initial, 0u8);
    let mut ids = HashMap::from([(start, 0usize)]);
    let mut order = vec![start];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let (p, q, k) = order[i];
        let k2 = match k {
            0 if a.accepting[p] => 1,
            1 if b.accepting[q] => 0,
            _ => k,
        };
        let mut out = Vec::new();
        for ea in &a.edges[p] {
            for eb in &b.edges[q] {
                let Some(guard) = ea.guard.and(eb.guard) else { continue };
                let key = (ea.target, eb.target, k2);
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
                out.push(Edge { guard, target });
            }
        }
        edges.push(out);
        i += 1;
    }
    let accepting = order.iter().map(|&(p, _, k)| k == 0 && a.accepting[p]).collect();
    Ok(BuchiAutomaton {
        alphabet: a.alphabet.clone(),
        initial: 0,
        edges,
        accepting,
    })
}

/// Büchi automaton for the words whose robust valuation of `phi` is exactly
/// `beta`.
pub fn product_language_of_truth_value(
    phi: &Formula,
    beta: TruthValue4,
    alphabet: &Alphabet,
    budget: Budget,
) -> Result<BuchiAutomaton> {
    truth_value_generalized(phi, beta, alphabet, budget)?
        .degeneralize(budget)
        .map_err(|e| tag_truth_value(e, beta))
}

/// Generalized form of [`product_language_of_truth_value`]. Monotonicity of
/// truth values means only the two bits at the boundary between zeros and
/// ones need to be constrained.
pub fn truth_value_generalized(
    phi: &Formula,
    beta: TruthValue4,
    alphabet: &Alphabet,
    budget: Budget,
) -> Result<GeneralizedBuchi> {
    let ones = beta.ones() as usize;
    let tag = |e| tag_truth_value(e, beta);
    let zero = (ones < 4)
        .then(|| ltl_to_generalized(&ltl_bit(4 - ones, phi).not(), alphabet, budget).map_err(tag))
        .transpose()?;
    let one = (ones > 0)
        .then(|| ltl_to_generalized(&ltl_bit(5 - ones, phi), alphabet, budget).map_err(tag))
        .transpose()?;
    match (zero, one) {
        (Some(a), Some(b)) => a.intersection(&b, budget).map_err(tag),
        (Some(a), None) | (None, Some(a)) => Ok(a),
        (None, None) => unreachable!("a truth value has a zero or a one bit"),
    }
}

fn tag_truth_value(e: Error, beta: TruthValue4) -> Error {
    match e {
        Error::BudgetExceeded { stage, cap } => Error::BudgetExceeded {
            stage: format!("{stage} (truth value {beta})"),
            cap,
        },
        e => e,
    }
}

/// Strongly connected components in reverse topological order (Tarjan,
/// iterative).
pub(crate) fn strongly_connected_components(successors: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = successors.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work = vec![(root, 0usize)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut next)) = work.last_mut() {
            if let Some(&w) = successors[v].get(*next) {
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

/// States from which some accepting run exists: those that can reach a
/// nontrivial strongly connected component containing an accepting state.
pub fn live_states(a: &BuchiAutomaton) -> Vec<bool> {
    let successors: Vec<Vec<usize>> = a
        .edges
        .iter()
        .map(|es| es.iter().map(|e| e.target).collect())
        .collect();
    let mut live = vec![false; a.state_count()];
    // reverse topological order: successors' components come first
    for component in strongly_connected_components(&successors) {
        let nontrivial = component.len() > 1 || successors[component[0]].contains(&component[0]);
        let good = nontrivial && component.iter().any(|&q| a.accepting[q]);
        let reaches = component.iter().any(|&q| successors[q].iter().any(|&t| live[t]));
        if good || reaches {
            for q in component {
                live[q] = true;
            }
        }
    }
    live
}

/// The same transition graph read as an NFA accepting at live states: it
/// accepts exactly the finite prefixes of words in `L(a)`.
pub fn prefix_nfa(a: &BuchiAutomaton) -> Nfa {
    Nfa {
        alphabet: a.alphabet.clone(),
        initial: a.initial,
        edges: a.edges.clone(),
        accepting: live_states(a),
    }
}
