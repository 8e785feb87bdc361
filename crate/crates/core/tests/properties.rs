mod common;

use std::collections::HashSet;

use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;
use rltl_core::automata::{
    determinize, determinize_pruned, dfa_minimize, live_states, ltl_to_buchi, ltl_to_generalized,
    product_language_of_truth_value, BuchiAutomaton, Budget, Dfa, Edge, Guard, Nfa,
};
use rltl_core::{
    build_rltl_monitor, desugar, eval_ltl_lasso, eval_rltl_lasso, parse, rewrite_implications, specificity_leq,
    Alphabet, BuildOptions, Flavor, Formula, Letter, TruthValue4,
};

fn shape(depth: usize, props: usize) -> FormulaShape {
    FormulaShape {
        depth,
        props,
        release: true,
        implication: true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printing_then_parsing_is_identity(seed in any::<u64>()) {
        let phi = random_formula(&mut rng(seed), shape(5, 4));
        let text = phi.to_string();
        let back = parse(&text, None, Flavor::Robust).unwrap().formula;
        prop_assert_eq!(back, phi, "{}", text);
    }

    #[test]
    fn rewrites_preserve_classical_meaning(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ab = alphabet(3);
        let phi = random_formula(&mut r, shape(4, 3));
        for _ in 0..10 {
            let w = random_word(&mut r, &ab, 4, 4);
            let v = eval_ltl_lasso(&w, &phi, &ab).unwrap();
            prop_assert_eq!(eval_ltl_lasso(&w, &rewrite_implications(&phi), &ab).unwrap(), v);
            prop_assert_eq!(eval_ltl_lasso(&w, &desugar(&phi), &ab).unwrap(), v);
        }
    }

    #[test]
    fn desugaring_preserves_robust_meaning(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ab = alphabet(3);
        let phi = random_formula(&mut r, shape(4, 3));
        for _ in 0..10 {
            let w = random_word(&mut r, &ab, 4, 4);
            prop_assert_eq!(eval_rltl_lasso(&w, &desugar(&phi), &ab).unwrap(), eval_rltl_lasso(&w, &phi, &ab).unwrap());
        }
    }

    #[test]
    fn first_bit_is_classical_meaning_without_implications(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ab = alphabet(3);
        let phi = rewrite_implications(&random_formula(&mut r, shape(5, 3)));
        for _ in 0..10 {
            let w = random_word(&mut r, &ab, 4, 4);
            let robust = eval_rltl_lasso(&w, &phi, &ab).unwrap();
            prop_assert_eq!(robust.bit(1), eval_ltl_lasso(&w, &phi, &ab).unwrap());
        }
    }
}

#[test]
fn raw_implication_breaks_first_bit_correspondence() {
    // known discrepancy: robust implication is not ¬φ ∨ ψ
    let ab = Alphabet::new(["a"]).unwrap();
    let phi = robust("G !a -> G a");
    let w = lasso(&ab, "a", "-");
    let robust_bit = eval_rltl_lasso(&w, &phi, &ab).unwrap().bit(1);
    let classical = eval_ltl_lasso(&w, &phi, &ab).unwrap();
    assert_ne!(robust_bit, classical);
    let rewritten = rewrite_implications(&phi);
    assert_eq!(eval_rltl_lasso(&w, &rewritten, &ab).unwrap().bit(1), classical);
}

#[test]
fn tableau_accepts_exactly_the_models() {
    let mut r = rng(11);
    let ab = alphabet(2);
    for _ in 0..300 {
        let phi = random_formula(&mut r, shape(4, 2));
        let buchi = ltl_to_buchi(&phi, &ab, Budget::default()).unwrap();
        let generalized = ltl_to_generalized(&phi, &ab, Budget::default()).unwrap();
        for _ in 0..20 {
            let w = random_word(&mut r, &ab, 3, 3);
            let expected = eval_ltl_lasso(&w, &phi, &ab).unwrap();
            assert_eq!(buchi.accepts_lasso(&w), expected, "{phi} on {}", w.display(&ab));
            assert_eq!(generalized.accepts_lasso(&w), expected, "{phi} on {}", w.display(&ab));
        }
    }
}

#[test]
fn truth_value_languages_partition_all_words() {
    let mut r = rng(12);
    let ab = alphabet(2);
    for _ in 0..60 {
        let phi = random_formula(&mut r, shape(3, 2));
        let languages: Vec<BuchiAutomaton> = TruthValue4::ALL
            .iter()
            .map(|&beta| product_language_of_truth_value(&phi, beta, &ab, Budget::default()).unwrap())
            .collect();
        for _ in 0..15 {
            let w = random_word(&mut r, &ab, 3, 3);
            let owners: Vec<TruthValue4> = TruthValue4::ALL
                .iter()
                .zip(&languages)
                .filter(|(_, l)| l.accepts_lasso(&w))
                .map(|(&beta, _)| beta)
                .collect();
            assert_eq!(owners, vec![eval_rltl_lasso(&w, &phi, &ab).unwrap()], "{phi} on {}", w.display(&ab));
        }
    }
}

fn random_guard(r: &mut StdRng, props: u32) -> Guard {
    let mut g = Guard::TRUE;
    for p in 0..props {
        match r.gen_range(0..3) {
            0 => g.pos |= 1 << p,
            1 => g.neg |= 1 << p,
            _ => {}
        }
    }
    g
}

fn random_edges(r: &mut StdRng, states: usize, props: u32) -> Vec<Vec<Edge>> {
    (0..states)
        .map(|_| {
            (0..r.gen_range(0..4))
                .map(|_| Edge {
                    guard: random_guard(r, props),
                    target: r.gen_range(0..states),
                })
                .collect()
        })
        .collect()
}

fn random_nfa(r: &mut StdRng, ab: &Alphabet) -> Nfa {
    let states = r.gen_range(1..8);
    Nfa {
        alphabet: ab.clone(),
        initial: 0,
        edges: random_edges(r, states, ab.len() as u32),
        accepting: (0..states).map(|_| r.gen_bool(0.4)).collect(),
    }
}

/// Size of the minimal DFA by table filling: pairs of reachable states are
/// marked distinguishable until nothing changes.
fn table_filling_size(d: &Dfa) -> usize {
    let n = d.state_count();
    let mut reachable = vec![false; n];
    let mut stack = vec![d.initial];
    reachable[d.initial] = true;
    while let Some(q) = stack.pop() {
        for &t in &d.delta[q] {
            if !reachable[t] {
                reachable[t] = true;
                stack.push(t);
            }
        }
    }
    let states: Vec<usize> = (0..n).filter(|&q| reachable[q]).collect();
    let mut apart = vec![vec![false; n]; n];
    for &p in &states {
        for &q in &states {
            apart[p][q] = d.accepting[p] != d.accepting[q];
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &p in &states {
            for &q in &states {
                if !apart[p][q] && (0..d.delta[p].len()).any(|l| apart[d.delta[p][l]][d.delta[q][l]]) {
                    apart[p][q] = true;
                    changed = true;
                }
            }
        }
    }
    let mut representatives: Vec<usize> = Vec::new();
    for &q in &states {
        if representatives.iter().all(|&p| apart[p][q]) {
            representatives.push(q);
        }
    }
    representatives.len()
}

#[test]
fn determinization_and_minimization_preserve_language() {
    let mut r = rng(13);
    for props in [1, 2] {
        let ab = alphabet(props);
        let words = all_words(&ab, if props == 1 { 10 } else { 6 });
        for _ in 0..150 {
            let nfa = random_nfa(&mut r, &ab);
            let dfa = determinize(&nfa, Budget::default()).unwrap();
            let pruned = determinize_pruned(&nfa, Budget::default()).unwrap();
            let min = dfa_minimize(&dfa);
            for w in &words {
                let expected = nfa.accepts(w);
                assert_eq!(dfa.accepts(w), expected);
                assert_eq!(pruned.accepts(w), expected);
                assert_eq!(min.accepts(w), expected);
            }
            assert_eq!(min.state_count(), table_filling_size(&dfa));
            assert_eq!(dfa_minimize(&pruned), min);
        }
    }
}

/// Live states by the nested-search characterization: some accepting state
/// is reachable and lies on a cycle.
fn nested_search_live(a: &BuchiAutomaton) -> Vec<bool> {
    let reach = |from: usize, include_self: bool| -> HashSet<usize> {
        let mut seen = HashSet::new();
        let mut stack: Vec<usize> = if include_self {
            vec![from]
        } else {
            a.edges[from].iter().map(|e| e.target).collect()
        };
        while let Some(q) = stack.pop() {
            if seen.insert(q) {
                stack.extend(a.edges[q].iter().map(|e| e.target));
            }
        }
        seen
    };
    (0..a.state_count())
        .map(|q| reach(q, true).into_iter().any(|f| a.accepting[f] && reach(f, false).contains(&f)))
        .collect()
}

#[test]
fn live_states_match_nested_search() {
    let mut r = rng(14);
    let ab = alphabet(2);
    for _ in 0..500 {
        let states = r.gen_range(1..10);
        let a = BuchiAutomaton {
            alphabet: ab.clone(),
            initial: 0,
            edges: random_edges(&mut r, states, 2),
            accepting: (0..states).map(|_| r.gen_bool(0.3)).collect(),
        };
        assert_eq!(live_states(&a), nested_search_live(&a));
    }
}

#[test]
fn verdicts_only_sharpen_along_transitions() {
    let mut r = rng(15);
    let ab = alphabet(2);
    for _ in 0..150 {
        let phi: Formula = random_formula(&mut r, shape(4, 2));
        let m = build_rltl_monitor(&phi, &ab, &BuildOptions::default()).unwrap();
        for q in 0..m.state_count() {
            for l in ab.letters() {
                let (from, to) = (m.output(q).robust().unwrap(), m.output(m.successor(q, l)).robust().unwrap());
                assert!(specificity_leq(from, to), "{phi}: {from} then {to}");
            }
        }
    }
}

#[test]
fn table_verdicts_anticipate_their_extensions() {
    let mut r = rng(16);
    for (value, prefix, text) in REALIZABLE {
        let phi = robust(text);
        let ab = Alphabet::from_formula(&phi).unwrap();
        let u: Vec<Letter> = letters(&ab, prefix);
        let mut seen = [[false; 2]; 4];
        let mut record = |stem: Vec<Letter>, cycle: Vec<Letter>| {
            let word = rltl_core::LassoWord::new([u.clone(), stem].concat(), cycle).unwrap();
            let v = eval_rltl_lasso(&word, &phi, &ab).unwrap();
            for (i, cell) in seen.iter_mut().enumerate() {
                cell[v.bit(i + 1) as usize] = true;
            }
        };
        for stem in all_words(&ab, 2) {
            for cycle in all_words(&ab, 2).into_iter().filter(|c| !c.is_empty()) {
                record(stem.clone(), cycle);
            }
        }
        for _ in 0..200 {
            let w = random_word(&mut r, &ab, 4, 4);
            record(w.stem().to_vec(), w.cycle().to_vec());
        }
        for (i, c) in value.chars().enumerate() {
            let expected = match c {
                '0' => [true, false],
                '1' => [false, true],
                _ => [true, true],
            };
            assert_eq!(seen[i], expected, "{text} after `{prefix}`, bit {}", i + 1);
        }
    }
}
