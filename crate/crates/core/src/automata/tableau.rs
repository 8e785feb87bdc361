//! LTL to Büchi translation.
//!
//! The formula is brought into negation normal form over a hash-consed
//! node table. States of the tableau are sets of obligations for the next
//! position; expanding a state yields guarded covers, each of which records
//! which until-formulas it postpones. This gives a transition-based
//! generalized Büchi automaton with one acceptance set per until.

use std::collections::{BTreeSet, HashMap};

use super::buchi::{BuchiAutomaton, Guard};
use super::generalized::{GeneralizedBuchi, GeneralizedEdge, Marks};
use super::Budget;
use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::syntax::Formula;

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit { index: u32, positive: bool },
    And(Id, Id),
    Or(Id, Id),
    Next(Id),
    Until(Id, Id),
    Release(Id, Id),
}

#[derive(Default)]
struct Nodes {
    nodes: Vec<Node>,
    ids: HashMap<Node, Id>,
}

impl Nodes {
    fn intern(&mut self, node: Node) -> Id {
        // commutative operands are ordered so `a & b` and `b & a` share an id
        let node = match node {
            Node::And(a, b) if b < a => Node::And(b, a),
            Node::Or(a, b) if b < a => Node::Or(b, a),
            n => n,
        };
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(node);
        self.ids.insert(node, id);
        id
    }

    fn get(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    fn is_eventually(&self, id: Id) -> bool {
        matches!(self.get(id), Node::Until(a, _) if self.get(a) == Node::True)
    }

    fn is_always(&self, id: Id) -> bool {
        matches!(self.get(id), Node::Release(a, _) if self.get(a) == Node::False)
    }

    fn and(&mut self, a: Id, b: Id) -> Id {
        match (self.get(a), self.get(b)) {
            (Node::False, _) | (_, Node::False) => self.intern(Node::False),
            (Node::True, _) => b,
            (_, Node::True) => a,
            _ if a == b => a,
            _ => self.intern(Node::And(a, b)),
        }
    }

    fn or(&mut self, a: Id, b: Id) -> Id {
        match (self.get(a), self.get(b)) {
            (Node::True, _) | (_, Node::True) => self.intern(Node::True),
            (Node::False, _) => b,
            (_, Node::False) => a,
            _ if a == b => a,
            _ => self.intern(Node::Or(a, b)),
        }
    }

    fn until(&mut self, a: Id, b: Id) -> Id {
        match (self.get(a), self.get(b)) {
            (_, Node::True) => self.intern(Node::True),
            (_, Node::False) => self.intern(Node::False),
            (Node::False, _) => b,
            _ if a == b => a,
            // F F x = F x, F G F x = G F x
            (Node::True, Node::Until(..)) if self.is_eventually(b) => b,
            (Node::True, Node::Release(_, x)) if self.is_always(b) && self.is_eventually(x) => b,
            _ => self.intern(Node::Until(a, b)),
        }
    }

    fn release(&mut self, a: Id, b: Id) -> Id {
        match (self.get(a), self.get(b)) {
            (_, Node::True) => self.intern(Node::True),
            (_, Node::False) => self.intern(Node::False),
            (Node::True, _) => b,
            _ if a == b => a,
            // G G x = G x, G F G x = F G x
            (Node::False, Node::Release(..)) if self.is_always(b) => b,
            (Node::False, Node::Until(_, x)) if self.is_eventually(b) && self.is_always(x) => b,
            _ => self.intern(Node::Release(a, b)),
        }
    }

    fn next(&mut self, a: Id) -> Id {
        match self.get(a) {
            Node::True | Node::False => a,
            _ => self.intern(Node::Next(a)),
        }
    }

    /// Negation normal form of `phi` (negated when `negate` is set).
    fn nnf(&mut self, phi: &Formula, negate: bool, alphabet: &Alphabet) -> Result<Id> {
        Ok(match phi {
            Formula::True => self.intern(if negate { Node::False } else { Node::True }),
            Formula::False => self.intern(if negate { Node::True } else { Node::False }),
            Formula::Atom(p) => {
                let index = alphabet
                    .index_of(p)
                    .ok_or_else(|| Error::UnknownProposition(p.to_string()))?;
                self.intern(Node::Lit {
                    index: index as u32,
                    positive: !negate,
                })
            }
            Formula::Not(a) => self.nnf(a, !negate, alphabet)?,
            Formula::And(a, b) | Formula::Or(a, b) => {
                let (x, y) = (self.nnf(a, negate, alphabet)?, self.nnf(b, negate, alphabet)?);
                if matches!(phi, Formula::And(..)) != negate {
                    self.and(x, y)
                } else {
                    self.or(x, y)
                }
            }
            Formula::Implies(a, b) => {
                let (x, y) = (self.nnf(a, !negate, alphabet)?, self.nnf(b, negate, alphabet)?);
                if negate {
                    self.and(x, y)
                } else {
                    self.or(x, y)
                }
            }
            Formula::Next(a) => {
                let x = self.nnf(a, negate, alphabet)?;
                self.next(x)
            }
            Formula::Until(a, b) | Formula::Release(a, b) => {
                let (x, y) = (self.nnf(a, negate, alphabet)?, self.nnf(b, negate, alphabet)?);
                if matches!(phi, Formula::Until(..)) != negate {
                    self.until(x, y)
                } else {
                    self.release(x, y)
                }
            }
            Formula::Eventually(a) | Formula::Always(a) => {
                let x = self.nnf(a, negate, alphabet)?;
                let t = self.intern(Node::True);
                let f = self.intern(Node::False);
                if matches!(phi, Formula::Eventually(..)) != negate {
                    self.until(t, x)
                } else {
                    self.release(f, x)
                }
            }
        })
    }
}

#[derive(Clone, Debug, Default)]
struct Cover {
    guard: Guard,
    next: BTreeSet<Id>,
    postponed: BTreeSet<Id>,
    done: BTreeSet<Id>,
}

impl Cover {
    /// `self` allows every continuation `other` allows, on at least the
    /// same letters, with at least the same acceptance.
    fn dominates(&self, other: &Cover) -> bool {
        self.guard.pos & !other.guard.pos == 0
            && self.guard.neg & !other.guard.neg == 0
            && self.next.is_subset(&other.next)
            && self.postponed.is_subset(&other.postponed)
    }
}

struct Tableau {
    nodes: Nodes,
    implied: HashMap<(Id, Id), bool>,
}

impl Tableau {
    /// Sound but incomplete syntactic check that `g` implies `f`.
    fn implies(&mut self, g: Id, f: Id) -> bool {
        if g == f {
            return true;
        }
        if let Some(&known) = self.implied.get(&(g, f)) {
            return known;
        }
        let result = self.implies_uncached(g, f);
        self.implied.insert((g, f), result);
        result
    }

    fn implies_uncached(&mut self, g: Id, f: Id) -> bool {
        let (gn, fn_) = (self.nodes.get(g), self.nodes.get(f));
        if fn_ == Node::True || gn == Node::False {
            return true;
        }
        if let Node::And(a, b) = fn_ {
            return self.implies(g, a) && self.implies(g, b);
        }
        if let Node::Or(a, b) = gn {
            return self.implies(a, f) && self.implies(b, f);
        }
        if let Node::And(a, b) = gn {
            if self.implies(a, f) || self.implies(b, f) {
                return true;
            }
        }
        if let Node::Or(a, b) = fn_ {
            if self.implies(g, a) || self.implies(g, b) {
                return true;
            }
        }
        match (gn, fn_) {
            (Node::Next(a), Node::Next(b)) => return self.implies(a, b),
            (Node::Until(a, b), Node::Until(c, d)) | (Node::Release(a, b), Node::Release(c, d))
                if self.implies(a, c) && self.implies(b, d) =>
            {
                return true
            }
            _ => {}
        }
        if let Node::Until(_, d) = fn_ {
            if self.implies(g, d) {
                return true;
            }
        }
        if let Node::Release(c, d) = fn_ {
            if self.implies(g, c) && self.implies(g, d) {
                return true;
            }
        }
        if let Node::Until(a, b) = gn {
            if self.implies(a, f) && self.implies(b, f) {
                return true;
            }
        }
        if let Node::Release(_, b) = gn {
            if self.implies(b, f) {
                return true;
            }
        }
        false
    }

    /// Flattens conjunctions and drops members implied by others; `None`
    /// when the set is contradictory.
    fn normalize(&mut self, set: impl IntoIterator<Item = Id>) -> Option<BTreeSet<Id>> {
        let mut flat = BTreeSet::new();
        let mut stack: Vec<Id> = set.into_iter().collect();
        while let Some(f) = stack.pop() {
            match self.nodes.get(f) {
                Node::True => {}
                Node::False => return None,
                Node::And(a, b) => stack.extend([a, b]),
                _ => {
                    flat.insert(f);
                }
            }
        }
        let mut kept: Vec<Id> = flat.into_iter().collect();
        let mut i = 0;
        while i < kept.len() {
            let f = kept[i];
            let redundant = (0..kept.len()).any(|j| j != i && self.implies(kept[j], f));
            if redundant {
                kept.remove(i);
            } else {
                i += 1;
            }
        }
        Some(kept.into_iter().collect())
    }

    fn expand(&mut self, obligations: &BTreeSet<Id>) -> Vec<Cover> {
        let mut raw = Vec::new();
        self.expand_from(Cover::default(), obligations.iter().copied().collect(), &mut raw);
        let mut covers = Vec::new();
        for mut cover in raw {
            let Some(next) = self.normalize(cover.next.iter().copied()) else { continue };
            cover.next = next;
            covers.push(cover);
        }
        // keep only undominated covers; among equal ones keep the first
        let mut kept: Vec<Cover> = Vec::new();
        for (i, c) in covers.iter().enumerate() {
            let dominated = covers
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && d.dominates(c) && (!c.dominates(d) || j < i));
            if !dominated {
                kept.push(c.clone());
            }
        }
        kept
    }

    fn expand_from(&self, mut cover: Cover, mut todo: Vec<Id>, out: &mut Vec<Cover>) {
        while let Some(f) = todo.pop() {
            if !cover.done.insert(f) {
                continue;
            }
            match self.nodes.get(f) {
                Node::True => {}
                Node::False => return,
                Node::Lit { index, positive } => {
                    let bit = 1 << index;
                    let lit = if positive {
                        Guard { pos: bit, neg: 0 }
                    } else {
                        Guard { pos: 0, neg: bit }
                    };
                    match cover.guard.and(lit) {
                        Some(g) => cover.guard = g,
                        None => return,
                    }
                }
                Node::And(a, b) => {
                    todo.push(a);
                    todo.push(b);
                }
                Node::Or(a, b) => {
                    if cover.done.contains(&a) || cover.done.contains(&b) {
                        continue;
                    }
                    let mut left = todo.clone();
                    left.push(a);
                    self.expand_from(cover.clone(), left, out);
                    todo.push(b);
                }
                Node::Next(a) => {
                    cover.next.insert(a);
                }
                Node::Until(a, b) => {
                    // either fulfil now, or hold the left side and postpone
                    let mut now = todo.clone();
                    now.push(b);
                    self.expand_from(cover.clone(), now, out);
                    todo.push(a);
                    cover.next.insert(f);
                    cover.postponed.insert(f);
                }
                Node::Release(a, b) => {
                    let mut now = todo.clone();
                    now.push(a);
                    now.push(b);
                    self.expand_from(cover.clone(), now, out);
                    todo.push(b);
                    cover.next.insert(f);
                }
            }
        }
        out.push(cover);
    }

    /// Until-subformulas reachable from `root`, in id order.
    fn untils(&self, root: Id) -> Vec<Id> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![root];
        while let Some(f) = stack.pop() {
            if !seen.insert(f) {
                continue;
            }
            match self.nodes.get(f) {
                Node::And(a, b) | Node::Or(a, b) | Node::Until(a, b) | Node::Release(a, b) => stack.extend([a, b]),
                Node::Next(a) => stack.push(a),
                _ => {}
            }
        }
        seen.into_iter()
            .filter(|&f| matches!(self.nodes.get(f), Node::Until(..)))
            .collect()
    }
}

/// Translates a classical LTL formula into a transition-based generalized
/// Büchi automaton accepting exactly the words that satisfy it.
pub fn ltl_to_generalized(phi: &Formula, alphabet: &Alphabet, budget: Budget) -> Result<GeneralizedBuchi> {
    let mut nodes = Nodes::default();
    let root = nodes.nnf(phi, false, alphabet)?;
    let mut tableau = Tableau {
        nodes,
        implied: HashMap::new(),
    };
    let untils = tableau.untils(root);
    let sets = untils.len();

    let Some(initial) = tableau.normalize([root]) else {
        return Ok(GeneralizedBuchi::empty(alphabet));
    };
    let mut state_ids: HashMap<BTreeSet<Id>, usize> = HashMap::from([(initial.clone(), 0)]);
    let mut states = vec![initial];
    let mut edges: Vec<Vec<GeneralizedEdge>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut out: Vec<GeneralizedEdge> = Vec::new();
        let current = states[i].clone();
        for cover in tableau.expand(&current) {
            let mut marks = Marks::new(sets);
            for (k, u) in untils.iter().enumerate() {
                if !cover.postponed.contains(u) {
                    marks.insert(k);
                }
            }
            let target = match state_ids.get(&cover.next) {
                Some(&t) => t,
                None => {
                    if states.len() >= budget.cap {
                        return Err(budget.exceeded("LTL to Büchi translation"));
                    }
                    state_ids.insert(cover.next.clone(), states.len());
                    states.push(cover.next);
                    states.len() - 1
                }
            };
            let edge = GeneralizedEdge {
                guard: cover.guard,
                target,
                marks,
            };
            if !out.contains(&edge) {
                out.push(edge);
            }
        }
        edges.push(out);
        i += 1;
    }
    Ok(GeneralizedBuchi {
        alphabet: alphabet.clone(),
        initial: 0,
        edges,
        sets,
    }
    .reduce())
}

/// Translates a classical LTL formula into a state-based Büchi automaton
/// accepting exactly the words that satisfy it.
pub fn ltl_to_buchi(phi: &Formula, alphabet: &Alphabet, budget: Budget) -> Result<BuchiAutomaton> {
    ltl_to_generalized(phi, alphabet, budget)?.degeneralize(budget)
}
