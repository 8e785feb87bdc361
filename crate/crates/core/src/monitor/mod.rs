//! Moore-machine monitors: construction, minimization, execution and
//! monitorability analysis.

mod artifact;
mod build;
mod report;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Letter};
use crate::automata::quotient;
use crate::error::{Error, Result};
use crate::semantics::{specificity_leq, Verdict3, Verdict4};

pub use build::{
    build_ltl3_monitor, build_ltl3_monitor_with_stats, build_rltl_monitor, build_rltl_monitor_per_bit,
    build_rltl_monitor_with_stats, BuildOptions, BuildStats,
};
pub use report::{compile, MonitorReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonitorMode {
    /// Four-cell robust verdicts.
    Rltl,
    /// Three-valued classical verdicts.
    Ltl3,
}

impl fmt::Display for MonitorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MonitorMode::Rltl => "rltl",
            MonitorMode::Ltl3 => "ltl3",
        })
    }
}

/// Output of a monitor state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Robust(Verdict4),
    Classical(Verdict3),
}

impl Verdict {
    pub fn mode(self) -> MonitorMode {
        match self {
            Verdict::Robust(_) => MonitorMode::Rltl,
            Verdict::Classical(_) => MonitorMode::Ltl3,
        }
    }

    /// True for the verdict that carries no information (`????` or `?`).
    pub fn is_unknown(self) -> bool {
        match self {
            Verdict::Robust(v) => v.is_unknown(),
            Verdict::Classical(v) => v.is_unknown(),
        }
    }

    pub fn robust(self) -> Option<Verdict4> {
        match self {
            Verdict::Robust(v) => Some(v),
            Verdict::Classical(_) => None,
        }
    }

    pub fn classical(self) -> Option<Verdict3> {
        match self {
            Verdict::Classical(v) => Some(v),
            Verdict::Robust(_) => None,
        }
    }

    /// `self ⪯ other`; verdicts of different modes are incomparable.
    pub fn refined_by(self, other: Verdict) -> bool {
        match (self, other) {
            (Verdict::Robust(x), Verdict::Robust(y)) => specificity_leq(x, y),
            (Verdict::Classical(x), Verdict::Classical(y)) => x.0.refined_by(y.0),
            _ => false,
        }
    }

    pub fn parse(text: &str, mode: MonitorMode) -> Result<Self> {
        Ok(match mode {
            MonitorMode::Rltl => Verdict::Robust(text.parse()?),
            MonitorMode::Ltl3 => Verdict::Classical(text.parse()?),
        })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Robust(v) => v.fmt(f),
            Verdict::Classical(v) => v.fmt(f),
        }
    }
}

/// A deterministic, complete Moore machine over the letters of an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreMonitor {
    alphabet: Alphabet,
    mode: MonitorMode,
    initial: usize,
    delta: Vec<Vec<usize>>,
    outputs: Vec<Verdict>,
}

impl MooreMonitor {
    /// Checks completeness, target ranges and output modes.
    pub fn new(
        alphabet: Alphabet,
        mode: MonitorMode,
        initial: usize,
        delta: Vec<Vec<usize>>,
        outputs: Vec<Verdict>,
    ) -> Result<Self> {
        let n = delta.len();
        let bad = |m: String| Err(Error::Artifact(m));
        if n == 0 || outputs.len() != n {
            return bad(format!("{n} transition rows but {} outputs", outputs.len()));
        }
        if initial >= n {
            return bad(format!("initial state {initial} out of range"));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.letter_count() {
                return bad(format!("state {q} has {} transitions, expected {}", row.len(), alphabet.letter_count()));
            }
            if let Some(t) = row.iter().find(|&&t| t >= n) {
                return bad(format!("state {q} has a transition to missing state {t}"));
            }
        }
        if let Some(v) = outputs.iter().find(|v| v.mode() != mode) {
            return bad(format!("verdict {v} does not belong to a {mode} monitor"));
        }
        Ok(Self {
            alphabet,
            mode,
            initial,
            delta,
            outputs,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn mode(&self) -> MonitorMode {
        self.mode
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn output(&self, state: usize) -> Verdict {
        self.outputs[state]
    }

    pub fn outputs(&self) -> &[Verdict] {
        &self.outputs
    }

    pub fn successor(&self, state: usize, letter: Letter) -> usize {
        self.delta[state][letter.index()]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn start(&self) -> MonitorRun<'_> {
        MonitorRun {
            monitor: self,
            state: self.initial,
            steps: 0,
        }
    }

    /// `λ_M(word)`: the output after reading the whole word.
    pub fn verdict_after(&self, word: &[Letter]) -> Result<Verdict> {
        let mut run = self.start();
        for &l in word {
            run.step(l)?;
        }
        Ok(run.verdict())
    }

    pub fn reachable_states(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which only the uninformative verdict can ever be emitted.
    pub fn ugly_states(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut reverse = vec![Vec::new(); n];
        for (q, row) in self.delta.iter().enumerate() {
            for &t in row {
                reverse[t].push(q);
            }
        }
        // backward closure of the informative states
        let mut good: Vec<bool> = self.outputs.iter().map(|v| !v.is_unknown()).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&q| good[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if !good[p] {
                    good[p] = true;
                    stack.push(p);
                }
            }
        }
        let reachable = self.reachable_states();
        (0..n).map(|q| reachable[q] && !good[q]).collect()
    }

    /// Same behaviour after minimization and canonical numbering.
    pub fn is_isomorphic(&self, other: &MooreMonitor) -> bool {
        self.alphabet == other.alphabet && minimize_moore(self) == minimize_moore(other)
    }
}

/// Single-owner cursor over a monitor.
#[derive(Clone, Debug)]
pub struct MonitorRun<'a> {
    monitor: &'a MooreMonitor,
    state: usize,
    steps: usize,
}

impl MonitorRun<'_> {
    pub fn verdict(&self) -> Verdict {
        self.monitor.outputs[self.state]
    }

    pub fn state(&self) -> usize {
        self.state
    }

    /// Number of letters consumed so far.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step(&mut self, letter: Letter) -> Result<Verdict> {
        let letter = self.monitor.alphabet.check(letter)?;
        self.state = self.monitor.successor(self.state, letter);
        self.steps += 1;
        Ok(self.verdict())
    }

    /// Steps on the letter holding exactly the named propositions.
    pub fn step_names<I, S>(&mut self, names: I) -> Result<Verdict>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let letter = self.monitor.alphabet.letter(names)?;
        self.step(letter)
    }
}

/// Minimal machine with the same output function, states numbered in
/// breadth-first order from the initial state.
pub fn minimize_moore(m: &MooreMonitor) -> MooreMonitor {
    let mut ids: HashMap<Verdict, usize> = HashMap::new();
    let classes: Vec<usize> = m
        .outputs
        .iter()
        .map(|v| {
            let fresh = ids.len();
            *ids.entry(*v).or_insert(fresh)
        })
        .collect();
    let q = quotient(m.initial, &m.delta, &classes);
    let mut outputs = vec![None; q.delta.len()];
    for (old, new) in q.map.iter().enumerate() {
        if let Some(new) = new {
            outputs[*new] = Some(m.outputs[old]);
        }
    }
    MooreMonitor {
        alphabet: m.alphabet.clone(),
        mode: m.mode,
        initial: 0,
        delta: q.delta,
        outputs: outputs.into_iter().map(|v| v.expect("every class has a member")).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monitorability {
    pub monitorable: bool,
    /// Ugly states of the minimized monitor.
    pub ugly_states: Vec<usize>,
}

/// A formula is monitorable when no reachable state of its monitor is ugly.
pub fn analyze_monitorability(m: &MooreMonitor) -> Monitorability {
    let min = minimize_moore(m);
    let ugly_states: Vec<usize> = min
        .ugly_states()
        .iter()
        .enumerate()
        .filter(|(_, u)| **u)
        .map(|(q, _)| q)
        .collect();
    Monitorability {
        monitorable: ugly_states.is_empty(),
        ugly_states,
    }
}

/// Outputs of all reachable states.
pub fn reachable_verdicts(m: &MooreMonitor) -> BTreeSet<Verdict> {
    m.reachable_states()
        .iter()
        .enumerate()
        .filter(|(_, r)| **r)
        .map(|(q, _)| m.outputs[q])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn robust(s: &str) -> Verdict {
        Verdict::Robust(s.parse().unwrap())
    }

    /// Two copies of an all-`?` sink behind a state that outputs `???1`.
    fn redundant() -> MooreMonitor {
        let ab = Alphabet::new(["a"]).unwrap();
        MooreMonitor::new(
            ab,
            MonitorMode::Rltl,
            0,
            vec![vec![1, 2], vec![2, 1], vec![1, 2], vec![3, 3]],
            vec![robust("???1"), robust("????"), robust("????"), robust("0000")],
        )
        .unwrap()
    }

    #[test]
    fn minimization_merges_and_drops_unreachable() {
        let m = minimize_moore(&redundant());
        assert_eq!(m.state_count(), 2);
        assert_eq!(minimize_moore(&m), m);
        assert!(m.is_isomorphic(&redundant()));
    }

    #[test]
    fn ugly_detection() {
        let m = redundant();
        assert_eq!(m.ugly_states(), vec![false, true, true, false]);
        let report = analyze_monitorability(&m);
        assert!(!report.monitorable);
        assert_eq!(report.ugly_states, vec![1]);
    }

    #[test]
    fn run_counts_steps() {
        let m = redundant();
        let mut run = m.start();
        assert_eq!(run.verdict(), robust("???1"));
        assert_eq!(run.step_names(["a"]).unwrap(), robust("????"));
        assert_eq!(run.steps(), 1);
        assert!(run.step(Letter(2)).is_err());
        assert!(run.step_names(["zz"]).is_err());
    }

    #[test]
    fn construction_is_validated() {
        let ab = Alphabet::new(["a"]).unwrap();
        assert!(MooreMonitor::new(ab.clone(), MonitorMode::Rltl, 0, vec![vec![0]], vec![robust("????")]).is_err());
        assert!(MooreMonitor::new(ab.clone(), MonitorMode::Rltl, 0, vec![vec![0, 1]], vec![robust("????")]).is_err());
        let classical = Verdict::Classical(Verdict3::UNKNOWN);
        assert!(MooreMonitor::new(ab, MonitorMode::Rltl, 0, vec![vec![0, 0]], vec![classical]).is_err());
    }

    #[test]
    fn verdict_order_and_modes() {
        assert!(robust("????").refined_by(robust("0??1")));
        assert!(!robust("0???").refined_by(robust("???1")));
        assert!(!robust("????").refined_by(Verdict::Classical(Verdict3::UNKNOWN)));
        assert_eq!(Verdict::parse("?", MonitorMode::Ltl3).unwrap().to_string(), "?");
        assert!(Verdict::parse("?", MonitorMode::Rltl).is_err());
    }
}
