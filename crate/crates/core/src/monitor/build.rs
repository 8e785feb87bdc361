use std::collections::HashMap;
use std::time::{Duration, Instant};

use super::{minimize_moore, MonitorMode, MooreMonitor, Verdict};
use crate::alphabet::Alphabet;
use crate::automata::{determinize_pruned, dfa_minimize, ltl_to_generalized, truth_value_generalized, Budget, Dfa, GeneralizedBuchi};
use crate::error::{Error, Result};
use crate::semantics::{ltl_bit, xi, Ternary, TruthValue4, Verdict3, Verdict4};
use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest number of states any intermediate automaton may reach.
    pub state_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            state_budget: Budget::DEFAULT_CAP,
        }
    }
}

impl BuildOptions {
    fn budget(&self) -> Budget {
        Budget {
            cap: self.state_budget.max(1),
        }
    }
}

/// State counts of the intermediate automata, in pipeline order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub stages: Vec<(String, usize)>,
    pub elapsed: Duration,
}

impl BuildStats {
    fn record(&mut self, stage: impl Into<String>, states: usize) {
        self.stages.push((stage.into(), states));
    }
}

fn tag_stage(e: Error, suffix: &str) -> Error {
    match e {
        Error::BudgetExceeded { stage, cap } => Error::BudgetExceeded {
            stage: format!("{stage} ({suffix})"),
            cap,
        },
        e => e,
    }
}

/// Minimal DFA for the finite prefixes of the words satisfying `phi`.
fn prefix_dfa(phi: &Formula, alphabet: &Alphabet, budget: Budget, name: &str, stats: &mut BuildStats) -> Result<Dfa> {
    let buchi = ltl_to_generalized(phi, alphabet, budget).map_err(|e| tag_stage(e, name))?;
    stats.record(format!("buchi {name}"), buchi.state_count());
    prefix_dfa_of(&buchi, budget, name, stats)
}

fn prefix_dfa_of(buchi: &GeneralizedBuchi, budget: Budget, name: &str, stats: &mut BuildStats) -> Result<Dfa> {
    let nfa = buchi.prefix_nfa().trim().reduce();
    let dfa = determinize_pruned(&nfa, budget).map_err(|e| tag_stage(e, name))?;
    let min = dfa_minimize(&dfa);
    stats.record(format!("dfa {name}"), min.state_count());
    Ok(min)
}

/// Reachable part of the synchronous product of `dfas`, each state labelled
/// from the acceptance flags of its components.
fn product(
    alphabet: &Alphabet,
    mode: MonitorMode,
    dfas: &[Dfa],
    budget: Budget,
    label: impl Fn(&[bool]) -> Result<Verdict>,
) -> Result<MooreMonitor> {
    let start: Vec<usize> = dfas.iter().map(|d| d.initial).collect();
    let mut ids = HashMap::from([(start.clone(), 0usize)]);
    let mut tuples = vec![start];
    let mut delta = Vec::new();
    let mut outputs = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        let flags: Vec<bool> = tuples[i].iter().zip(dfas).map(|(&q, d)| d.accepting[q]).collect();
        outputs.push(label(&flags)?);
        let mut row = Vec::with_capacity(alphabet.letter_count());
        for letter in alphabet.letters() {
            let next: Vec<usize> = tuples[i].iter().zip(dfas).map(|(&q, d)| d.delta[q][letter.index()]).collect();
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if tuples.len() >= budget.cap {
                        return Err(budget_error("monitor product", budget));
                    }
                    ids.insert(next.clone(), tuples.len());
                    tuples.push(next);
                    tuples.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    MooreMonitor::new(alphabet.clone(), mode, 0, delta, outputs)
}

fn budget_error(stage: &str, budget: Budget) -> Error {
    Error::BudgetExceeded {
        stage: stage.to_string(),
        cap: budget.cap,
    }
}

fn finish(monitor: MooreMonitor, mut stats: BuildStats, started: Instant) -> (MooreMonitor, BuildStats) {
    stats.record("product", monitor.state_count());
    let min = minimize_moore(&monitor);
    stats.record("minimal", min.state_count());
    stats.elapsed = started.elapsed();
    (min, stats)
}

/// Robust monitor from one prefix automaton per truth value: a state outputs
/// the collapse of all truth values whose prefix automaton still accepts.
pub fn build_rltl_monitor(phi: &Formula, alphabet: &Alphabet, options: &BuildOptions) -> Result<MooreMonitor> {
    build_rltl_monitor_with_stats(phi, alphabet, options).map(|(m, _)| m)
}

pub fn build_rltl_monitor_with_stats(
    phi: &Formula,
    alphabet: &Alphabet,
    options: &BuildOptions,
) -> Result<(MooreMonitor, BuildStats)> {
    let started = Instant::now();
    let budget = options.budget();
    let mut stats = BuildStats::default();
    let mut dfas = Vec::with_capacity(5);
    for beta in TruthValue4::ALL {
        let buchi = truth_value_generalized(phi, beta, alphabet, budget)?;
        stats.record(format!("buchi {beta}"), buchi.state_count());
        dfas.push(prefix_dfa_of(&buchi, budget, &format!("truth value {beta}"), &mut stats)?);
    }
    let monitor = product(alphabet, MonitorMode::Rltl, &dfas, budget, |flags| {
        let possible = TruthValue4::ALL.into_iter().zip(flags).filter(|(_, f)| **f).map(|(b, _)| b);
        Ok(Verdict::Robust(xi(possible)?))
    })?;
    Ok(finish(monitor, stats, started))
}

/// Robust monitor assembled bit by bit: bit `i` is 0 once no extension
/// satisfies `ltl_bit(i, phi)`, 1 once no extension violates it.
pub fn build_rltl_monitor_per_bit(phi: &Formula, alphabet: &Alphabet, options: &BuildOptions) -> Result<MooreMonitor> {
    let started = Instant::now();
    let budget = options.budget();
    let mut stats = BuildStats::default();
    let mut dfas = Vec::with_capacity(8);
    for i in 1..=4 {
        let bit = ltl_bit(i, phi);
        dfas.push(prefix_dfa(&bit, alphabet, budget, &format!("bit {i}"), &mut stats)?);
        dfas.push(prefix_dfa(&bit.not(), alphabet, budget, &format!("negated bit {i}"), &mut stats)?);
    }
    let monitor = product(alphabet, MonitorMode::Rltl, &dfas, budget, |flags| {
        let cells: [Ternary; 4] = std::array::from_fn(|i| cell(flags[2 * i], flags[2 * i + 1]));
        let verdict = Verdict4::new(cells).expect("bitwise verdicts are monotone");
        Ok(Verdict::Robust(verdict))
    })?;
    Ok(finish(monitor, stats, started).0)
}

fn cell(satisfiable: bool, violable: bool) -> Ternary {
    match (satisfiable, violable) {
        (false, _) => Ternary::Zero,
        (true, false) => Ternary::One,
        (true, true) => Ternary::Unknown,
    }
}

/// Classical three-valued monitor from the prefix automata of `phi` and
/// its negation.
pub fn build_ltl3_monitor(phi: &Formula, alphabet: &Alphabet, options: &BuildOptions) -> Result<MooreMonitor> {
    build_ltl3_monitor_with_stats(phi, alphabet, options).map(|(m, _)| m)
}

pub fn build_ltl3_monitor_with_stats(
    phi: &Formula,
    alphabet: &Alphabet,
    options: &BuildOptions,
) -> Result<(MooreMonitor, BuildStats)> {
    let started = Instant::now();
    let budget = options.budget();
    let mut stats = BuildStats::default();
    let dfas = [
        prefix_dfa(phi, alphabet, budget, "formula", &mut stats)?,
        prefix_dfa(&phi.clone().not(), alphabet, budget, "negation", &mut stats)?,
    ];
    let monitor = product(alphabet, MonitorMode::Ltl3, &dfas, budget, |flags| {
        Ok(Verdict::Classical(Verdict3(cell(flags[0], flags[1]))))
    })?;
    Ok(finish(monitor, stats, started))
}
