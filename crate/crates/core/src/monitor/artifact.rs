use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{MonitorMode, MooreMonitor, Verdict};
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

const FORMAT: &str = "rltl-monitor";
const VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Artifact {
    format: String,
    version: u32,
    mode: MonitorMode,
    alphabet: Alphabet,
    initial: usize,
    states: Vec<StateEntry>,
}

#[derive(Serialize, Deserialize)]
struct StateEntry {
    output: String,
    next: Vec<usize>,
}

impl MooreMonitor {
    /// Versioned JSON form; `next[l]` is the successor on the letter with
    /// bitmask `l` over the alphabet order.
    pub fn to_json(&self) -> String {
        let artifact = Artifact {
            format: FORMAT.into(),
            version: VERSION,
            mode: self.mode,
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            states: self
                .delta
                .iter()
                .zip(&self.outputs)
                .map(|(next, output)| StateEntry {
                    output: output.to_string(),
                    next: next.clone(),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&artifact).expect("monitor serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let artifact: Artifact = serde_json::from_str(text).map_err(|e| Error::Artifact(e.to_string()))?;
        if artifact.format != FORMAT {
            return Err(Error::Artifact(format!("unexpected format `{}`", artifact.format)));
        }
        if artifact.version != VERSION {
            return Err(Error::Artifact(format!("unsupported version {}", artifact.version)));
        }
        let outputs = artifact
            .states
            .iter()
            .map(|s| Verdict::parse(&s.output, artifact.mode))
            .collect::<Result<Vec<_>>>()?;
        let delta = artifact.states.into_iter().map(|s| s.next).collect();
        MooreMonitor::new(artifact.alphabet, artifact.mode, artifact.initial, delta, outputs)
    }

    /// Graphviz rendering: states labelled by verdict, ugly states filled
    /// grey, edges labelled by the letters they read.
    pub fn to_dot(&self) -> String {
        let ugly = self.ugly_states();
        let reachable = self.reachable_states();
        let mut out = String::from("digraph monitor {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in (0..self.state_count()).filter(|&q| reachable[q]) {
            let extra = if ugly[q] { ", style=filled, fillcolor=lightgrey" } else { "" };
            writeln!(out, "  q{q} [label=\"{}\", shape=box{extra}];", self.outputs[q]).unwrap();
        }
        writeln!(out, "  init -> q{};", self.initial).unwrap();
        for q in (0..self.state_count()).filter(|&q| reachable[q]) {
            let mut targets: Vec<(usize, Vec<String>)> = Vec::new();
            for letter in self.alphabet.letters() {
                let t = self.successor(q, letter);
                let name = self.alphabet.format_letter(Letter(letter.0));
                match targets.iter_mut().find(|(g, _)| *g == t) {
                    Some((_, names)) => names.push(name),
                    None => targets.push((t, vec![name])),
                }
            }
            targets.sort_by_key(|(t, _)| *t);
            for (t, names) in targets {
                writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", names.join(", ")).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monitor::{build_rltl_monitor, BuildOptions};
    use crate::syntax::{parse, Flavor};

    fn monitor(s: &str) -> MooreMonitor {
        let f = parse(s, None, Flavor::Robust).unwrap().formula;
        let ab = Alphabet::from_formula(&f).unwrap();
        build_rltl_monitor(&f, &ab, &BuildOptions::default()).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let m = monitor("G a");
        let back = MooreMonitor::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert!(back.is_isomorphic(&m));
    }

    #[test]
    fn json_rejects_bad_artifacts() {
        let text = monitor("G a").to_json();
        assert!(MooreMonitor::from_json(&text.replace("rltl-monitor", "other")).is_err());
        assert!(MooreMonitor::from_json(&text.replace("\"version\": 1", "\"version\": 9")).is_err());
        assert!(MooreMonitor::from_json(&text.replace("0??1", "1??0")).is_err());
        assert!(MooreMonitor::from_json("{").is_err());
    }

    #[test]
    fn dot_export() {
        let dot = monitor("G a").to_dot();
        assert_eq!(dot.matches("shape=box").count(), 4);
        assert!(dot.contains("label=\"0??1\""));
        let constant = monitor("a & !a").to_dot();
        assert_eq!(constant.matches("shape=box").count(), 1);
        let ugly = monitor("! G F a").to_dot();
        assert!(ugly.contains("fillcolor=lightgrey"));
    }
}
