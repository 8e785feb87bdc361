use serde::{Deserialize, Serialize};

use super::{analyze_monitorability, reachable_verdicts, MonitorMode, MooreMonitor};
use super::build::{build_ltl3_monitor_with_stats, build_rltl_monitor_with_stats, BuildOptions, BuildStats};
use crate::alphabet::Alphabet;
use crate::error::Result;
use crate::syntax::{Flavor, Property};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageSize {
    pub stage: String,
    pub states: usize,
}

/// Summary of a compiled monitor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonitorReport {
    pub mode: MonitorMode,
    pub states: usize,
    /// Number of distinct verdicts over reachable states.
    pub outputs: usize,
    pub monitorable: bool,
    pub ugly_states: usize,
    pub stage_sizes: Vec<StageSize>,
    /// Wall-clock build time; absent when timing is suppressed.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub build_ms: Option<f64>,
}

impl MonitorReport {
    pub fn new(monitor: &MooreMonitor, stats: &BuildStats) -> Self {
        let analysis = analyze_monitorability(monitor);
        MonitorReport {
            mode: monitor.mode(),
            states: monitor.state_count(),
            outputs: reachable_verdicts(monitor).len(),
            monitorable: analysis.monitorable,
            ugly_states: analysis.ugly_states.len(),
            stage_sizes: stats
                .stages
                .iter()
                .map(|(stage, states)| StageSize {
                    stage: stage.clone(),
                    states: *states,
                })
                .collect(),
            build_ms: Some(stats.elapsed.as_secs_f64() * 1000.0),
        }
    }
}

/// Builds the monitor matching the property's flavor and reports on it.
pub fn compile(property: &Property, alphabet: &Alphabet, options: &BuildOptions) -> Result<(MooreMonitor, MonitorReport)> {
    let (monitor, stats) = match property.flavor {
        Flavor::Robust => build_rltl_monitor_with_stats(&property.formula, alphabet, options)?,
        Flavor::Classical => build_ltl3_monitor_with_stats(&property.formula, alphabet, options)?,
    };
    let report = MonitorReport::new(&monitor, &stats);
    Ok((monitor, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn report(text: &str, flavor: Flavor) -> MonitorReport {
        let p = parse(text, None, flavor).unwrap();
        let ab = Alphabet::from_formula(&p.formula).unwrap();
        compile(&p, &ab, &BuildOptions::default()).unwrap().1
    }

    #[test]
    fn negation_breaks_monitorability() {
        assert!(report("G F a", Flavor::Robust).monitorable);
        let negated = report("! G F a", Flavor::Robust);
        assert!(!negated.monitorable);
        assert_eq!(negated.ugly_states, 1);
    }

    #[test]
    fn running_example_report() {
        let r = report("G a", Flavor::Robust);
        assert_eq!((r.states, r.outputs, r.mode), (4, 4, MonitorMode::Rltl));
        let json = serde_json::to_value(&r).unwrap();
        for key in ["states", "outputs", "monitorable", "stage_sizes", "build_ms"] {
            assert!(json.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn classical_flavor_builds_ltl3() {
        let r = report("G F s", Flavor::Classical);
        assert_eq!(r.mode, MonitorMode::Ltl3);
        assert!(!r.monitorable);
    }
}
