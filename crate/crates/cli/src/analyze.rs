//! Batch analysis of a formula corpus. Each nonblank, non-`#` line holds a
//! formula, optionally followed by `;` and a prefix such as `{a} {} {a,b}`
//! whose verdict is reported.

use rayon::prelude::*;
use serde::Serialize;

use rltl_core::{compile, parse, BuildOptions, Flavor, MooreMonitor};

use crate::{alphabet_of, trace, Failure, TableFormat};

#[derive(Debug, Serialize)]
pub struct ModeResult {
    pub states: usize,
    pub outputs: usize,
    pub monitorable: bool,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub build_ms: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub line: usize,
    pub formula: String,
    pub rltl: Option<ModeResult>,
    pub ltl3: Option<ModeResult>,
    pub error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub formulas: usize,
    pub errors: usize,
    pub rltl_monitorable_pct: f64,
    pub ltl3_monitorable_pct: f64,
}

#[derive(Debug, Serialize)]
pub struct Table {
    pub rows: Vec<Row>,
    pub summary: Summary,
}

fn mode_result(
    formula: &str,
    flavor: Flavor,
    names: Option<&[String]>,
    prefix: Option<&str>,
    budget: usize,
    timing: bool,
) -> Result<ModeResult, Failure> {
    let alphabet = alphabet_of(names, formula, flavor)?;
    let property = parse(formula, Some(&alphabet), flavor)?;
    let (monitor, report): (MooreMonitor, _) = compile(&property, &alphabet, &BuildOptions { state_budget: budget })?;
    let events = match prefix {
        Some(p) => trace::parse_inline(p, &alphabet).map_err(Failure::Trace)?,
        None => Vec::new(),
    };
    Ok(ModeResult {
        states: report.states,
        outputs: report.outputs,
        monitorable: report.monitorable,
        verdict: monitor.verdict_after(&events)?.to_string(),
        build_ms: report.build_ms.filter(|_| timing),
    })
}

fn analyze_line(line: usize, text: &str, names: Option<&[String]>, budget: usize, timing: bool) -> Row {
    let (formula, prefix) = match text.split_once(';') {
        Some((f, p)) => (f.trim(), Some(p.trim())),
        None => (text.trim(), None),
    };
    let run = |flavor| mode_result(formula, flavor, names, prefix, budget, timing);
    let (rltl, ltl3) = rayon::join(|| run(Flavor::Robust), || run(Flavor::Classical));
    let error = [&rltl, &ltl3]
        .iter()
        .find_map(|r| r.as_ref().err().map(|f| f.message().to_string()));
    Row {
        line,
        formula: formula.to_string(),
        rltl: rltl.ok(),
        ltl3: ltl3.ok(),
        error,
    }
}

pub fn analyze(corpus: &str, names: Option<&[String]>, budget: usize, timing: bool) -> Table {
    let lines: Vec<(usize, &str)> = corpus
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    let rows: Vec<Row> = lines
        .par_iter()
        .map(|&(n, l)| analyze_line(n, l, names, budget, timing))
        .collect();
    let ok: Vec<&Row> = rows.iter().filter(|r| r.error.is_none()).collect();
    let pct = |count: usize| {
        if ok.is_empty() {
            0.0
        } else {
            100.0 * count as f64 / ok.len() as f64
        }
    };
    let summary = Summary {
        formulas: rows.len(),
        errors: rows.len() - ok.len(),
        rltl_monitorable_pct: pct(ok.iter().filter(|r| r.rltl.as_ref().is_some_and(|m| m.monitorable)).count()),
        ltl3_monitorable_pct: pct(ok.iter().filter(|r| r.ltl3.as_ref().is_some_and(|m| m.monitorable)).count()),
    };
    Table { rows, summary }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

impl Table {
    pub fn render(&self, format: TableFormat) -> String {
        match format {
            TableFormat::Json => serde_json::to_string_pretty(self).expect("table serializes") + "\n",
            TableFormat::Csv => {
                let mut out = String::from(
                    "line,formula,rltl_states,rltl_outputs,rltl_monitorable,rltl_verdict,rltl_ms,\
                     ltl3_states,ltl3_outputs,ltl3_monitorable,ltl3_verdict,ltl3_ms,error\n",
                );
                for row in &self.rows {
                    let mut fields = vec![row.line.to_string(), csv_field(&row.formula)];
                    for mode in [&row.rltl, &row.ltl3] {
                        match mode {
                            Some(m) => fields.extend([
                                m.states.to_string(),
                                m.outputs.to_string(),
                                m.monitorable.to_string(),
                                m.verdict.clone(),
                                m.build_ms.map(|ms| format!("{ms:.3}")).unwrap_or_default(),
                            ]),
                            None => fields.extend(std::iter::repeat_n(String::new(), 5)),
                        }
                    }
                    fields.push(csv_field(row.error.as_deref().unwrap_or("")));
                    out += &fields.join(",");
                    out.push('\n');
                }
                let s = &self.summary;
                out += &format!(
                    "# formulas {}, errors {}, rltl monitorable {:.1}%, ltl3 monitorable {:.1}%\n",
                    s.formulas, s.errors, s.rltl_monitorable_pct, s.ltl3_monitorable_pct
                );
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_keep_corpus_order_and_collect_errors() {
        let table = analyze("# header\nG a\n\nG F a ; {a} {}\nG (\nF a ; {}\n", None, 100_000, false);
        let lines: Vec<usize> = table.rows.iter().map(|r| r.line).collect();
        assert_eq!(lines, vec![2, 4, 5, 6]);
        assert!(table.rows[2].error.is_some());
        assert_eq!(table.summary.errors, 1);
        assert_eq!(table.rows[0].rltl.as_ref().unwrap().verdict, "????");
        assert_eq!(table.rows[1].ltl3.as_ref().unwrap().verdict, "?");
        assert!(!table.rows[1].ltl3.as_ref().unwrap().monitorable);
    }

    #[test]
    fn empty_corpus() {
        let table = analyze("", None, 100_000, true);
        assert!(table.rows.is_empty());
        let csv = table.render(TableFormat::Csv);
        assert_eq!(csv.lines().count(), 2);
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a, b"), "\"a, b\"");
        assert_eq!(csv_field("G a"), "G a");
    }
}
