mod analyze;
mod trace;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rltl_core::{compile, parse, Alphabet, BuildOptions, Error, Flavor, MonitorReport, MooreMonitor};

#[derive(Parser)]
#[command(name = "rltl-mon", version, about = "Compile and run robust LTL monitors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a formula and print a report on the monitor.
    Compile {
        #[command(flatten)]
        args: FormulaArgs,
        /// Write the monitor artifact (JSON) here.
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Leave build times out of the report.
        #[arg(long)]
        no_timing: bool,
    },
    /// Feed a trace to a monitor and print the verdict after every event.
    Run {
        #[command(flatten)]
        source: MonitorSource,
        /// Trace file; standard input when omitted.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Compile every formula of a corpus in both modes and tabulate the results.
    Analyze {
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
        #[arg(long, default_value_t = BuildOptions::default().state_budget)]
        budget: usize,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
    },
    /// Print a monitor as Graphviz or as its JSON artifact.
    Export {
        #[command(flatten)]
        source: MonitorSource,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FormulaArgs {
    formula: String,
    #[arg(long, value_enum, default_value_t = FlavorArg::Robust)]
    flavor: FlavorArg,
    /// Comma-separated propositions; defaults to the formula's atoms.
    #[arg(long, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
    #[arg(long, default_value_t = BuildOptions::default().state_budget)]
    budget: usize,
}

#[derive(Args)]
struct MonitorSource {
    /// Monitor artifact written by `compile --output`.
    #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
    monitor: Option<PathBuf>,
    #[arg(long)]
    formula: Option<String>,
    #[arg(long, value_enum, default_value_t = FlavorArg::Robust)]
    flavor: FlavorArg,
    #[arg(long, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
    #[arg(long, default_value_t = BuildOptions::default().state_budget)]
    budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Robust,
    Classical,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Robust => Flavor::Robust,
            FlavorArg::Classical => Flavor::Classical,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Budget(String),
    Trace(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Trace(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Budget(m) | Failure::Trace(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::LetterOutOfRange { .. } => Failure::Trace(e.to_string()),
            Error::Syntax { .. }
            | Error::UnknownProposition(_)
            | Error::InvalidProposition(_)
            | Error::AlphabetTooLarge { .. }
            | Error::FlavorMismatch { .. }
            | Error::Artifact(_) => Failure::Parse(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

pub fn alphabet_of(names: Option<&[String]>, formula: &str, flavor: Flavor) -> Result<Alphabet, Failure> {
    Ok(match names {
        Some(names) => Alphabet::new(names.iter().map(String::as_str))?,
        None => Alphabet::from_formula(&parse(formula, None, flavor)?.formula)?,
    })
}

fn build(formula: &str, flavor: Flavor, names: Option<&[String]>, budget: usize) -> Result<(MooreMonitor, MonitorReport), Failure> {
    let alphabet = alphabet_of(names, formula, flavor)?;
    let property = parse(formula, Some(&alphabet), flavor)?;
    Ok(compile(&property, &alphabet, &BuildOptions { state_budget: budget })?)
}

fn load(source: &MonitorSource) -> Result<MooreMonitor, Failure> {
    match (&source.monitor, &source.formula) {
        (Some(path), _) => Ok(MooreMonitor::from_json(&read_file(path)?)?),
        (None, Some(formula)) => Ok(build(formula, source.flavor.into(), source.alphabet.as_deref(), source.budget)?.0),
        (None, None) => Err(Failure::Usage("either --monitor or --formula is required".into())),
    }
}

fn report_text(report: &MonitorReport) -> String {
    let mut out = format!(
        "mode: {}\nstates: {}\noutputs: {}\nmonitorable: {}\nugly states: {}\n",
        report.mode, report.states, report.outputs, report.monitorable, report.ugly_states
    );
    for s in &report.stage_sizes {
        out += &format!("stage {}: {}\n", s.stage, s.states);
    }
    if let Some(ms) = report.build_ms {
        out += &format!("build time: {ms:.3} ms\n");
    }
    out
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compile {
            args,
            output,
            format,
            no_timing,
        } => {
            let (monitor, mut report) = build(&args.formula, args.flavor.into(), args.alphabet.as_deref(), args.budget)?;
            if no_timing {
                report.build_ms = None;
            }
            if let Some(path) = &output {
                emit(Some(path), &monitor.to_json())?;
            }
            let text = match format {
                ReportFormat::Text => report_text(&report),
                ReportFormat::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
            };
            emit(None, &text)
        }
        Command::Run { source, trace, format } => {
            let monitor = load(&source)?;
            let text = match &trace {
                Some(path) => read_file(path)?,
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
                    s
                }
            };
            let events = trace::parse_trace(&text, monitor.alphabet()).map_err(Failure::Trace)?;
            let mut run = monitor.start();
            let mut verdicts = vec![run.verdict().to_string()];
            for &event in &events {
                run.step(event)?;
                verdicts.push(run.verdict().to_string());
            }
            let out = match format {
                ReportFormat::Text => {
                    let mut out: String = verdicts.iter().enumerate().map(|(i, v)| format!("{i} {v}\n")).collect();
                    out += &format!("final {} {}\n", events.len(), run.verdict());
                    out
                }
                ReportFormat::Json => {
                    let value = serde_json::json!({
                        "mode": monitor.mode(),
                        "verdicts": verdicts,
                        "final": run.verdict().to_string(),
                    });
                    serde_json::to_string_pretty(&value).expect("json") + "\n"
                }
            };
            emit(None, &out)
        }
        Command::Analyze {
            corpus,
            format,
            alphabet,
            budget,
            output,
            no_timing,
        } => {
            let text = read_file(&corpus)?;
            let table = analyze::analyze(&text, alphabet.as_deref(), budget, !no_timing);
            emit(output.as_ref(), &table.render(format))
        }
        Command::Export { source, format, output } => {
            let monitor = load(&source)?;
            let text = match format {
                ExportFormat::Dot => monitor.to_dot(),
                ExportFormat::Json => monitor.to_json(),
            };
            emit(output.as_ref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
