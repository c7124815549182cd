//! Command-line front end for `imkit`.
//!
//! Exit codes: 0 success, 1 a checked relation was violated, 2 usage or parse
//! error, 3 a state file describes an invalid state.

pub mod figures;
pub mod sweep;
pub mod table;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::Value;

use imkit::measures::{MeasurePanel, DEFAULT_ALPHA};
use imkit::relations::run_audit;
use imkit::states::io::{parse_records, StateRecord};
use imkit::{AuditConfig, CheckKind, EnsembleAudit, Tolerances};

use figures::FigureConfig;
use sweep::{Family, Measure};
use table::{Cell, Table};

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_AUDIT_STATES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Compute,
    Audit,
    Sweep,
    Figure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "imkit",
    version,
    about = "Imaginarity measures, bound audits and figure datasets"
)]
pub struct Args {
    #[arg(long, value_enum)]
    pub cmd: Command,
    /// State file (compute).
    #[arg(long = "in", value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, env = "IMKIT_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of random states (audit: 1000, figure 5: 2000).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Rank of the random audit states; full rank by default.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long = "alpha", value_name = "ALPHA", default_values_t = [DEFAULT_ALPHA])]
    pub alphas: Vec<f64>,
    /// Audit check; all checks that apply to --dim by default.
    #[arg(long = "check", value_name = "NAME", value_delimiter = ',')]
    pub checks: Vec<String>,
    #[arg(long, value_name = "1..5")]
    pub figure: Option<u8>,
    #[arg(long = "tol", value_name = "KEY=VAL", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
    /// Sweep family: plus-i or bloch-ry.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long = "measure", value_name = "NAME", value_delimiter = ',')]
    pub measures: Vec<String>,
    /// Sweep intervals; the grid has steps + 1 points.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VAL, got `{s}`"))?;
    let v: f64 = v.parse().map_err(|e| format!("bad value in `{s}`: {e}"))?;
    if !(v.is_finite() && v >= 0.0) {
        return Err(format!("tolerance must be finite and nonnegative, got {v}"));
    }
    Ok((k.to_string(), v))
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    InvalidState(String),
    Core(imkit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidState(_) => 3,
            CliError::Usage(_) | CliError::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::InvalidState(m) => write!(f, "invalid state: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

/// What a successful run found; `violations` holds one line per failed check.
#[derive(Debug, Default)]
pub struct Outcome {
    pub violations: Vec<String>,
}

pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return u8::try_from(e.exit_code()).unwrap_or(2);
        }
    };
    let stdout = std::io::stdout();
    match run(&args, &mut stdout.lock()) {
        Ok(o) if o.violations.is_empty() => 0,
        Ok(o) => {
            for v in o.violations.iter().take(20) {
                eprintln!("violation: {v}");
            }
            if o.violations.len() > 20 {
                eprintln!("... {} violations in total", o.violations.len());
            }
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(args: &Args, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    validate(args)?;
    match args.cmd {
        Command::Compute => compute(args, stdout),
        Command::Audit => audit(args, stdout),
        Command::Sweep => sweep_cmd(args, stdout),
        Command::Figure => figure_cmd(args, stdout),
    }
}

fn validate(args: &Args) -> Result<(), CliError> {
    if args.seed == 0 {
        return Err(CliError::Usage("--seed must be positive".into()));
    }
    if args.n == Some(0) {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    if args.dim < 2 {
        return Err(CliError::Usage(format!(
            "--dim must be at least 2, got {}",
            args.dim
        )));
    }
    if let Some(&a) = args.alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
        return Err(CliError::Usage(format!(
            "--alpha must lie in (0, 1), got {a}"
        )));
    }
    Ok(())
}

fn tolerances(args: &Args) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    for (k, v) in &args.tol {
        tol.set(k, *v).map_err(|e| {
            CliError::Usage(format!("{e}; known keys: {}", Tolerances::KEYS.join(", ")))
        })?;
    }
    Ok(tol)
}

fn emit(args: &Args, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn emit_table(args: &Args, t: &Table, stdout: &mut dyn Write) -> Result<(), CliError> {
    let text = match args.format {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
    };
    emit(args, &text, stdout)
}

fn compute(args: &Args, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("compute needs --in PATH".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let records = parse_records(&text).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut panels = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        let entry = rec
            .to_state(i)
            .map_err(|e| CliError::InvalidState(format!("record {i}: {e}")))?;
        let panel = MeasurePanel::compute(entry.id, &entry.state.density(), &args.alphas)
            .map_err(CliError::Core)?;
        panels.push(panel);
    }
    let text = match args.format {
        Format::Csv => {
            let mut t = Table::new(MeasurePanel::columns(&args.alphas));
            for p in &panels {
                t.push(p.values().into_iter().map(Cell::Text).collect());
            }
            t.to_csv()
        }
        Format::Json => panels_json(&panels, &records),
    };
    emit(args, &text, stdout)?;
    Ok(Outcome::default())
}

/// Each panel carries the record it was computed from under `"state"`, so
/// the states can be read back with the state-file parser.
fn panels_json(panels: &[MeasurePanel], records: &[StateRecord]) -> String {
    let rows: Vec<Value> = panels
        .iter()
        .zip(records)
        .map(|(p, r)| {
            let mut v = serde_json::to_value(p).expect("panel serializes");
            v.as_object_mut().expect("panel is an object").insert(
                "state".into(),
                serde_json::to_value(r).expect("record serializes"),
            );
            v
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&rows).expect("panels serialize");
    text.push('\n');
    text
}

fn audit(args: &Args, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let checks = if args.checks.is_empty() {
        CheckKind::applicable(args.dim)
    } else {
        args.checks
            .iter()
            .map(|s| s.parse::<CheckKind>().map_err(CliError::Core))
            .collect::<Result<_, _>>()?
    };
    let mut config = AuditConfig::new(
        args.dim,
        args.n.unwrap_or(DEFAULT_AUDIT_STATES),
        args.seed,
        checks,
    );
    config.rank = args.rank;
    config.tolerances = tolerances(args)?;
    if let Some(r) = args.rank {
        if r == 0 || r > args.dim {
            return Err(CliError::Usage(format!(
                "--rank must lie in 1..={}",
                args.dim
            )));
        }
    }
    let result = run_audit(&config).map_err(CliError::Core)?;
    if args.out.is_some() {
        let text = match args.format {
            Format::Csv => result.to_csv(),
            Format::Json => result.to_json(),
        };
        emit(args, &text, stdout)?;
    }
    write_summary(&result, stdout)
        .map_err(|e| CliError::Usage(format!("cannot write summary: {e}")))?;
    let violations = result
        .reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| {
            format!(
                "{} {}: lhs {} {} rhs {} (slack {:e})",
                r.name, r.state_id, r.lhs, r.relation, r.rhs, r.slack
            )
        })
        .collect();
    Ok(Outcome { violations })
}

fn write_summary(a: &EnsembleAudit, w: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        w,
        "audit dim={} n={} seed={}: {} reports, {} violations",
        a.dim,
        a.n_states,
        a.seed,
        a.reports.len(),
        a.violations
    )?;
    writeln!(
        w,
        "{:<24} {:>8} {:>10} {:>14}",
        "check", "trials", "violations", "worst_slack"
    )?;
    for s in a.summary() {
        writeln!(
            w,
            "{:<24} {:>8} {:>10} {:>14.6e}",
            s.check, s.trials, s.violations, s.worst_slack
        )?;
    }
    Ok(())
}

fn sweep_cmd(args: &Args, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let family: Family = args
        .family
        .as_deref()
        .ok_or_else(|| CliError::Usage("sweep needs --family (plus-i or bloch-ry)".into()))?
        .parse()?;
    let measures = args
        .measures
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Measure>())
        .collect::<Result<Vec<_>, _>>()?;
    let t = sweep::sweep(family, &measures, &args.alphas, args.steps)?;
    emit_table(args, &t, stdout)?;
    Ok(Outcome::default())
}

fn figure_cmd(args: &Args, stdout: &mut dyn Write) -> Result<Outcome, CliError> {
    let which = args
        .figure
        .ok_or_else(|| CliError::Usage("figure needs --figure 1..5".into()))?;
    let cfg = FigureConfig {
        seed: args.seed,
        n: args.n,
        tolerances: tolerances(args)?,
    };
    let d = figures::figure(which, &cfg)?;
    if d.violations.is_empty() {
        emit_table(args, &d.table, stdout)?;
    }
    Ok(Outcome {
        violations: d.violations,
    })
}
