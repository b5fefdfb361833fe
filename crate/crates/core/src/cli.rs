//! Command-line front end: argument model, command runners and output
//! rendering. `main.rs` only parses, dispatches and sets the exit status.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bijections::{backward, Auditor, TransformAudit, TransformCase};
use crate::classes::{
    count_total, members, members_refined, refined_table, BruteForceCounter, Class, Family,
    FamilyIndex, RefinedKey,
};
use crate::error::{Count, Error, Result};
use crate::partition::Partition;
use crate::qseries::gprime_series;
use crate::recurrence::{check_system, verify_uniqueness, Grid, SystemReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_ERROR: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    #[value(name = "G")]
    G,
    #[value(name = "Gprime")]
    Gprime,
    #[value(name = "H")]
    H,
}

impl From<ClassArg> for Class {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::G => Class::G,
            ClassArg::Gprime => Class::Gprime,
            ClassArg::H => Class::H,
        }
    }
}

fn parse_index(s: &str) -> std::result::Result<FamilyIndex, String> {
    let i: i64 = s.parse().map_err(|e| format!("{e}"))?;
    FamilyIndex::try_from(i).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Parser)]
#[command(name = "evenodd-gg", version, about = "Exhaustive checks of the even/odd Göllnitz–Gordon companion identities")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "table", global = true)]
    pub format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<std::path::PathBuf>,

    /// Deterministic operation (the only mode; accepted for explicitness).
    #[arg(long, global = true)]
    pub seedless: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct KeyArgs {
    /// Number of even parts.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
    /// Number of odd parts.
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print total (or, with --r/--s, refined) class counts.
    Count {
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Family index; both when omitted.
        #[arg(long, value_parser = parse_index)]
        i: Option<FamilyIndex>,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        key: KeyArgs,
    },
    /// Compare H, G and Gprime totals (and refined H vs G counts) for every n <= max-n.
    IdentityCheck {
        #[arg(long)]
        max_n: u32,
        #[arg(long)]
        refined: bool,
    },
    /// Check the recurrence system on brute-force H and G, and its uniqueness.
    RecurrenceCheck {
        #[arg(long, default_value_t = 6)]
        max_r: u32,
        #[arg(long, default_value_t = 6)]
        max_s: u32,
        #[arg(long, default_value_t = 30)]
        max_n: u32,
    },
    /// Audit all six part-removal maps; with --n/--r/--s, dump the audits at one key.
    BijectionCheck {
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        #[command(flatten)]
        key: KeyArgs,
    },
    /// Dump coefficients of the mod-8 product generating function.
    Series {
        #[arg(long, value_parser = parse_index)]
        i: FamilyIndex,
        /// Truncation order; defaults to max-n + 1.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 40)]
        max_n: usize,
    },
    /// List the members of a class at n (optionally at a refined key).
    List {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, value_parser = parse_index)]
        i: FamilyIndex,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        key: KeyArgs,
    },
}

/// A parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
}

impl From<&Cli> for RunConfig {
    fn from(cli: &Cli) -> Self {
        Self {
            command: cli.command.clone(),
            format: cli.format,
        }
    }
}

/// Errors surfaced by [`run`]: bad flag combinations, or a library failure.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Compute(Error::Overflow(_)) => EXIT_OVERFLOW,
            RunError::Compute(_) => EXIT_ERROR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictSummary {
    pub command: &'static str,
    pub attempted: u64,
    pub passed: u64,
    pub first_failure: Option<String>,
    pub wall_time: Duration,
}

impl VerdictSummary {
    pub fn all_passed(&self) -> bool {
        self.attempted == self.passed
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

impl std::fmt::Display for VerdictSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {}/{} checks passed in {:.3}s",
            self.command,
            self.passed,
            self.attempted,
            self.wall_time.as_secs_f64()
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, "; first failure: {first}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub summary: VerdictSummary,
    pub output: String,
}

struct Tally {
    attempted: u64,
    passed: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Self {
            attempted: 0,
            passed: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.attempted += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    fn bulk(&mut self, attempted: u64, failures: u64, describe: impl FnOnce() -> String) {
        self.attempted += attempted;
        self.passed += attempted - failures;
        if failures > 0 && self.first_failure.is_none() {
            self.first_failure = Some(describe());
        }
    }

    fn finish(self, command: &'static str, start: Instant) -> VerdictSummary {
        VerdictSummary {
            command,
            attempted: self.attempted,
            passed: self.passed,
            first_failure: self.first_failure,
            wall_time: start.elapsed(),
        }
    }
}

/// Executes one command and renders its report.
pub fn run(config: &RunConfig) -> std::result::Result<Outcome, RunError> {
    let start = Instant::now();
    let mut tally = Tally::new();
    let (name, output) = match &config.command {
        Command::Count { class, i, n, key } => {
            let report = count_report((*class).into(), *i, *n, key)?;
            ("count", report.render(config.format))
        }
        Command::IdentityCheck { max_n, refined } => {
            let report = identity_report(*max_n, *refined, &mut tally)?;
            ("identity-check", report.render(config.format))
        }
        Command::RecurrenceCheck {
            max_r,
            max_s,
            max_n,
        } => {
            let grid = Grid::new(i64::from(*max_r), i64::from(*max_s), i64::from(*max_n));
            let report = recurrence_report(grid, &mut tally)?;
            ("recurrence-check", report.render(config.format))
        }
        Command::BijectionCheck { max_n, n, key } => {
            let output = match (max_n, n, key.r, key.s) {
                (None, Some(n), Some(r), Some(s)) => {
                    let report = key_audits(r, s, *n, &mut tally);
                    report.render(config.format)
                }
                (Some(max_n), None, None, None) => {
                    let report = bijection_report(*max_n, &mut tally);
                    report.render(config.format)
                }
                _ => {
                    return Err(RunError::Usage(
                        "bijection-check takes either --max-n, or all of --n, --r, --s".into(),
                    ))
                }
            };
            ("bijection-check", output)
        }
        Command::Series { i, order, max_n } => {
            let order = order.unwrap_or(max_n + 1);
            let report = SeriesReport::new(*i, order)?;
            ("series", report.render(config.format))
        }
        Command::List { class, i, n, key } => {
            let report = list_report((*class).into(), *i, *n, key)?;
            ("list", report.render(config.format))
        }
    };
    Ok(Outcome {
        summary: tally.finish(name, start),
        output,
    })
}

fn refined_key(class: Class, key: &KeyArgs) -> std::result::Result<Option<(i64, i64, Family)>, RunError> {
    match (key.r, key.s) {
        (None, None) => Ok(None),
        (Some(r), Some(s)) => {
            let family = match class {
                Class::G => Family::G,
                Class::H => Family::H,
                Class::Gprime => {
                    return Err(RunError::Usage(
                        "Gprime has no even/odd refinement; drop --r/--s".into(),
                    ))
                }
            };
            Ok(Some((r, s, family)))
        }
        _ => Err(RunError::Usage("--r and --s must be given together".into())),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Count,
    IdentityCheck,
    RecurrenceCheck,
    BijectionCheck,
    Series,
    List,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub i: FamilyIndex,
    pub r: Option<i64>,
    pub s: Option<i64>,
    pub n: i64,
    pub count: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub command: CommandName,
    pub class: Class,
    pub rows: Vec<CountRow>,
}

fn count_report(
    class: Class,
    i: Option<FamilyIndex>,
    n: i64,
    key: &KeyArgs,
) -> std::result::Result<CountReport, RunError> {
    let refined = refined_key(class, key)?;
    let indices = i.map_or(FamilyIndex::ALL.to_vec(), |i| vec![i]);
    let mut rows = Vec::new();
    for i in indices {
        let row = match refined {
            Some((r, s, family)) => CountRow {
                i,
                r: Some(r),
                s: Some(s),
                n,
                count: crate::classes::count_refined(family, RefinedKey::new(i, r, s, n))?,
            },
            None => CountRow {
                i,
                r: None,
                s: None,
                n,
                count: count_total(class, i, n)?,
            },
        };
        rows.push(row);
    }
    Ok(CountReport {
        command: CommandName::Count,
        class,
        rows,
    })
}

impl CountReport {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => out = json_line(self),
            Format::Csv => {
                out.push_str("class,i,r,s,n,count\n");
                for row in &self.rows {
                    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        self.class,
                        row.i,
                        opt(row.r),
                        opt(row.s),
                        row.n,
                        row.count
                    );
                }
            }
            Format::Table => {
                for row in &self.rows {
                    let _ = match (row.r, row.s) {
                        (Some(r), Some(s)) => writeln!(
                            out,
                            "{}_{}(r={}, s={}, n={}) = {}",
                            self.class, row.i, r, s, row.n, row.count
                        ),
                        _ => writeln!(out, "{}_{}({}) = {}", self.class, row.i, row.n, row.count),
                    };
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinedMismatch {
    pub r: i64,
    pub s: i64,
    pub h: Count,
    pub g: Count,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRow {
    pub n: i64,
    pub i: FamilyIndex,
    pub h: Count,
    pub g: Count,
    pub gprime: Count,
    pub refined_pairs: u64,
    pub refined_mismatches: Vec<RefinedMismatch>,
}

impl IdentityRow {
    pub fn totals_agree(&self) -> bool {
        self.h == self.g && self.g == self.gprime
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub command: CommandName,
    pub max_n: u32,
    pub refined: bool,
    pub rows: Vec<IdentityRow>,
}

pub const IDENTITY_CSV_HEADER: &str = "n,i,H,G,Gprime";

fn identity_report(max_n: u32, refined: bool, tally: &mut Tally) -> Result<IdentityReport> {
    let mut rows = Vec::new();
    for n in 0..=i64::from(max_n) {
        for i in FamilyIndex::ALL {
            let mut row = IdentityRow {
                n,
                i,
                h: count_total(Class::H, i, n)?,
                g: count_total(Class::G, i, n)?,
                gprime: count_total(Class::Gprime, i, n)?,
                refined_pairs: 0,
                refined_mismatches: Vec::new(),
            };
            tally.check(row.totals_agree(), || {
                format!(
                    "n={n} i={i}: H={} G={} Gprime={}",
                    row.h, row.g, row.gprime
                )
            });
            if refined {
                let h = refined_table(Family::H, i, n)?;
                let g = refined_table(Family::G, i, n)?;
                for r in 0..=n {
                    for s in 0..=n {
                        let (hv, gv) = (h.get(r, s), g.get(r, s));
                        row.refined_pairs += 1;
                        tally.check(hv == gv, || {
                            format!("refined (i={i}, r={r}, s={s}, n={n}): H={hv} G={gv}")
                        });
                        if hv != gv {
                            row.refined_mismatches.push(RefinedMismatch { r, s, h: hv, g: gv });
                        }
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(IdentityReport {
        command: CommandName::IdentityCheck,
        max_n,
        refined,
        rows,
    })
}

impl IdentityReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json_line(self),
            Format::Csv => render_identity_csv(&self.rows),
            Format::Table => {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "{:>4} {:>2} {:>10} {:>10} {:>10}  status",
                    "n", "i", "H", "G", "Gprime"
                );
                for row in &self.rows {
                    let status = match (row.totals_agree(), row.refined_mismatches.len()) {
                        (true, 0) if self.refined => format!("ok ({} refined)", row.refined_pairs),
                        (true, 0) => "ok".to_string(),
                        (true, k) => format!("REFINED MISMATCH x{k}"),
                        (false, _) => "MISMATCH".to_string(),
                    };
                    let _ = writeln!(
                        out,
                        "{:>4} {:>2} {:>10} {:>10} {:>10}  {}",
                        row.n, row.i, row.h, row.g, row.gprime, status
                    );
                }
                out
            }
        }
    }
}

/// One line of the identity CSV dump.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityCsvRow {
    pub n: i64,
    pub i: i64,
    pub h: Count,
    pub g: Count,
    pub gprime: Count,
}

pub fn render_identity_csv(rows: &[IdentityRow]) -> String {
    let csv_rows: Vec<IdentityCsvRow> = rows
        .iter()
        .map(|r| IdentityCsvRow {
            n: r.n,
            i: r.i.get(),
            h: r.h,
            g: r.g,
            gprime: r.gprime,
        })
        .collect();
    write_identity_csv(&csv_rows)
}

pub fn write_identity_csv(rows: &[IdentityCsvRow]) -> String {
    let mut out = format!("{IDENTITY_CSV_HEADER}\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.n, r.i, r.h, r.g, r.gprime);
    }
    out
}

pub fn parse_identity_csv(text: &str) -> std::result::Result<Vec<IdentityCsvRow>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(IDENTITY_CSV_HEADER) {
        return Err("missing identity CSV header".into());
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 5 {
                return Err(format!("expected 5 fields in {line:?}"));
            }
            let num = |k: usize| f[k].parse::<i64>().map_err(|e| format!("{line:?}: {e}"));
            let cnt = |k: usize| f[k].parse::<Count>().map_err(|e| format!("{line:?}: {e}"));
            Ok(IdentityCsvRow {
                n: num(0)?,
                i: num(1)?,
                h: cnt(2)?,
                g: cnt(3)?,
                gprime: cnt(4)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub command: CommandName,
    pub grid: Grid,
    pub h_system: SystemReport,
    pub g_system: SystemReport,
    pub uniqueness: bool,
}

fn recurrence_report(grid: Grid, tally: &mut Tally) -> Result<RecurrenceReport> {
    let mut h = BruteForceCounter::new(Family::H);
    let h_system = check_system(|k| h.count(k), grid)?;
    let mut g = BruteForceCounter::new(Family::G);
    let g_system = check_system(|k| g.count(k), grid)?;
    for (label, report) in [("H", &h_system), ("G", &g_system)] {
        tally.bulk(report.equations_checked, report.violations.len() as u64, || {
            let v = &report.violations[0];
            format!(
                "{label} {:?} equation at {}: lhs={} rhs={}",
                v.equation, v.key, v.lhs, v.rhs
            )
        });
    }
    let uniqueness = verify_uniqueness(grid)?;
    tally.check(uniqueness, || format!("bottom-up and top-down disagree on {grid}"));
    Ok(RecurrenceReport {
        command: CommandName::RecurrenceCheck,
        grid,
        h_system,
        g_system,
        uniqueness,
    })
}

impl RecurrenceReport {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => out = json_line(self),
            Format::Csv => {
                out.push_str("check,equations,violations,verdict\n");
                for (label, r) in [("H-system", &self.h_system), ("G-system", &self.g_system)] {
                    let _ = writeln!(
                        out,
                        "{label},{},{},{}",
                        r.equations_checked,
                        r.violations.len(),
                        r.verdict
                    );
                }
                let _ = writeln!(out, "uniqueness,,,{}", self.uniqueness);
            }
            Format::Table => {
                let _ = writeln!(out, "grid {}", self.grid);
                for (label, r) in [("H", &self.h_system), ("G", &self.g_system)] {
                    let _ = writeln!(
                        out,
                        "{label}: {} equations, {} violations -> {}",
                        r.equations_checked,
                        r.violations.len(),
                        if r.verdict { "satisfied" } else { "VIOLATED" }
                    );
                }
                let _ = writeln!(
                    out,
                    "uniqueness (bottom-up = top-down): {}",
                    if self.uniqueness { "yes" } else { "NO" }
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub case: TransformCase,
    pub keys_audited: u64,
    pub bijective: u64,
    pub pairs_mapped: u64,
    pub round_trip_failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSplitSummary {
    pub family: Family,
    pub keys_checked: u64,
    pub failures: Vec<RefinedKey>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub command: CommandName,
    pub max_n: u32,
    pub cases: Vec<CaseSummary>,
    pub case_split: Vec<CaseSplitSummary>,
    pub failed_audits: Vec<TransformAudit>,
}

fn round_trips(case: TransformCase, audit: &TransformAudit) -> (u64, Option<Partition>) {
    let mut failures = 0;
    let mut first = None;
    let (r, s) = (audit.source_key.r, audit.source_key.s);
    for (lambda, mu) in &audit.mapping {
        if backward(case, mu, r, s).ok().as_ref() != Some(lambda) {
            failures += 1;
            first.get_or_insert_with(|| lambda.clone());
        }
    }
    (failures, first)
}

/// Audits every case at every key `0 <= r, s <= n <= max_n`.
fn bijection_report(max_n: u32, tally: &mut Tally) -> BijectionReport {
    let mut auditor = Auditor::new();
    let mut cases = Vec::new();
    let mut failed_audits = Vec::new();
    let keys: Vec<(i64, i64, i64)> = (0..=i64::from(max_n))
        .flat_map(|n| (0..=n).flat_map(move |r| (0..=n).map(move |s| (r, s, n))))
        .collect();

    for case in TransformCase::ALL {
        let mut summary = CaseSummary {
            case,
            keys_audited: 0,
            bijective: 0,
            pairs_mapped: 0,
            round_trip_failures: 0,
        };
        for &(r, s, n) in &keys {
            let audit = auditor.audit(case, r, s, n);
            summary.keys_audited += 1;
            summary.pairs_mapped += audit.mapping.len() as u64;
            let ok = audit.is_bijective();
            tally.check(ok, || {
                format!("{case} at (r={r}, s={s}, n={n}): {:?}", audit.verdict)
            });
            let (trip_failures, first) = round_trips(case, &audit);
            summary.round_trip_failures += trip_failures;
            tally.check(trip_failures == 0, || {
                format!(
                    "{case} round trip at (r={r}, s={s}, n={n}) fails on {}",
                    first.as_ref().map(|p| p.to_string()).unwrap_or_default()
                )
            });
            if ok {
                summary.bijective += 1;
            } else {
                failed_audits.push(audit);
            }
        }
        cases.push(summary);
    }

    let mut case_split = Vec::new();
    for family in [Family::H, Family::G] {
        let mut summary = CaseSplitSummary {
            family,
            keys_checked: 0,
            failures: Vec::new(),
        };
        for &(r, s, n) in &keys {
            summary.keys_checked += 1;
            let ok = auditor.case_split(family, r, s, n).misfits.is_empty();
            tally.check(ok, || format!("{family} case split at (r={r}, s={s}, n={n})"));
            if !ok {
                summary
                    .failures
                    .push(RefinedKey::new(FamilyIndex::One, r, s, n));
            }
        }
        case_split.push(summary);
    }

    BijectionReport {
        command: CommandName::BijectionCheck,
        max_n,
        cases,
        case_split,
        failed_audits,
    }
}

impl BijectionReport {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => out = json_line(self),
            Format::Csv => {
                out.push_str("case,keys,bijective,pairs,round_trip_failures\n");
                for c in &self.cases {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        c.case, c.keys_audited, c.bijective, c.pairs_mapped, c.round_trip_failures
                    );
                }
            }
            Format::Table => {
                let _ = writeln!(out, "all keys 0 <= r, s <= n <= {}", self.max_n);
                for c in &self.cases {
                    let _ = writeln!(
                        out,
                        "{:<12} {}/{} bijective, {} pairs, {} round-trip failures",
                        c.case.to_string(),
                        c.bijective,
                        c.keys_audited,
                        c.pairs_mapped,
                        c.round_trip_failures
                    );
                }
                for c in &self.case_split {
                    let _ = writeln!(
                        out,
                        "{} case split: {}/{} keys partition exactly",
                        c.family,
                        c.keys_checked - c.failures.len() as u64,
                        c.keys_checked
                    );
                }
            }
        }
        out
    }
}

/// Full audits of all six cases at one key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyAuditReport {
    pub command: CommandName,
    pub audits: Vec<TransformAudit>,
}

fn key_audits(r: i64, s: i64, n: i64, tally: &mut Tally) -> KeyAuditReport {
    let mut auditor = Auditor::new();
    let audits: Vec<TransformAudit> = TransformCase::ALL
        .iter()
        .map(|&case| {
            let audit = auditor.audit(case, r, s, n);
            tally.check(audit.is_bijective(), || {
                format!("{case} at (r={r}, s={s}, n={n}): {:?}", audit.verdict)
            });
            audit
        })
        .collect();
    KeyAuditReport {
        command: CommandName::BijectionCheck,
        audits,
    }
}

impl KeyAuditReport {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => out = json_line(self),
            Format::Csv => {
                out.push_str("case,input,output\n");
                for a in &self.audits {
                    for (lambda, mu) in &a.mapping {
                        let _ = writeln!(out, "{},{lambda},{mu}", a.case);
                    }
                }
            }
            Format::Table => {
                for a in &self.audits {
                    let _ = writeln!(
                        out,
                        "{} {} -> {}: {:?}",
                        a.case, a.source_key, a.target_key, a.verdict
                    );
                    for (lambda, mu) in &a.mapping {
                        let _ = writeln!(out, "    {lambda} -> {mu}");
                    }
                    for w in &a.witnesses {
                        let _ = writeln!(out, "    witness {w}");
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub command: CommandName,
    pub i: FamilyIndex,
    pub order: usize,
    pub coefficients: Vec<Count>,
}

pub const SERIES_CSV_HEADER: &str = "n,coefficient";

impl SeriesReport {
    pub fn new(i: FamilyIndex, order: usize) -> Result<Self> {
        let series = gprime_series(i, order)?;
        Ok(Self {
            command: CommandName::Series,
            i,
            order,
            coefficients: series.coefficients().to_vec(),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json_line(self),
            Format::Csv => write_series_csv(&self.coefficients),
            Format::Table => {
                let mut out = String::new();
                for (n, c) in self.coefficients.iter().enumerate() {
                    let _ = writeln!(out, "{n:>5} {c}");
                }
                out
            }
        }
    }
}

pub fn write_series_csv(coefficients: &[Count]) -> String {
    let mut out = format!("{SERIES_CSV_HEADER}\n");
    for (n, c) in coefficients.iter().enumerate() {
        let _ = writeln!(out, "{n},{c}");
    }
    out
}

pub fn parse_series_csv(text: &str) -> std::result::Result<Vec<Count>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(SERIES_CSV_HEADER) {
        return Err("missing series CSV header".into());
    }
    lines
        .enumerate()
        .map(|(k, line)| {
            let (n, c) = line
                .split_once(',')
                .ok_or_else(|| format!("expected n,coefficient in {line:?}"))?;
            if n.parse::<usize>().map_err(|e| e.to_string())? != k {
                return Err(format!("row {k} is labelled {n}"));
            }
            c.parse::<Count>().map_err(|e| e.to_string())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListReport {
    pub command: CommandName,
    pub class: Class,
    pub i: FamilyIndex,
    pub n: i64,
    pub r: Option<i64>,
    pub s: Option<i64>,
    pub count: u64,
    pub partitions: Vec<Partition>,
}

fn list_report(
    class: Class,
    i: FamilyIndex,
    n: i64,
    key: &KeyArgs,
) -> std::result::Result<ListReport, RunError> {
    let partitions = match refined_key(class, key)? {
        Some((r, s, family)) => members_refined(family, RefinedKey::new(i, r, s, n)),
        None => members(class, i, n),
    };
    Ok(ListReport {
        command: CommandName::List,
        class,
        i,
        n,
        r: key.r,
        s: key.s,
        count: partitions.len() as u64,
        partitions,
    })
}

impl ListReport {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Json => out = json_line(self),
            Format::Csv => {
                out.push_str("partition\n");
                for p in &self.partitions {
                    let _ = writeln!(out, "{p}");
                }
            }
            Format::Table => {
                for p in &self.partitions {
                    let _ = writeln!(out, "{p}");
                }
            }
        }
        out
    }
}
