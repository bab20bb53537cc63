//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a requested verification or search did
//! not come back complete (budget-limited exactness, no witness, an
//! inconsistent bound sweep), 2 on invalid input. Search effort is a node
//! budget taken from `--budget`, then the `ZSLAB_BUDGET` environment
//! variable, then [`DEFAULT_BUDGET`].

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::apfree::{r_exact, PointSet};
use crate::bounds::{
    bounds_report, verify_paper, BoundEntry, BoundReport, BoundSOracle, Family,
};
use crate::egz::{solve_general, SolveOutcome};
use crate::extractor::{extract_apfree, ExtractionMode};
use crate::group::{parse_group, GroupElement};
use crate::zerosum::{g_exact, s_exact, GSequence, SearchResult};
use crate::{Error, Result};

/// Node budget used when neither `--budget` nor `ZSLAB_BUDGET` is given.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "ZSLAB_BUDGET";

#[derive(Parser)]
#[command(
    name = "zslab",
    version,
    about = "Zero-sum constants over finite abelian groups: exact searches, \
             constructive witnesses, progression-free extractions, and a \
             cross-checked bound engine."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Search node budget (overrides ZSLAB_BUDGET and the default).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for randomized modes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// s(G): least length forcing a zero-sum subsequence of length exp(G).
    Sconst {
        /// Group literal, e.g. Z6, F3^2, Z9xZ3.
        group: String,
        /// Exhaustive search (the default).
        #[arg(long, conflicts_with = "bounds")]
        exact: bool,
        /// Print the bound table instead of searching.
        #[arg(long)]
        bounds: bool,
    },
    /// g(G): the distinct-elements analogue of s(G).
    Gconst {
        group: String,
        #[arg(long, conflicts_with = "bounds")]
        exact: bool,
        #[arg(long)]
        bounds: bool,
    },
    /// r(F_p^n): largest progression-free subset size, with a witness.
    Rvalue { p: u64, n: u32 },
    /// Zero-sum witnesses in explicit sequences.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Hyperplane extraction dichotomy on a point set.
    Extract {
        /// Group literal; must be F_p^n with p odd and n ≥ 2.
        group: String,
        /// JSON file: array of coordinate arrays, no duplicates.
        setfile: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Hyperplane draws in randomized mode (default 10p).
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Bound rows for the given groups as TSV or JSON.
    Report {
        /// Group literals; rows come out sorted by literal.
        #[arg(required = true)]
        groups: Vec<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
        format: FormatArg,
    },
    /// Sweep a family of groups and cross-check every bound row.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
        /// Largest order for --family all.
        #[arg(long, default_value_t = 36)]
        max_order: u64,
        /// Largest k for --family homocyclic.
        #[arg(long, default_value_t = 6)]
        kmax: u64,
        /// Largest n for --family homocyclic.
        #[arg(long, default_value_t = 2)]
        nmax: u32,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Solve one sequence read from a JSON file of coordinate arrays.
    Find {
        group: String,
        seqfile: PathBuf,
        /// Also print the reduction trace.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Randomized,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    All,
    Homocyclic,
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    dispatch(cli)
}

/// Same as [`run`] on explicit arguments (first one the program name).
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli),
        Err(e) => {
            eprint!("{e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => 1,
                _ => 2,
            }
        }
    }
}

fn resolve_budget(flag: Option<u64>) -> Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("{BUDGET_ENV} must be a node count, got {v:?}"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_BUDGET),
        Err(e) => Err(Error::InvalidInput(format!("cannot read {BUDGET_ENV}: {e}"))),
    }
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn read_elements(path: &Path) -> Result<Vec<GroupElement>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let coords: Vec<Vec<u64>> = serde_json::from_str(&text).map_err(|e| {
        Error::InvalidInput(format!(
            "{} must be a JSON array of coordinate arrays: {e}",
            path.display()
        ))
    })?;
    Ok(coords.into_iter().map(GroupElement::new).collect())
}

fn element_coords(items: &[GroupElement]) -> Vec<Vec<u64>> {
    items.iter().map(|m| m.coords.clone()).collect()
}

/// A search result line: the plain value when exhaustive, `>= value`
/// otherwise. The bool says whether the result is complete.
fn search_line(result: &SearchResult) -> (String, bool) {
    if result.exhaustive() {
        (format!("{}\n", result.value), true)
    } else {
        (format!(">= {}\n", result.value), false)
    }
}

fn format_value(entry: &BoundEntry) -> String {
    match entry.integer {
        Some(v) => v.to_string(),
        None => {
            let s = format!("{:.6}", entry.value);
            let s = s.trim_end_matches('0').trim_end_matches('.');
            s.to_string()
        }
    }
}

fn tsv_rows(report: &BoundReport, out: &mut String) {
    let group = report.group.literal();
    for e in &report.entries {
        out.push_str(&format!(
            "{group}\t{}\t{}\t{}\t{}\t{}\n",
            e.quantity,
            e.kind,
            format_value(e),
            e.source,
            e.exhaustive
        ));
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let budget = resolve_budget(cli.budget)?;
    match &cli.command {
        Command::Sconst { group, bounds, .. } => {
            let group = parse_group(group)?;
            if *bounds {
                let report = bounds_report(&group, budget)?;
                let mut out = String::new();
                tsv_rows(&report, &mut out);
                emit(&cli.output, &out)?;
                return Ok(if report.consistent { 0 } else { 1 });
            }
            let result = s_exact(&group, budget)?;
            let (line, complete) = search_line(&result);
            emit(&cli.output, &line)?;
            if !complete {
                eprintln!("note: node budget {budget} exhausted; rerun with a larger --budget");
            }
            Ok(if complete { 0 } else { 1 })
        }
        Command::Gconst { group, bounds, .. } => {
            let group = parse_group(group)?;
            if *bounds {
                let report = bounds_report(&group, budget)?;
                let mut out = String::new();
                tsv_rows(&report, &mut out);
                emit(&cli.output, &out)?;
                return Ok(if report.consistent { 0 } else { 1 });
            }
            let result = g_exact(&group, budget)?;
            let (line, complete) = search_line(&result);
            emit(&cli.output, &line)?;
            if !complete {
                eprintln!("note: node budget {budget} exhausted; rerun with a larger --budget");
            }
            Ok(if complete { 0 } else { 1 })
        }
        Command::Rvalue { p, n } => {
            let result = r_exact(*p, *n, budget)?;
            let value_line = if result.exhaustive {
                format!("{}\n", result.value)
            } else {
                format!(">= {}\n", result.value)
            };
            let witness = serde_json::to_string(&element_coords(result.witness.members()))
                .expect("coordinate arrays always serialize");
            emit(&cli.output, &format!("{value_line}{witness}\n"))?;
            if !result.exhaustive {
                eprintln!("note: node budget {budget} exhausted; rerun with a larger --budget");
            }
            Ok(if result.exhaustive { 0 } else { 1 })
        }
        Command::Witness(WitnessCommand::Find { group, seqfile, trace }) => {
            let group = parse_group(group)?;
            let items = read_elements(seqfile)?;
            let seq = GSequence::new(group, items)?;
            let mut oracle = BoundSOracle::new(budget);
            match solve_general(&seq, &mut oracle)? {
                SolveOutcome::Solved { witness, trace: reduction } => {
                    if !witness.verify_with_length(&seq, seq.group().exponent() as usize) {
                        return Err(Error::Internal("produced witness failed verification".into()));
                    }
                    let mut out = serde_json::to_string(&witness).expect("witnesses serialize");
                    out.push('\n');
                    if *trace {
                        out.push_str(&serde_json::to_string(&reduction).expect("traces serialize"));
                        out.push('\n');
                    }
                    emit(&cli.output, &out)?;
                    Ok(0)
                }
                SolveOutcome::NoWitness { certificate } => {
                    let mut out =
                        serde_json::to_string(&certificate).expect("certificates serialize");
                    out.push('\n');
                    emit(&cli.output, &out)?;
                    eprintln!("no witness exists; the sequence is itself an extremal certificate");
                    Ok(1)
                }
            }
        }
        Command::Extract { group, setfile, mode, samples } => {
            let group = parse_group(group)?;
            let members = read_elements(setfile)?;
            let set = PointSet::new(group.clone(), members)?;
            let mode = match mode {
                ModeArg::Exhaustive => ExtractionMode::Exhaustive,
                ModeArg::Randomized => {
                    let p = group
                        .elementary_form()
                        .map(|(p, _)| p)
                        .ok_or_else(|| {
                            Error::InvalidInput(format!("{group} is not of the form F_p^n"))
                        })?;
                    ExtractionMode::Randomized {
                        samples: samples.unwrap_or(10 * p as usize),
                        seed: cli.seed,
                    }
                }
            };
            let outcome = extract_apfree(&set, mode)?;
            let mut out = serde_json::to_string(&outcome).expect("outcomes serialize");
            out.push('\n');
            emit(&cli.output, &out)?;
            Ok(0)
        }
        Command::Report { groups, format } => {
            let mut literals: Vec<String> = Vec::new();
            for text in groups {
                literals.push(parse_group(text)?.literal());
            }
            literals.sort();
            literals.dedup();
            let mut reports = Vec::new();
            for literal in &literals {
                reports.push(bounds_report(&parse_group(literal)?, budget)?);
            }
            let consistent = reports.iter().all(|r| r.consistent);
            let out = match format {
                FormatArg::Tsv => {
                    let mut out = String::new();
                    for report in &reports {
                        tsv_rows(report, &mut out);
                    }
                    out
                }
                FormatArg::Json => {
                    let mut out = serde_json::to_string_pretty(&reports)
                        .expect("reports serialize");
                    out.push('\n');
                    out
                }
            };
            emit(&cli.output, &out)?;
            Ok(if consistent { 0 } else { 1 })
        }
        Command::VerifyPaper { family, max_order, kmax, nmax } => {
            let family = match family {
                FamilyArg::All => Family::AllUpTo { max_order: *max_order },
                FamilyArg::Homocyclic => Family::Homocyclic { kmax: *kmax, nmax: *nmax },
            };
            let summary = verify_paper(family, budget)?;
            let mut out = String::new();
            for check in &summary.checks {
                out.push_str(&format!(
                    "{}\t{}\n",
                    check.report.group.literal(),
                    if check.ok { "ok" } else { "FAIL" }
                ));
            }
            let failures = summary.checks.iter().filter(|c| !c.ok).count();
            if summary.ok {
                out.push_str(&format!("verified {} groups\n", summary.checks.len()));
            } else {
                out.push_str(&format!(
                    "inconsistencies in {failures} of {} groups\n",
                    summary.checks.len()
                ));
            }
            emit(&cli.output, &out)?;
            Ok(if summary.ok { 0 } else { 1 })
        }
    }
}
