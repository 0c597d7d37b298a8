//! Command-line driver: explore, run the checks in a fixed order, print
//! counterexamples as state listings and a closing summary.

use std::fmt;
use std::io::{self, Write};

use clap::{Parser, ValueEnum};

use crate::analyses::counterexample::path_counterexample;
use crate::analyses::oracle::DEFAULT_ORACLE_BOUND;
use crate::analyses::{
    agef_counterexample, check_agef, check_infinite_occurrence, check_may_progress, check_may_progress_via_terminals,
    check_must_progress, compare_full_reduced, verify_d1_d2, Counterexample, D1D2Report, InfiniteOccurrenceQuery,
};
use crate::error::{Error, Result};
use crate::explorer::{explore, ExplorationOutcome, ExploreOptions, Mode, StateSpace};
use crate::kernel::{Model, TransitionId};
use crate::models::build_model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum)]
pub enum Check {
    Safety,
    MayProgress,
    MustProgress,
    Agef,
    D1d2,
    Compare,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Safety => "safety",
            Check::MayProgress => "may-progress",
            Check::MustProgress => "must-progress",
            Check::Agef => "agef",
            Check::D1d2 => "d1d2",
            Check::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Full,
    Stubborn,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Stubborn => Mode::Reduced,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Structured,
}

/// Command-line flags.
#[derive(Debug, Parser)]
#[command(
    name = "stubborn",
    version,
    about = "Explicit-state model checker with stubborn sets"
)]
pub struct Args {
    /// `peterson` or a fixture: empty, diamond, broken-rules, lasso
    #[arg(long, default_value = "peterson")]
    pub model: String,
    /// Peterson variant: plain, non-progress-revealing, correct, mutex-violating
    #[arg(long)]
    pub variant: Option<String>,
    /// Number of Peterson customers
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    pub mode: ModeArg,
    /// Repeatable. Default: safety, may-progress and agef, as supported by the model
    #[arg(long = "check", value_enum)]
    pub checks: Vec<Check>,
    /// Transition that must occur infinitely often in the searched execution
    #[arg(long)]
    pub t_omega: Option<u32>,
    /// Transitions that may occur only finitely often (comma separated)
    #[arg(long, value_delimiter = ',')]
    pub t_star: Vec<u32>,
    /// Give up after this many states
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Do not print counterexample listings
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub model: String,
    pub variant: Option<String>,
    pub n: Option<usize>,
    pub mode: Mode,
    /// Empty means the defaults for the model.
    pub checks: Vec<Check>,
    pub query: Option<InfiniteOccurrenceQuery>,
    pub format: OutputFormat,
    pub state_limit: Option<usize>,
    pub quiet: bool,
}

impl RunConfig {
    pub fn peterson(variant: &str, n: usize, mode: Mode) -> Self {
        RunConfig {
            model: "peterson".into(),
            variant: Some(variant.into()),
            n: Some(n),
            mode,
            checks: Vec::new(),
            query: None,
            format: OutputFormat::Text,
            state_limit: None,
            quiet: false,
        }
    }

    pub fn with_checks(mut self, checks: &[Check]) -> Self {
        self.checks = checks.to_vec();
        self
    }
}

impl TryFrom<Args> for RunConfig {
    type Error = Error;

    fn try_from(args: Args) -> Result<Self> {
        let query = match (args.t_omega, args.t_star.is_empty()) {
            (Some(t), _) => Some(InfiniteOccurrenceQuery {
                t_omega: TransitionId(t),
                t_star: args.t_star.into_iter().map(TransitionId).collect(),
            }),
            (None, false) => return Err(Error::usage("--t-star needs --t-omega")),
            (None, true) => None,
        };
        Ok(RunConfig {
            model: args.model,
            variant: args.variant,
            n: args.n,
            mode: args.mode.into(),
            checks: args.checks,
            query,
            format: args.format,
            state_limit: args.limit,
            quiet: args.quiet,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Passed,
    Violation,
    Failure,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Passed => 0,
            ExitStatus::Violation => 1,
            ExitStatus::Failure => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        })
    }
}

/// What a run found, independent of how it is printed.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub mode: Mode,
    pub states: usize,
    pub edges: usize,
    pub complete: bool,
    pub verdicts: Vec<(String, Verdict)>,
    pub witness: Option<(String, Counterexample)>,
    /// Extra report lines (oracle results).
    pub notes: Vec<String>,
    pub status: ExitStatus,
}

impl RunReport {
    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.verdicts.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

fn resolve_checks(config: &RunConfig, model: &dyn Model) -> Result<Vec<Check>> {
    let mut checks = config.checks.clone();
    if checks.is_empty() {
        if model.has_safety_check() {
            checks.push(Check::Safety);
        }
        if model.has_progress_predicate() {
            checks.push(Check::MayProgress);
        }
        checks.push(Check::Agef);
    }
    for &c in &checks {
        let supported = match c {
            Check::Safety => model.has_safety_check(),
            Check::MayProgress | Check::MustProgress => model.has_progress_predicate(),
            Check::D1d2 | Check::Compare => model.has_stubborn_rules(),
            Check::Agef => true,
        };
        if !supported {
            return Err(Error::usage(format!("model does not support the {} check", c.name())));
        }
    }
    match config.mode {
        Mode::Full if checks.contains(&Check::D1d2) => {
            return Err(Error::usage("the d1d2 check needs --mode stubborn"));
        }
        Mode::Reduced if checks.contains(&Check::MustProgress) => {
            return Err(Error::usage(
                "must-progress needs --mode full; stubborn sets do not preserve it",
            ));
        }
        _ => {}
    }
    // Reduced verdicts are only trustworthy on AG EF terminating models, so
    // the termination check always closes a reduced run.
    if config.mode == Mode::Reduced
        && !checks.contains(&Check::Agef)
        && (config.query.is_some() || checks.iter().any(|c| matches!(c, Check::Safety | Check::MayProgress)))
    {
        checks.push(Check::Agef);
    }
    checks.sort();
    checks.dedup();
    Ok(checks)
}

/// Explore and check. Errors are usage or model errors.
pub fn evaluate(config: &RunConfig) -> Result<RunReport> {
    let model = build_model(&config.model, config.variant.as_deref(), config.n)?;
    let model = model.as_ref();
    let checks = resolve_checks(config, model)?;
    if let Some(q) = &config.query {
        let count = model.transition_count();
        if let Some(bad) = std::iter::once(&q.t_omega)
            .chain(&q.t_star)
            .find(|t| t.index() >= count)
        {
            return Err(Error::usage(format!(
                "transition {bad} out of range (model has {count})"
            )));
        }
    }

    let opts = ExploreOptions {
        mode: config.mode,
        on_the_fly_safety: checks.contains(&Check::Safety),
        state_limit: config.state_limit,
    };
    let outcome = explore(model, opts)?;
    let space = outcome.space();
    let mut report = RunReport {
        mode: config.mode,
        states: space.len(),
        edges: space.edge_count(),
        complete: space.is_complete(),
        verdicts: Vec::new(),
        witness: None,
        notes: Vec::new(),
        status: ExitStatus::Passed,
    };

    let space = match outcome {
        ExplorationOutcome::ErrorFound(space, error) => {
            let ce = path_counterexample(&space, error.state, &error.message)?;
            ce.replay(model)?;
            report.verdicts.push((Check::Safety.name().into(), Verdict::Fail));
            report.witness = Some((Check::Safety.name().into(), ce));
            report.status = ExitStatus::Violation;
            return Ok(report);
        }
        ExplorationOutcome::Completed(space) => space,
    };

    let mut failed = false;
    for &check in &checks {
        if failed {
            report.verdicts.push((check.name().into(), Verdict::Skipped));
            continue;
        }
        let (verdict, witness) = run_check(check, config, model, &space, &mut report.notes)?;
        if let (Check::Agef, Some(q), Verdict::Pass) = (check, &config.query, verdict) {
            report.verdicts.push((check.name().into(), verdict));
            let (v, w) = run_query(q, &space)?;
            failed = v == Verdict::Fail;
            report.verdicts.push(("infinite-occurrence".into(), v));
            if let Some(ce) = w {
                report.witness = Some(("infinite-occurrence".into(), ce));
            }
            continue;
        }
        failed = verdict == Verdict::Fail;
        report.verdicts.push((check.name().into(), verdict));
        if let Some(ce) = witness {
            report.witness = Some((check.name().into(), ce));
        }
    }
    if let Some(q) = config
        .query
        .as_ref()
        .filter(|_| !checks.contains(&Check::Agef) && !failed)
    {
        let (v, w) = run_query(q, &space)?;
        failed = v == Verdict::Fail;
        report.verdicts.push(("infinite-occurrence".into(), v));
        if let Some(ce) = w {
            report.witness = Some(("infinite-occurrence".into(), ce));
        }
    }
    if let Some((_, ce)) = &report.witness {
        ce.replay(model)?;
    }
    if failed {
        report.status = ExitStatus::Violation;
    }
    Ok(report)
}

fn run_query(q: &InfiniteOccurrenceQuery, space: &StateSpace) -> Result<(Verdict, Option<Counterexample>)> {
    let (found, ce) = check_infinite_occurrence(space, q)?;
    Ok((if found { Verdict::Fail } else { Verdict::Pass }, ce))
}

fn run_check(
    check: Check,
    config: &RunConfig,
    model: &dyn Model,
    space: &StateSpace,
    notes: &mut Vec<String>,
) -> Result<(Verdict, Option<Counterexample>)> {
    let from_bool = |holds: bool| if holds { Verdict::Pass } else { Verdict::Fail };
    match check {
        // violations abort the exploration before we get here
        Check::Safety => Ok((Verdict::Pass, None)),
        Check::MayProgress => {
            let v = match space.mode() {
                Mode::Full => check_may_progress(space, model)?,
                Mode::Reduced => check_may_progress_via_terminals(space, model)?,
            };
            Ok((from_bool(v.holds), v.witness))
        }
        Check::MustProgress => {
            let v = check_must_progress(space, model)?;
            Ok((from_bool(v.holds), v.witness))
        }
        Check::Agef => {
            let v = check_agef(space)?;
            Ok((from_bool(v.holds), agef_counterexample(space, &v)?))
        }
        Check::D1d2 => match verify_d1_d2(model, space, DEFAULT_ORACLE_BOUND)? {
            D1D2Report::Refused { states, bound } => {
                notes.push(format!("d1d2: refused, {states} states exceed the bound of {bound}"));
                Ok((Verdict::Skipped, None))
            }
            D1D2Report::Checked { states, violations } => {
                notes.push(format!(
                    "d1d2: {states} states checked, {} violations",
                    violations.len()
                ));
                notes.extend(violations.iter().map(|v| format!("d1d2: {v}")));
                Ok((from_bool(violations.is_empty()), None))
            }
        },
        Check::Compare => {
            let r = compare_full_reduced(model, config.state_limit)?;
            notes.push(format!(
                "compare: full {} states {} arcs, stubborn {} states {} arcs",
                r.full.0, r.full.1, r.reduced.0, r.reduced.1
            ));
            notes.extend(r.discrepancies.iter().map(|d| format!("compare: {d}")));
            Ok((from_bool(r.is_clean()), None))
        }
    }
}

/// Print a report in the requested format.
pub fn write_report(config: &RunConfig, report: &RunReport, out: &mut dyn Write) -> io::Result<()> {
    let model = build_model(&config.model, config.variant.as_deref(), config.n).ok();
    match config.format {
        OutputFormat::Text => {
            if let (Some((_, ce)), false, Some(model)) = (&report.witness, config.quiet, &model) {
                out.write_all(ce.render(model.as_ref()).as_bytes())?;
            } else if let Some((_, ce)) = &report.witness {
                writeln!(out, "!!! {}", ce.message)?;
            }
            for note in &report.notes {
                writeln!(out, "{note}")?;
            }
            writeln!(out, "{} states, {} arcs", report.states, report.edges)?;
        }
        OutputFormat::Structured => {
            writeln!(out, "model={}", config.model)?;
            if let Some(v) = &config.variant {
                writeln!(out, "variant={v}")?;
            }
            if let Some(n) = config.n {
                writeln!(out, "n={n}")?;
            }
            writeln!(out, "mode={}", report.mode)?;
            writeln!(out, "states={}", report.states)?;
            writeln!(out, "edges={}", report.edges)?;
            writeln!(out, "complete={}", report.complete)?;
            for (name, verdict) in &report.verdicts {
                writeln!(out, "check.{name}={verdict}")?;
            }
            if let Some((name, ce)) = &report.witness {
                writeln!(out, "witness.check={name}")?;
                writeln!(out, "witness.message={}", ce.message)?;
                writeln!(out, "witness.depth={}", ce.witness_depth())?;
                writeln!(out, "witness.length={}", ce.steps.len() - 1)?;
                writeln!(out, "witness.lasso={}", ce.is_lasso())?;
            }
            for note in &report.notes {
                writeln!(out, "note={note}")?;
            }
            let result = match report.status {
                ExitStatus::Passed => "pass",
                ExitStatus::Violation => "violation",
                ExitStatus::Failure => "error",
            };
            writeln!(out, "result={result}")?;
        }
    }
    Ok(())
}

/// Run end to end. Diagnostics go to `diag`, everything else to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write, diag: &mut dyn Write) -> ExitStatus {
    match evaluate(config) {
        Ok(report) => {
            if let Err(e) = write_report(config, &report, out) {
                let _ = writeln!(diag, "error: {e}");
                return ExitStatus::Failure;
            }
            report.status
        }
        Err(Error::StateLimit { limit, partial }) => {
            let _ = writeln!(diag, "error: state limit of {limit} states exceeded");
            let _ = writeln!(out, "{} states, {} arcs", partial.len(), partial.edge_count());
            ExitStatus::Failure
        }
        Err(e) => {
            let _ = writeln!(diag, "error: {e}");
            ExitStatus::Failure
        }
    }
}
