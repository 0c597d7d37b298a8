//! Counterexample traces: a path from the initial state, an optional
//! separator marking where the no-escape region starts, and an optional
//! cycle.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::explorer::{StateIndex, StateSpace};
use crate::kernel::{fire_checked, Model, StateVector, TransitionId};

pub const SEPARATOR_LINE: &str = "==========";
pub const CYCLE_LINE: &str = "----------";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// Transition that led here; `None` for the initial state.
    pub via: Option<TransitionId>,
    pub state: StateVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub steps: Vec<TraceStep>,
    /// Index of the first step below the separator line.
    pub separator: Option<usize>,
    /// When set, the last step repeats `steps[cycle_start]`.
    pub cycle_start: Option<usize>,
    /// Index of the step the error is about; equals its BFS depth.
    pub focus: usize,
    pub message: String,
}

impl Counterexample {
    /// Steps above the separator (all steps when there is none).
    pub fn prefix(&self) -> &[TraceStep] {
        &self.steps[..self.separator.unwrap_or(self.steps.len())]
    }

    pub fn continuation(&self) -> &[TraceStep] {
        &self.steps[self.separator.unwrap_or(self.steps.len())..]
    }

    pub fn is_lasso(&self) -> bool {
        self.cycle_start.is_some()
    }

    pub fn witness_depth(&self) -> usize {
        self.focus
    }

    pub fn transitions(&self) -> impl Iterator<Item = TransitionId> + '_ {
        self.steps.iter().filter_map(|s| s.via)
    }

    /// Re-fire every transition from the initial state and compare.
    pub fn replay<M: Model + ?Sized>(&self, model: &M) -> Result<()> {
        let breach = |msg: String| Err(Error::Internal(format!("counterexample does not replay: {msg}")));
        let Some(first) = self.steps.first() else {
            return breach("no steps".into());
        };
        if first.via.is_some() || first.state != model.initial_state() {
            return breach("does not start at the initial state".into());
        }
        for (i, pair) in self.steps.windows(2).enumerate() {
            let Some(t) = pair[1].via else {
                return breach(format!("step {} has no transition", i + 1));
            };
            match fire_checked(model, &pair[0].state, t)? {
                Some(next) if next == pair[1].state => {}
                Some(_) => return breach(format!("step {} reaches a different state", i + 1)),
                None => return breach(format!("transition {t} is disabled at step {i}")),
            }
        }
        if let Some(c) = self.cycle_start {
            let last = self.steps.len() - 1;
            if c >= last || self.steps[c].state != self.steps[last].state {
                return breach("cycle does not close".into());
            }
        }
        Ok(())
    }

    /// The listing: one state per line, separator and cycle markers, then
    /// the error line. The closing repeat of a cycle is not printed.
    pub fn render<M: Model + ?Sized>(&self, model: &M) -> String {
        let shown = match self.cycle_start {
            Some(_) => self.steps.len() - 1,
            None => self.steps.len(),
        };
        let mut out = String::new();
        for (i, step) in self.steps[..shown].iter().enumerate() {
            if self.separator == Some(i) {
                out.push_str(SEPARATOR_LINE);
                out.push('\n');
            }
            if self.cycle_start == Some(i) {
                out.push_str(CYCLE_LINE);
                out.push('\n');
            }
            out.push_str(&model.format_state(&step.state));
            out.push('\n');
        }
        if self.separator == Some(shown) {
            out.push_str(SEPARATOR_LINE);
            out.push('\n');
        }
        out.push_str("!!! ");
        out.push_str(&self.message);
        out.push('\n');
        out
    }
}

/// Render after checking the trace replays.
pub fn print_counterexample<M: Model + ?Sized>(ce: &Counterexample, model: &M) -> Result<String> {
    ce.replay(model)?;
    Ok(ce.render(model))
}

pub(crate) fn steps_from(space: &StateSpace, path: &[(StateIndex, Option<TransitionId>)]) -> Vec<TraceStep> {
    path.iter()
        .map(|&(i, via)| TraceStep {
            via,
            state: space.state(i),
        })
        .collect()
}

/// Walk from `start` along the lowest-numbered outgoing edge until a state
/// repeats or a state without out-edges is reached. Returns the visited
/// states (the first has no transition) and, for a cycle, the position the
/// last state repeats.
pub(crate) fn lowest_walk(
    space: &StateSpace,
    start: StateIndex,
) -> (Vec<(StateIndex, Option<TransitionId>)>, Option<usize>) {
    let mut walk = vec![(start, None)];
    let mut seen = HashMap::from([(start, 0usize)]);
    let mut cur = start;
    loop {
        let Some(edge) = space.successors(cur).iter().min_by_key(|e| e.t) else {
            return (walk, None);
        };
        walk.push((edge.dst, Some(edge.t)));
        if let Some(&pos) = seen.get(&edge.dst) {
            return (walk, Some(pos));
        }
        seen.insert(edge.dst, walk.len() - 1);
        cur = edge.dst;
    }
}

/// Shortest path to `witness`, a separator in front of it, then a walk
/// inside the region the witness belongs to.
pub(crate) fn no_escape_counterexample(
    space: &StateSpace,
    witness: StateIndex,
    message: &str,
) -> Result<Counterexample> {
    let mut path = space.trace_to(witness)?;
    let separator = path.len() - 1;
    let (walk, cycle) = lowest_walk(space, witness);
    path.extend(walk.into_iter().skip(1));
    Ok(Counterexample {
        steps: steps_from(space, &path),
        separator: Some(separator),
        cycle_start: cycle.map(|c| separator + c),
        focus: separator,
        message: message.to_string(),
    })
}

/// Shortest path to `target`, nothing more.
pub(crate) fn path_counterexample(space: &StateSpace, target: StateIndex, message: &str) -> Result<Counterexample> {
    let path = space.trace_to(target)?;
    Ok(Counterexample {
        focus: path.len() - 1,
        steps: steps_from(space, &path),
        separator: None,
        cycle_start: None,
        message: message.to_string(),
    })
}
