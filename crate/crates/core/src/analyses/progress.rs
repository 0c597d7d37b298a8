//! May and must progress.

use crate::analyses::counterexample::{no_escape_counterexample, steps_from, Counterexample};
use crate::analyses::graph::{backward_reach, shallowest, shortest_path, strong_components, NO_COMPONENT};
use crate::analyses::require_complete;
use crate::error::{Error, Result};
use crate::explorer::{Mode, StateIndex, StateSpace};
use crate::kernel::Model;

pub const MAY_MESSAGE: &str = "May-type non-progress error";
pub const MUST_MESSAGE: &str = "Must-type non-progress error";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressVerdict {
    pub holds: bool,
    pub witness: Option<Counterexample>,
}

impl ProgressVerdict {
    fn pass() -> Self {
        ProgressVerdict {
            holds: true,
            witness: None,
        }
    }

    fn fail(ce: Counterexample) -> Self {
        ProgressVerdict {
            holds: false,
            witness: Some(ce),
        }
    }
}

fn progress_mask<M: Model + ?Sized>(space: &StateSpace, model: &M) -> Result<Vec<bool>> {
    if !model.has_progress_predicate() {
        return Err(Error::usage("model has no progress predicate"));
    }
    Ok(space.indices().map(|i| model.is_progress(&space.state(i))).collect())
}

/// From every state some progress state is reachable.
///
/// Backward search from the progress states; the shallowest unreached state
/// is the witness. Exact on a full space.
pub fn check_may_progress<M: Model + ?Sized>(space: &StateSpace, model: &M) -> Result<ProgressVerdict> {
    require_complete(space)?;
    let progress = progress_mask(space, model)?;
    let reached = backward_reach(space, |i| progress[i.index()]);
    match shallowest(space, |i| !reached[i.index()]) {
        None => Ok(ProgressVerdict::pass()),
        Some(w) => Ok(ProgressVerdict::fail(no_escape_counterexample(space, w, MAY_MESSAGE)?)),
    }
}

/// May progress through terminal states only: fails iff some terminal state
/// is not a progress state.
///
/// Equivalent to [`check_may_progress`] on AG EF terminating models, and
/// then also valid on a reduced space. Pair it with `check_agef`.
pub fn check_may_progress_via_terminals<M: Model + ?Sized>(space: &StateSpace, model: &M) -> Result<ProgressVerdict> {
    require_complete(space)?;
    let progress = progress_mask(space, model)?;
    match shallowest(space, |i| space.is_terminal(i) && !progress[i.index()]) {
        None => Ok(ProgressVerdict::pass()),
        Some(w) => Ok(ProgressVerdict::fail(no_escape_counterexample(space, w, MAY_MESSAGE)?)),
    }
}

/// Every path reaches a progress state: fails on a reachable cycle of
/// non-progress states or a terminal non-progress state. Full spaces only.
pub fn check_must_progress<M: Model + ?Sized>(space: &StateSpace, model: &M) -> Result<ProgressVerdict> {
    if space.mode() == Mode::Reduced {
        return Err(Error::usage(
            "must progress is not preserved by stubborn sets; use a full space",
        ));
    }
    require_complete(space)?;
    let progress = progress_mask(space, model)?;
    let idle = |i: StateIndex| !progress[i.index()];
    let comp = strong_components(space, idle, |_| true);
    let mut size = vec![0usize; space.len()];
    for &c in comp.iter().filter(|&&c| c != NO_COMPONENT) {
        size[c as usize] += 1;
    }
    let on_cycle = |i: StateIndex| {
        let c = comp[i.index()];
        c != NO_COMPONENT && (size[c as usize] > 1 || space.successors(i).iter().any(|e| e.dst == i))
    };
    let bad = shallowest(space, |i| idle(i) && (space.is_terminal(i) || on_cycle(i)));
    let Some(bad) = bad else {
        return Ok(ProgressVerdict::pass());
    };
    let mut path = space.trace_to(bad)?;
    let focus = path.len() - 1;
    let mut cycle_start = None;
    if !space.is_terminal(bad) {
        let c = comp[bad.index()];
        let cycle = shortest_path(space, bad, bad, |e| comp[e.dst.index()] == c)
            .ok_or_else(|| Error::Internal("component without a cycle".into()))?;
        path.extend(cycle.iter().map(|e| (e.dst, Some(e.t))));
        cycle_start = Some(focus);
    }
    Ok(ProgressVerdict::fail(Counterexample {
        steps: steps_from(space, &path),
        separator: None,
        cycle_start,
        focus,
        message: MUST_MESSAGE.to_string(),
    }))
}
