//! Brute-force checks of the stubborn set conditions and of the agreement
//! between full and reduced state spaces. Desk-scale models only.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::analyses::agef::check_agef;
use crate::analyses::progress::{check_may_progress, check_may_progress_via_terminals};
use crate::error::{Error, Result};
use crate::explorer::{explore, ExploreOptions, Mode, StateIndex, StateSpace};
use crate::kernel::{fire_checked, Model, StateVector, TransitionId};
use crate::stubborn::compute_stubborn;

pub const DEFAULT_ORACLE_BOUND: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    D1,
    D2,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::D1 => "D1",
            Condition::D2 => "D2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D1D2Violation {
    pub state: StateIndex,
    pub transition: TransitionId,
    pub condition: Condition,
    /// Transitions outside the stubborn set, fired from `state`, exposing the violation.
    pub sequence: Vec<TransitionId>,
}

impl fmt::Display for D1D2Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq: Vec<String> = self.sequence.iter().map(|t| t.to_string()).collect();
        write!(
            f,
            "{} fails at state {} for transition {} after [{}]",
            self.condition,
            self.state,
            self.transition,
            seq.join(" ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum D1D2Report {
    Checked {
        states: usize,
        violations: Vec<D1D2Violation>,
    },
    /// The space is larger than the bound; nothing was checked.
    Refused { states: usize, bound: usize },
}

impl D1D2Report {
    pub fn violations(&self) -> &[D1D2Violation] {
        match self {
            D1D2Report::Checked { violations, .. } => violations,
            D1D2Report::Refused { .. } => &[],
        }
    }

    pub fn is_clean(&self) -> bool {
        matches!(self, D1D2Report::Checked { violations, .. } if violations.is_empty())
    }
}

/// For every r-state `s` with stubborn set `M`, explore everything reachable
/// from `s` by transitions outside `M` in the full relation, and check:
///
/// * D2: each `t` in `M` enabled at `s` stays enabled throughout;
/// * D1: each such `t` commutes with every outside edge `x --u--> x'`, i.e.
///   firing `t` then `u` from `x` lands where `u` then `t` does; a disabled
///   `t` in `M` never becomes enabled.
///
/// The commutation check on single edges, applied along every outside path,
/// gives D1 for whole sequences because transitions are deterministic.
pub fn verify_d1_d2<M: Model + ?Sized>(model: &M, space: &StateSpace, bound: usize) -> Result<D1D2Report> {
    if space.mode() != Mode::Reduced {
        return Err(Error::usage("D1/D2 verification needs a reduced space"));
    }
    if space.len() > bound {
        return Ok(D1D2Report::Refused {
            states: space.len(),
            bound,
        });
    }
    let count = model.transition_count();
    let mut violations = Vec::new();
    for i in space.indices().filter(|&i| space.is_expanded(i)) {
        let s = space.state(i);
        let set = compute_stubborn(model, &s)?;
        if set.is_empty() {
            continue;
        }
        let inside: Vec<TransitionId> = set.members().collect();
        let outside: Vec<TransitionId> = (0..count)
            .map(TransitionId::from)
            .filter(|&t| !set.contains(t))
            .collect();
        let enabled_at_s: Vec<bool> = inside
            .iter()
            .map(|&t| fire_checked(model, &s, t).map(|r| r.is_some()))
            .collect::<Result<_>>()?;

        let region = OutsideRegion::explore(model, &s, &outside)?;
        let mut reported: BTreeSet<(TransitionId, u8)> = BTreeSet::new();
        let mut report = |t: TransitionId, condition: Condition, at: usize, extra: Option<TransitionId>| {
            if reported.insert((t, condition as u8)) {
                let mut sequence = region.sequence_to(at);
                sequence.extend(extra);
                violations.push(D1D2Violation {
                    state: i,
                    transition: t,
                    condition,
                    sequence,
                });
            }
        };
        for (x_pos, x) in region.states.iter().enumerate() {
            for (k, &t) in inside.iter().enumerate() {
                let x_t = fire_checked(model, x, t)?;
                if !enabled_at_s[k] {
                    if x_t.is_some() {
                        report(t, Condition::D1, x_pos, None);
                    }
                    continue;
                }
                let Some(x_t) = x_t else {
                    report(t, Condition::D2, x_pos, None);
                    continue;
                };
                for &(u, next_pos) in &region.out_edges[x_pos] {
                    let next_t = fire_checked(model, &region.states[next_pos], t)?;
                    let t_then_u = fire_checked(model, &x_t, u)?;
                    if next_t.is_none() {
                        // reported as D2 when `next_pos` is visited
                        continue;
                    }
                    if t_then_u != next_t {
                        report(t, Condition::D1, x_pos, Some(u));
                    }
                }
            }
        }
    }
    Ok(D1D2Report::Checked {
        states: space.len(),
        violations,
    })
}

/// Everything reachable from one state using a fixed set of transitions.
struct OutsideRegion {
    states: Vec<StateVector>,
    parent: Vec<Option<(usize, TransitionId)>>,
    out_edges: Vec<Vec<(TransitionId, usize)>>,
}

impl OutsideRegion {
    fn explore<M: Model + ?Sized>(model: &M, start: &StateVector, allowed: &[TransitionId]) -> Result<Self> {
        let mut region = OutsideRegion {
            states: vec![start.clone()],
            parent: vec![None],
            out_edges: vec![Vec::new()],
        };
        let mut index: HashMap<StateVector, usize> = HashMap::from([(start.clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(pos) = queue.pop_front() {
            for &u in allowed {
                let Some(next) = fire_checked(model, &region.states[pos], u)? else {
                    continue;
                };
                let next_pos = match index.get(&next) {
                    Some(&p) => p,
                    None => {
                        let p = region.states.len();
                        index.insert(next.clone(), p);
                        region.states.push(next);
                        region.parent.push(Some((pos, u)));
                        region.out_edges.push(Vec::new());
                        queue.push_back(p);
                        p
                    }
                };
                region.out_edges[pos].push((u, next_pos));
            }
        }
        Ok(region)
    }

    fn sequence_to(&self, mut pos: usize) -> Vec<TransitionId> {
        let mut seq = Vec::new();
        while let Some((p, t)) = self.parent[pos] {
            seq.push(t);
            pos = p;
        }
        seq.reverse();
        seq
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub full: (usize, usize),
    pub reduced: (usize, usize),
    pub terminals_equal: bool,
    pub agef: (bool, bool),
    /// Violation found (full, reduced); `None` when the model has no safety check.
    pub safety: Option<(bool, bool)>,
    /// Holds (full general check, reduced via terminals); `None` when the
    /// model has no progress predicate or is not AG EF terminating.
    pub may_progress: Option<(bool, bool)>,
    pub discrepancies: Vec<String>,
}

impl CompareReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn terminal_vectors(space: &StateSpace) -> BTreeSet<StateVector> {
    space
        .indices()
        .filter(|&i| space.is_terminal(i))
        .map(|i| space.state(i))
        .collect()
}

fn has_violation<M: Model + ?Sized>(space: &StateSpace, model: &M) -> bool {
    space.indices().any(|i| model.check_state(&space.state(i)).is_some())
}

/// Build both spaces to completion and compare the verdicts that stubborn
/// sets must preserve: terminal states, AG EF termination, safety and (for
/// AG EF terminating models) may progress.
pub fn compare_full_reduced<M: Model + ?Sized>(model: &M, state_limit: Option<usize>) -> Result<CompareReport> {
    let full = explore(model, ExploreOptions::full().with_limit(state_limit))?.into_space();
    let reduced = explore(model, ExploreOptions::reduced().with_limit(state_limit))?.into_space();
    let mut discrepancies = Vec::new();

    let full_terminals = terminal_vectors(&full);
    let reduced_terminals = terminal_vectors(&reduced);
    let terminals_equal = full_terminals == reduced_terminals;
    if !terminals_equal {
        discrepancies.push(format!(
            "terminal states differ: {} in full, {} in reduced",
            full_terminals.len(),
            reduced_terminals.len()
        ));
    }
    for i in reduced.indices().filter(|&i| reduced.is_terminal(i)) {
        let s = reduced.state(i);
        if (0..model.transition_count()).any(|t| model.fire(&s, TransitionId::from(t)).is_some()) {
            discrepancies.push(format!("reduced state {i} has no r-edge but is not terminal"));
        }
    }

    let agef = (check_agef(&full)?.holds, check_agef(&reduced)?.holds);
    if agef.0 != agef.1 {
        discrepancies.push(format!("AG EF verdicts differ: full {}, reduced {}", agef.0, agef.1));
    }

    let safety = model
        .has_safety_check()
        .then(|| (has_violation(&full, model), has_violation(&reduced, model)));
    if let Some((f, r)) = safety {
        if f != r {
            discrepancies.push(format!(
                "safety verdicts differ: full violation {f}, reduced violation {r}"
            ));
        }
    }

    let may_progress = if model.has_progress_predicate() && agef.0 && agef.1 {
        let f = check_may_progress(&full, model)?.holds;
        let r = check_may_progress_via_terminals(&reduced, model)?.holds;
        if f != r {
            discrepancies.push(format!("may-progress verdicts differ: full {f}, reduced {r}"));
        }
        Some((f, r))
    } else {
        None
    };

    Ok(CompareReport {
        full: (full.len(), full.edge_count()),
        reduced: (reduced.len(), reduced.edge_count()),
        terminals_equal,
        agef,
        safety,
        may_progress,
        discrepancies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::build_fixture;

    #[test]
    fn commuting_diamond_is_clean() {
        let m = build_fixture("diamond").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::reduced()).unwrap().into_space();
        assert!(verify_d1_d2(m.as_ref(), &space, 100).unwrap().is_clean());
    }

    #[test]
    fn refuses_above_bound() {
        let m = build_fixture("diamond").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::reduced()).unwrap().into_space();
        let report = verify_d1_d2(m.as_ref(), &space, 1).unwrap();
        assert_eq!(report, D1D2Report::Refused { states: 3, bound: 1 });
        assert!(!report.is_clean());
    }

    #[test]
    fn needs_reduced_space() {
        let m = build_fixture("diamond").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::full()).unwrap().into_space();
        assert!(verify_d1_d2(m.as_ref(), &space, 100).is_err());
    }

    #[test]
    fn zero_transitions_compare_trivially() {
        let m = build_fixture("empty").unwrap();
        let report = compare_full_reduced(m.as_ref(), None).unwrap();
        assert!(report.is_clean());
        assert_eq!(report.full, (1, 0));
        assert_eq!(report.reduced, (1, 0));
    }
}
