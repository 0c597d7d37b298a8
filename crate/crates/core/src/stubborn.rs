//! Stubborn sets satisfying D0, D1 and D2.
//!
//! The model supplies rules "if `t` is in the set, these transitions must be
//! too". At a fixed state the rules form a dependency graph over transitions.
//! Any set closed under that graph and containing an enabled transition is
//! stubborn (given valid rules). Starting from a seed transition, a Tarjan
//! search visits the graph; strong components complete in reverse
//! topological order, and the first completed component that contains an
//! enabled transition, together with everything reachable from it, is the
//! result. Everything reachable from that component has already completed,
//! and none of those earlier components held an enabled transition, so the
//! enabled part of the result is as small as the seed allows.

use crate::error::{Error, Result};
use crate::kernel::{fire_checked, Model, RuleOutcome, StateVector, TransitionId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StubbornSet {
    members: Vec<bool>,
    seed: Option<TransitionId>,
    enabled: Vec<TransitionId>,
}

impl StubbornSet {
    fn empty(count: usize) -> Self {
        StubbornSet {
            members: vec![false; count],
            seed: None,
            enabled: Vec::new(),
        }
    }

    pub fn contains(&self, t: TransitionId) -> bool {
        self.members.get(t.index()).copied().unwrap_or(false)
    }

    /// Members in ascending order.
    pub fn members(&self) -> impl Iterator<Item = TransitionId> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(t, _)| TransitionId::from(t))
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The enabled transition the search started from; `None` at terminal states.
    pub fn seed(&self) -> Option<TransitionId> {
        self.seed
    }

    /// Members enabled at the state the set was computed for, ascending.
    pub fn enabled_members(&self) -> &[TransitionId] {
        &self.enabled
    }

    /// Build a set from explicit members. Used by oracles that check
    /// hand-made sets.
    pub fn from_members(count: usize, members: impl IntoIterator<Item = TransitionId>, enabled: &[bool]) -> Self {
        let mut set = StubbornSet::empty(count);
        for t in members {
            set.members[t.index()] = true;
        }
        set.enabled = (0..count)
            .filter(|&t| set.members[t] && enabled[t])
            .map(TransitionId::from)
            .collect();
        set.seed = set.enabled.first().copied();
        set
    }
}

/// Rule successors of each transition at one state, evaluated on demand.
pub struct DependencyGraph<'a, M: Model + ?Sized> {
    model: &'a M,
    state: &'a StateVector,
    cache: Vec<Option<Vec<usize>>>,
}

impl<'a, M: Model + ?Sized> DependencyGraph<'a, M> {
    pub fn new(model: &'a M, state: &'a StateVector) -> Self {
        DependencyGraph {
            model,
            state,
            cache: vec![None; model.transition_count()],
        }
    }

    /// Transitions that must join the set when `t` is in it, ascending.
    pub fn successors(&mut self, t: usize) -> Result<&[usize]> {
        if self.cache[t].is_none() {
            let count = self.cache.len();
            let deps = match self.model.stubborn_rule(self.state, TransitionId::from(t)) {
                RuleOutcome::All => (0..count).collect(),
                RuleOutcome::Deps(ts) => {
                    let mut out = Vec::with_capacity(ts.len());
                    for d in ts {
                        if d.index() >= count {
                            return Err(Error::RuleOutOfRange {
                                from: TransitionId::from(t),
                                to: d,
                                count,
                            });
                        }
                        out.push(d.index());
                    }
                    out.sort_unstable();
                    out.dedup();
                    out
                }
            };
            self.cache[t] = Some(deps);
        }
        Ok(self.cache[t].as_deref().unwrap())
    }

    /// All transitions reachable from `roots`; every node must already be cached.
    fn closure(&self, roots: &[usize]) -> Vec<bool> {
        let count = self.cache.len();
        let mut seen = vec![false; count];
        let mut work = Vec::new();
        let mut size = 0;
        for &r in roots {
            if !seen[r] {
                seen[r] = true;
                size += 1;
                work.push(r);
            }
        }
        while let Some(v) = work.pop() {
            if size == count {
                break;
            }
            for &w in self.cache[v].as_deref().unwrap_or(&[]) {
                if !seen[w] {
                    seen[w] = true;
                    size += 1;
                    work.push(w);
                }
            }
        }
        seen
    }
}

/// Stubborn set of `model` at `s`, seeded by the lowest enabled transition.
pub fn compute_stubborn<M: Model + ?Sized>(model: &M, s: &StateVector) -> Result<StubbornSet> {
    let enabled = enabled_mask(model, s)?;
    stubborn_set_with(model, s, &enabled)
}

pub(crate) fn enabled_mask<M: Model + ?Sized>(model: &M, s: &StateVector) -> Result<Vec<bool>> {
    (0..model.transition_count())
        .map(|t| fire_checked(model, s, TransitionId::from(t)).map(|r| r.is_some()))
        .collect()
}

/// As [`compute_stubborn`], with enabledness already known.
pub fn stubborn_set_with<M: Model + ?Sized>(model: &M, s: &StateVector, enabled: &[bool]) -> Result<StubbornSet> {
    let count = model.transition_count();
    if !model.has_stubborn_rules() {
        return Err(Error::usage("model has no stubborn rules"));
    }
    let Some(seed) = enabled.iter().position(|&e| e) else {
        return Ok(StubbornSet::empty(count));
    };
    let mut graph = DependencyGraph::new(model, s);
    let component = first_enabled_component(&mut graph, seed, enabled)?;
    let members = graph.closure(&component);
    let enabled_members = (0..count)
        .filter(|&t| members[t] && enabled[t])
        .map(TransitionId::from)
        .collect();
    Ok(StubbornSet {
        members,
        seed: Some(TransitionId::from(seed)),
        enabled: enabled_members,
    })
}

const UNVISITED: u32 = u32::MAX;

/// Iterative Tarjan search from `seed`, stopping at the first completed
/// strong component that holds an enabled transition.
fn first_enabled_component<M: Model + ?Sized>(
    graph: &mut DependencyGraph<'_, M>,
    seed: usize,
    enabled: &[bool],
) -> Result<Vec<usize>> {
    let count = enabled.len();
    let mut index = vec![UNVISITED; count];
    let mut low = vec![0u32; count];
    let mut on_stack = vec![false; count];
    let mut stack = Vec::new();
    // (node, position in its successor list)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0u32;

    index[seed] = counter;
    low[seed] = counter;
    counter += 1;
    stack.push(seed);
    on_stack[seed] = true;
    frames.push((seed, 0));

    while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
        let succs = graph.successors(v)?;
        if let Some(&w) = succs.get(*pos) {
            *pos += 1;
            if index[w] == UNVISITED {
                index[w] = counter;
                low[w] = counter;
                counter += 1;
                stack.push(w);
                on_stack[w] = true;
                frames.push((w, 0));
            } else if on_stack[w] {
                low[v] = low[v].min(index[w]);
            }
            continue;
        }
        frames.pop();
        if let Some(&(parent, _)) = frames.last() {
            low[parent] = low[parent].min(low[v]);
        }
        if low[v] != index[v] {
            continue;
        }
        let mut component = Vec::new();
        loop {
            let w = stack.pop().expect("component root is on the stack");
            on_stack[w] = false;
            component.push(w);
            if w == v {
                break;
            }
        }
        if component.iter().any(|&w| enabled[w]) {
            return Ok(component);
        }
    }
    Err(Error::Internal("seed component held no enabled transition".into()))
}

/// Members of `set` enabled at `s`, ascending.
pub fn enabled_in<M: Model + ?Sized>(model: &M, s: &StateVector, set: &StubbornSet) -> Result<Vec<TransitionId>> {
    let mut out = Vec::new();
    for t in set.members() {
        if fire_checked(model, s, t)?.is_some() {
            out.push(t);
        }
    }
    Ok(out)
}
