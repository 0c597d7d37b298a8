//! Breadth-first construction of full and stubborn-set-reduced state spaces.

use std::fmt;
use std::hash::BuildHasher;

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::kernel::{self, fire_checked, Model, StateVector, TransitionId};
use crate::stubborn;

/// Position of a state in discovery order. The initial state is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateIndex(pub u32);

impl StateIndex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for StateIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// One successful firing `src --t--> dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: StateIndex,
    pub t: TransitionId,
    pub dst: StateIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Full,
    Reduced,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Reduced => "stubborn",
        })
    }
}

/// Interned states stored back to back in one buffer.
struct StateStore {
    bytes: Vec<u8>,
    stride: usize,
    count: usize,
    table: HashTable<u32>,
    hasher: FxBuildHasher,
}

impl StateStore {
    fn new(stride: usize) -> Self {
        StateStore {
            bytes: Vec::new(),
            stride,
            count: 0,
            table: HashTable::new(),
            hasher: FxBuildHasher,
        }
    }

    fn get(&self, i: usize) -> &[u8] {
        &self.bytes[i * self.stride..(i + 1) * self.stride]
    }

    fn find(&self, key: &[u8]) -> Option<StateIndex> {
        let hash = self.hasher.hash_one(key);
        self.table
            .find(hash, |&i| self.get(i as usize) == key)
            .map(|&i| StateIndex(i))
    }

    /// Returns the index of `key` and whether it was newly inserted.
    fn intern(&mut self, key: &[u8]) -> (StateIndex, bool) {
        debug_assert_eq!(key.len(), self.stride);
        let hash = self.hasher.hash_one(key);
        let (bytes, stride, hasher) = (&self.bytes, self.stride, &self.hasher);
        let found = self
            .table
            .find(hash, |&i| &bytes[i as usize * stride..(i as usize + 1) * stride] == key);
        if let Some(&i) = found {
            return (StateIndex(i), false);
        }
        let index = self.count as u32;
        self.table.insert_unique(hash, index, |&i| {
            hasher.hash_one(&bytes[i as usize * stride..(i as usize + 1) * stride])
        });
        self.bytes.extend_from_slice(key);
        self.count += 1;
        (StateIndex(index), true)
    }
}

/// The result of exploration: interned states, edges and BFS parents.
///
/// States are expanded in index order, so the out-edges of a state are a
/// contiguous run of [`StateSpace::edges`].
pub struct StateSpace {
    mode: Mode,
    width: u32,
    store: StateStore,
    edges: Vec<Edge>,
    first_edge: Vec<usize>,
    parent: Vec<Option<(StateIndex, TransitionId)>>,
    depth: Vec<u32>,
    complete: bool,
}

impl fmt::Debug for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateSpace")
            .field("mode", &self.mode)
            .field("states", &self.len())
            .field("edges", &self.edges.len())
            .field("complete", &self.complete)
            .finish()
    }
}

impl StateSpace {
    fn new(mode: Mode, width: u32, stride: usize) -> Self {
        StateSpace {
            mode,
            width,
            store: StateStore::new(stride),
            edges: Vec::new(),
            first_edge: vec![0],
            parent: Vec::new(),
            depth: Vec::new(),
            complete: false,
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Number of states.
    pub fn len(&self) -> usize {
        self.store.count
    }

    pub fn is_empty(&self) -> bool {
        self.store.count == 0
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// False when exploration was cut short by a safety error or the state limit.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn indices(&self) -> impl Iterator<Item = StateIndex> {
        (0..self.len() as u32).map(StateIndex)
    }

    pub fn state(&self, i: StateIndex) -> StateVector {
        kernel::decode_state(self.store.get(i.index()), self.width)
    }

    pub fn encoded(&self, i: StateIndex) -> &[u8] {
        self.store.get(i.index())
    }

    pub fn index_of(&self, s: &StateVector) -> Option<StateIndex> {
        if s.len() * kernel::bytes_per_value(self.width) != self.store.stride {
            return None;
        }
        self.store.find(&kernel::encode_state(s, self.width))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_expanded(&self, i: StateIndex) -> bool {
        i.index() + 1 < self.first_edge.len()
    }

    /// Out-edges of `i`, in firing order. Empty for unexpanded states.
    pub fn successors(&self, i: StateIndex) -> &[Edge] {
        if !self.is_expanded(i) {
            return &[];
        }
        &self.edges[self.first_edge[i.index()]..self.first_edge[i.index() + 1]]
    }

    /// An expanded state with no outgoing edge in this space.
    pub fn is_terminal(&self, i: StateIndex) -> bool {
        self.is_expanded(i) && self.successors(i).is_empty()
    }

    pub fn parent(&self, i: StateIndex) -> Option<(StateIndex, TransitionId)> {
        self.parent[i.index()]
    }

    /// BFS depth: length of the shortest path from the initial state.
    pub fn depth(&self, i: StateIndex) -> usize {
        self.depth[i.index()] as usize
    }

    pub fn trace_to(&self, target: StateIndex) -> Result<Vec<(StateIndex, Option<TransitionId>)>> {
        trace_to(self, target)
    }

    fn intern(&mut self, key: &[u8], parent: Option<(StateIndex, TransitionId)>) -> (StateIndex, bool) {
        let (index, fresh) = self.store.intern(key);
        if fresh {
            let depth = parent.map_or(0, |(p, _)| self.depth[p.index()] + 1);
            self.parent.push(parent);
            self.depth.push(depth);
        }
        (index, fresh)
    }

    fn close_state(&mut self) {
        self.first_edge.push(self.edges.len());
    }
}

#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub state: StateIndex,
    pub message: String,
}

#[derive(Debug)]
pub enum ExplorationOutcome {
    Completed(StateSpace),
    /// The safety check fired; the space holds everything found up to that point.
    ErrorFound(StateSpace, ErrorReport),
}

impl ExplorationOutcome {
    pub fn space(&self) -> &StateSpace {
        match self {
            ExplorationOutcome::Completed(space) | ExplorationOutcome::ErrorFound(space, _) => space,
        }
    }

    pub fn into_space(self) -> StateSpace {
        match self {
            ExplorationOutcome::Completed(space) | ExplorationOutcome::ErrorFound(space, _) => space,
        }
    }

    pub fn error(&self) -> Option<&ErrorReport> {
        match self {
            ExplorationOutcome::Completed(_) => None,
            ExplorationOutcome::ErrorFound(_, report) => Some(report),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExploreOptions {
    pub mode: Mode,
    /// Stop at the first state the model's safety check rejects.
    pub on_the_fly_safety: bool,
    pub state_limit: Option<usize>,
}

impl ExploreOptions {
    pub fn full() -> Self {
        ExploreOptions {
            mode: Mode::Full,
            on_the_fly_safety: false,
            state_limit: None,
        }
    }

    pub fn reduced() -> Self {
        ExploreOptions {
            mode: Mode::Reduced,
            ..Self::full()
        }
    }

    pub fn with_safety(mut self, on: bool) -> Self {
        self.on_the_fly_safety = on;
        self
    }

    pub fn with_limit(mut self, limit: Option<usize>) -> Self {
        self.state_limit = limit;
        self
    }
}

/// Breadth-first exploration from the initial state.
///
/// At every state all transitions are tried; enabled ones (or, in reduced
/// mode, the enabled members of the stubborn set) are fired in descending
/// transition order. The safety check runs on each state when it is first
/// found, and the search stops there if it reports a violation.
pub fn explore<M: Model + ?Sized>(model: &M, opts: ExploreOptions) -> Result<ExplorationOutcome> {
    if opts.mode == Mode::Reduced && !model.has_stubborn_rules() {
        return Err(Error::usage("reduced exploration needs a model with stubborn rules"));
    }
    let width = model.width();
    let initial = model.initial_state();
    if !initial.fits(width) {
        return Err(Error::usage(format!(
            "initial state does not fit in {width}-bit variables"
        )));
    }
    let safety = opts.on_the_fly_safety && model.has_safety_check();
    let stride = initial.len() * kernel::bytes_per_value(width);
    let mut space = StateSpace::new(opts.mode, width, stride);
    let mut key = Vec::with_capacity(stride);

    kernel::encode_into(&initial, width, &mut key);
    space.intern(&key, None);
    if safety {
        if let Some(message) = model.check_state(&initial) {
            return Ok(ExplorationOutcome::ErrorFound(
                space,
                ErrorReport {
                    state: StateIndex(0),
                    message,
                },
            ));
        }
    }

    let count = model.transition_count();
    let mut successors: Vec<Option<StateVector>> = Vec::with_capacity(count);
    let mut enabled = vec![false; count];
    let mut next = 0usize;
    while next < space.len() {
        let src = StateIndex(next as u32);
        let s = space.state(src);
        successors.clear();
        for (t, on) in enabled.iter_mut().enumerate() {
            let succ = fire_checked(model, &s, TransitionId::from(t))?;
            *on = succ.is_some();
            successors.push(succ);
        }
        let fired: Vec<TransitionId> = match opts.mode {
            Mode::Full => (0..count)
                .rev()
                .filter(|&t| enabled[t])
                .map(TransitionId::from)
                .collect(),
            Mode::Reduced => {
                let set = stubborn::stubborn_set_with(model, &s, &enabled)?;
                let mut ts = set.enabled_members().to_vec();
                ts.reverse();
                ts
            }
        };
        for t in fired {
            let succ = successors[t.index()].as_ref().expect("fired transition is enabled");
            key.clear();
            kernel::encode_into(succ, width, &mut key);
            let (dst, fresh) = space.intern(&key, Some((src, t)));
            space.edges.push(Edge { src, t, dst });
            if !fresh {
                continue;
            }
            if let Some(limit) = opts.state_limit {
                if space.len() > limit {
                    space.close_state();
                    return Err(Error::StateLimit {
                        limit,
                        partial: Box::new(space),
                    });
                }
            }
            if safety {
                if let Some(message) = model.check_state(succ) {
                    space.close_state();
                    return Ok(ExplorationOutcome::ErrorFound(
                        space,
                        ErrorReport { state: dst, message },
                    ));
                }
            }
        }
        space.close_state();
        next += 1;
    }
    space.complete = true;
    Ok(ExplorationOutcome::Completed(space))
}

/// The BFS-parent path from the initial state to `target`.
///
/// Each element is a state with the transition that entered it; the first
/// element has none.
pub fn trace_to(space: &StateSpace, target: StateIndex) -> Result<Vec<(StateIndex, Option<TransitionId>)>> {
    if target.index() >= space.len() {
        return Err(Error::usage(format!(
            "state {target} was not discovered ({} states)",
            space.len()
        )));
    }
    let mut path = Vec::with_capacity(space.depth(target) + 1);
    let mut cur = target;
    loop {
        match space.parent(cur) {
            Some((p, t)) => {
                path.push((cur, Some(t)));
                cur = p;
            }
            None => {
                path.push((cur, None));
                break;
            }
        }
    }
    path.reverse();
    Ok(path)
}

/// States with no outgoing edge in `space`, in index order.
pub fn terminal_states(space: &StateSpace) -> Vec<StateIndex> {
    space.indices().filter(|&i| space.is_terminal(i)).collect()
}
