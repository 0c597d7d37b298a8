//! Graph searches over a completed [`StateSpace`].

use std::collections::VecDeque;

use crate::explorer::{Edge, StateIndex, StateSpace};

/// Predecessor lists in compressed form.
pub struct ReverseGraph {
    start: Vec<usize>,
    preds: Vec<StateIndex>,
}

impl ReverseGraph {
    pub fn build(space: &StateSpace) -> Self {
        let n = space.len();
        let mut start = vec![0usize; n + 1];
        for e in space.edges() {
            start[e.dst.index() + 1] += 1;
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut preds = vec![StateIndex(0); space.edge_count()];
        for e in space.edges() {
            preds[fill[e.dst.index()]] = e.src;
            fill[e.dst.index()] += 1;
        }
        ReverseGraph { start, preds }
    }

    pub fn predecessors(&self, i: StateIndex) -> &[StateIndex] {
        &self.preds[self.start[i.index()]..self.start[i.index() + 1]]
    }
}

/// Marks every state from which some source state is reachable.
pub fn backward_reach(space: &StateSpace, is_source: impl Fn(StateIndex) -> bool) -> Vec<bool> {
    let reverse = ReverseGraph::build(space);
    let mut reached = vec![false; space.len()];
    let mut queue = VecDeque::new();
    for i in space.indices() {
        if is_source(i) {
            reached[i.index()] = true;
            queue.push_back(i);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &p in reverse.predecessors(v) {
            if !reached[p.index()] {
                reached[p.index()] = true;
                queue.push_back(p);
            }
        }
    }
    reached
}

/// The state with the smallest (depth, index) among those selected.
pub fn shallowest(space: &StateSpace, select: impl Fn(StateIndex) -> bool) -> Option<StateIndex> {
    space
        .indices()
        .filter(|&i| select(i))
        .min_by_key(|&i| (space.depth(i), i))
}

pub const NO_COMPONENT: u32 = u32::MAX;

/// Strong components of the subgraph made of the kept nodes and edges.
///
/// Returns a component id per state (`NO_COMPONENT` for dropped nodes).
/// Iterative Tarjan, so deep graphs do not overflow the call stack.
pub fn strong_components(
    space: &StateSpace,
    keep_node: impl Fn(StateIndex) -> bool,
    keep_edge: impl Fn(&Edge) -> bool,
) -> Vec<u32> {
    let n = space.len();
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut component = vec![NO_COMPONENT; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut frames: Vec<(u32, usize)> = Vec::new();
    let mut counter = 0u32;
    let mut next_component = 0u32;

    for root in space.indices() {
        if index[root.index()] != UNSEEN || !keep_node(root) {
            continue;
        }
        index[root.index()] = counter;
        low[root.index()] = counter;
        counter += 1;
        stack.push(root.0);
        on_stack[root.index()] = true;
        frames.push((root.0, 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0 as usize;
            let succ = space.successors(StateIndex(frame.0));
            if let Some(e) = succ.get(frame.1) {
                frame.1 += 1;
                let w = e.dst.index();
                if !keep_edge(e) || !keep_node(e.dst) {
                    continue;
                }
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    frames.push((w as u32, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(p, _)) = frames.last() {
                low[p as usize] = low[p as usize].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("root on stack") as usize;
                    on_stack[w] = false;
                    component[w] = next_component;
                    if w == v {
                        break;
                    }
                }
                next_component += 1;
            }
        }
    }
    component
}

/// Shortest edge path from `from` to `to` using only allowed edges.
/// A path from a state to itself has at least one edge.
pub fn shortest_path(
    space: &StateSpace,
    from: StateIndex,
    to: StateIndex,
    allow: impl Fn(&Edge) -> bool,
) -> Option<Vec<Edge>> {
    let mut via: Vec<Option<Edge>> = vec![None; space.len()];
    let mut seen = vec![false; space.len()];
    let mut queue = VecDeque::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        for e in space.successors(v).iter().filter(|e| allow(e)) {
            if e.dst == to {
                let mut path = vec![*e];
                let mut cur = v;
                while cur != from {
                    let back = via[cur.index()].expect("BFS tree edge");
                    path.push(back);
                    cur = back.src;
                }
                path.reverse();
                return Some(path);
            }
            if !seen[e.dst.index()] && e.dst != from {
                seen[e.dst.index()] = true;
                via[e.dst.index()] = Some(*e);
                queue.push_back(e.dst);
            }
        }
    }
    None
}
