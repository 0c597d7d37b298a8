//! Naive reference implementations used as oracles by the integration tests.
//! Nothing here shares code with the library beyond `Model::fire`.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use stubborn_core::models::{build_peterson, Peterson, PetersonKind, PetersonVariant};
use stubborn_core::{Model, StateVector, TransitionId};

pub fn peterson(kind: PetersonKind, n: usize) -> Peterson {
    build_peterson(PetersonVariant::new(kind, n)).unwrap()
}

/// Plain BFS over `fire`, every enabled transition, no interning tricks.
pub struct Naive {
    pub states: Vec<Vec<u32>>,
    pub index: HashMap<Vec<u32>, usize>,
    pub edges: Vec<(usize, usize, usize)>,
    pub depth: Vec<usize>,
}

impl Naive {
    pub fn explore<M: Model + ?Sized>(model: &M) -> Naive {
        let init = model.initial_state().values().to_vec();
        let mut naive = Naive {
            states: vec![init.clone()],
            index: HashMap::from([(init, 0)]),
            edges: Vec::new(),
            depth: vec![0],
        };
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let s = StateVector::new(naive.states[i].clone());
            for t in 0..model.transition_count() {
                let Some(next) = model.fire(&s, TransitionId::from(t)) else {
                    continue;
                };
                let key = next.values().to_vec();
                let j = match naive.index.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = naive.states.len();
                        naive.index.insert(key.clone(), j);
                        naive.states.push(key);
                        naive.depth.push(naive.depth[i] + 1);
                        queue.push_back(j);
                        j
                    }
                };
                naive.edges.push((i, t, j));
            }
        }
        naive
    }

    pub fn terminals(&self) -> HashSet<Vec<u32>> {
        let mut has_out = vec![false; self.states.len()];
        for &(s, _, _) in &self.edges {
            has_out[s] = true;
        }
        (0..self.states.len())
            .filter(|&i| !has_out[i])
            .map(|i| self.states[i].clone())
            .collect()
    }

    /// States from which some state satisfying `goal` is reachable, by
    /// repeated forward sweeps until nothing changes.
    pub fn can_reach(&self, goal: impl Fn(usize) -> bool) -> Vec<bool> {
        let mut ok: Vec<bool> = (0..self.states.len()).map(goal).collect();
        loop {
            let mut changed = false;
            for &(s, _, d) in &self.edges {
                if ok[d] && !ok[s] {
                    ok[s] = true;
                    changed = true;
                }
            }
            if !changed {
                return ok;
            }
        }
    }

    pub fn agef(&self) -> bool {
        let terminals = self.terminals();
        self.can_reach(|i| terminals.contains(&self.states[i]))
            .iter()
            .all(|&b| b)
    }

    pub fn may_progress<M: Model + ?Sized>(&self, model: &M) -> bool {
        self.can_reach(|i| model.is_progress(&StateVector::new(self.states[i].clone())))
            .iter()
            .all(|&b| b)
    }

    pub fn any_violation<M: Model + ?Sized>(&self, model: &M) -> bool {
        self.states
            .iter()
            .any(|s| model.check_state(&StateVector::new(s.clone())).is_some())
    }
}

/// Does `model` have a path from the initial state that fires exactly the
/// multiset `counts` of transitions and ends in `target`, using only edges
/// accepted by `step`?
pub fn has_permutation_path<M: Model + ?Sized>(
    model: &M,
    step: impl Fn(&StateVector, TransitionId) -> bool,
    counts: Vec<u32>,
    target: &[u32],
) -> bool {
    let start = (model.initial_state().values().to_vec(), counts);
    let mut seen = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some((s, left)) = stack.pop() {
        if left.iter().all(|&c| c == 0) {
            if s == target {
                return true;
            }
            continue;
        }
        let sv = StateVector::new(s);
        for t in 0..left.len() {
            if left[t] == 0 || !step(&sv, TransitionId::from(t)) {
                continue;
            }
            if let Some(next) = model.fire(&sv, TransitionId::from(t)) {
                let mut rest = left.clone();
                rest[t] -= 1;
                let key = (next.values().to_vec(), rest);
                if seen.insert(key.clone()) {
                    stack.push(key);
                }
            }
        }
    }
    false
}
