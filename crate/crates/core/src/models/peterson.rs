//! Peterson's mutual exclusion algorithm for `n` customers, in four variants.
//!
//! State layout (all 8-bit): `S[n] j[n] k[n] Q[n] T[n-1]`. `S[i]` is the local
//! state of customer `i`: 0 idle, 1..6 trying, 7 critical, 8 terminated.
//! Transition `i < n` runs customer `i`; transition `n + i` (absent in the
//! plain variant) lets an idle customer `i` stop for good.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::{Model, RuleOutcome, StateVector, TransitionId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PetersonKind {
    /// Customers always try again; cannot terminate.
    Plain,
    /// Idle customers may terminate. Reveals the gate-0 progress bug.
    NonProgressRevealing,
    /// Gate numbers written as `j + 1`, fixing the progress bug.
    Correct,
    /// Correct, with the `Q` and `T` writes swapped. Breaks mutual exclusion.
    MutexViolating,
}

impl PetersonKind {
    pub const ALL: [PetersonKind; 4] = [
        PetersonKind::Plain,
        PetersonKind::NonProgressRevealing,
        PetersonKind::Correct,
        PetersonKind::MutexViolating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PetersonKind::Plain => "plain",
            PetersonKind::NonProgressRevealing => "non-progress-revealing",
            PetersonKind::Correct => "correct",
            PetersonKind::MutexViolating => "mutex-violating",
        }
    }

    fn can_terminate(self) -> bool {
        self != PetersonKind::Plain
    }

    fn gate_offset(self) -> u32 {
        match self {
            PetersonKind::Plain | PetersonKind::NonProgressRevealing => 0,
            PetersonKind::Correct | PetersonKind::MutexViolating => 1,
        }
    }
}

impl FromStr for PetersonKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(PetersonKind::Plain),
            "non-progress-revealing" | "npr" => Ok(PetersonKind::NonProgressRevealing),
            "correct" => Ok(PetersonKind::Correct),
            "mutex-violating" | "mutex" => Ok(PetersonKind::MutexViolating),
            other => Err(Error::usage(format!("unknown Peterson variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PetersonVariant {
    pub kind: PetersonKind,
    pub n: usize,
}

impl PetersonVariant {
    pub fn new(kind: PetersonKind, n: usize) -> Self {
        PetersonVariant { kind, n }
    }
}

const IDLE: u32 = 0;
const CRITICAL: u32 = 7;
const TERMINATED: u32 = 8;

/// Local-state letters for the listing. Terminated customers print a blank.
const LETTERS: [char; 9] = ['-', 'j', 'Q', 'T', 'w', 'k', 'A', '*', ' '];

#[derive(Debug, Clone)]
pub struct Peterson {
    kind: PetersonKind,
    n: usize,
    /// Drop the rule of local state 3; only for the broken-rules fixture.
    faulty_turn_rule: bool,
}

pub fn build_peterson(v: PetersonVariant) -> Result<Peterson> {
    if v.n < 2 {
        return Err(Error::usage(format!("Peterson needs n >= 2 customers, got {}", v.n)));
    }
    if 5 * v.n > 255 {
        return Err(Error::usage(format!("n = {} does not fit 8-bit variables", v.n)));
    }
    Ok(Peterson {
        kind: v.kind,
        n: v.n,
        faulty_turn_rule: false,
    })
}

impl Peterson {
    pub fn kind(&self) -> PetersonKind {
        self.kind
    }

    pub fn customers(&self) -> usize {
        self.n
    }

    pub(crate) fn with_faulty_turn_rule(mut self) -> Self {
        self.faulty_turn_rule = true;
        self
    }

    fn s(&self, i: usize) -> usize {
        i
    }
    fn j(&self, i: usize) -> usize {
        self.n + i
    }
    fn k(&self, i: usize) -> usize {
        2 * self.n + i
    }
    fn q(&self, i: usize) -> usize {
        3 * self.n + i
    }
    fn turn(&self, gate: usize) -> usize {
        4 * self.n + gate
    }

    /// Customer `i`'s next atomic step.
    fn step(&self, st: &mut StateVector, i: usize) -> bool {
        let n = self.n as u32;
        let me = i as u32;
        let j = st[self.j(i)] as usize;
        let next = match st[self.s(i)] {
            0 => {
                st[self.j(i)] = 0;
                1
            }
            1 => {
                if st[self.j(i)] >= n - 1 {
                    CRITICAL
                } else {
                    2
                }
            }
            2 => {
                if self.kind == PetersonKind::MutexViolating {
                    st[self.turn(j)] = me;
                } else {
                    st[self.q(i)] = st[self.j(i)] + self.kind.gate_offset();
                }
                3
            }
            3 => {
                if self.kind == PetersonKind::MutexViolating {
                    st[self.q(i)] = st[self.j(i)] + 1;
                } else {
                    st[self.turn(j)] = me;
                }
                4
            }
            4 => {
                if st[self.turn(j)] != me {
                    st[self.j(i)] += 1;
                    1
                } else {
                    st[self.k(i)] = 0;
                    5
                }
            }
            5 => {
                if st[self.k(i)] >= n {
                    st[self.j(i)] += 1;
                    1
                } else {
                    6
                }
            }
            6 => {
                let k = st[self.k(i)] as usize;
                let other = st[self.q(k)];
                let passes = match self.kind.gate_offset() {
                    0 => other < st[self.j(i)],
                    _ => other <= st[self.j(i)],
                };
                if k == i || passes {
                    st[self.k(i)] += 1;
                    5
                } else {
                    4
                }
            }
            CRITICAL => {
                st[self.q(i)] = 0;
                IDLE
            }
            _ => return false,
        };
        st[self.s(i)] = next;
        true
    }
}

impl Model for Peterson {
    fn transition_count(&self) -> usize {
        if self.kind.can_terminate() {
            2 * self.n
        } else {
            self.n
        }
    }

    fn initial_state(&self) -> StateVector {
        StateVector::zeros(5 * self.n - 1)
    }

    fn fire(&self, s: &StateVector, t: TransitionId) -> Option<StateVector> {
        let t = t.index();
        if t >= self.transition_count() {
            return None;
        }
        let mut next = s.clone();
        if t >= self.n {
            let i = t - self.n;
            if s[self.s(i)] != IDLE {
                return None;
            }
            next[self.s(i)] = TERMINATED;
            return Some(next);
        }
        self.step(&mut next, t).then_some(next)
    }

    fn format_state(&self, s: &StateVector) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let letter = LETTERS.get(s[self.s(i)] as usize).copied().unwrap_or('?');
            let _ = write!(out, "{}{}{}{} ", s[self.j(i)], letter, s[self.k(i)], s[self.q(i)]);
        }
        for gate in 0..self.n - 1 {
            let _ = write!(out, "{}", s[self.turn(gate)]);
        }
        out
    }

    fn has_safety_check(&self) -> bool {
        true
    }

    fn check_state(&self, s: &StateVector) -> Option<String> {
        let inside = (0..self.n).filter(|&i| s[self.s(i)] == CRITICAL).count();
        (inside >= 2).then(|| "Mutex violated".to_string())
    }

    fn has_progress_predicate(&self) -> bool {
        true
    }

    /// Customer 0 is in (or, when it can terminate, past) the critical section.
    fn is_progress(&self, s: &StateVector) -> bool {
        if self.kind.can_terminate() {
            s[self.s(0)] >= CRITICAL
        } else {
            s[self.s(0)] == CRITICAL
        }
    }

    fn has_stubborn_rules(&self) -> bool {
        true
    }

    fn stubborn_rule(&self, s: &StateVector, t: TransitionId) -> RuleOutcome {
        let i = t.index();
        if i >= self.n {
            return RuleOutcome::one(i - self.n);
        }
        match s[self.s(i)] {
            0 if self.kind.can_terminate() => RuleOutcome::one(i + self.n),
            0 | 1 | 5 | TERMINATED => RuleOutcome::none(),
            3 if self.faulty_turn_rule => RuleOutcome::none(),
            4 => {
                let gate = s[self.j(i)] as usize;
                match s.values().get(self.turn(gate)) {
                    Some(&owner) if owner != i as u32 => RuleOutcome::none(),
                    _ => RuleOutcome::All,
                }
            }
            _ => RuleOutcome::All,
        }
    }
}
