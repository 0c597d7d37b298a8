//! Tiny models for oracle tests.

use crate::error::{Error, Result};
use crate::kernel::{Model, RuleOutcome, StateVector, TransitionId};
use crate::models::peterson::{build_peterson, PetersonKind, PetersonVariant};

pub const FIXTURE_NAMES: [&str; 4] = ["empty", "diamond", "broken-rules", "lasso"];

pub fn build_fixture(name: &str) -> Result<Box<dyn Model>> {
    match name {
        "empty" => Ok(Box::new(Empty)),
        "diamond" => Ok(Box::new(Diamond)),
        "lasso" => Ok(Box::new(Lasso)),
        "broken-rules" => {
            let model = build_peterson(PetersonVariant::new(PetersonKind::Correct, 2))?;
            Ok(Box::new(model.with_faulty_turn_rule()))
        }
        other => Err(Error::usage(format!(
            "unknown fixture `{other}` (known: {})",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

/// No transitions at all.
#[derive(Debug, Clone, Copy)]
pub struct Empty;

impl Model for Empty {
    fn transition_count(&self) -> usize {
        0
    }
    fn initial_state(&self) -> StateVector {
        StateVector::zeros(1)
    }
    fn fire(&self, _: &StateVector, _: TransitionId) -> Option<StateVector> {
        None
    }
    fn format_state(&self, s: &StateVector) -> String {
        format!("x={}", s[0])
    }
    fn has_stubborn_rules(&self) -> bool {
        true
    }
    fn stubborn_rule(&self, _: &StateVector, _: TransitionId) -> RuleOutcome {
        RuleOutcome::none()
    }
}

/// Two transitions that each set their own variable once; they commute.
#[derive(Debug, Clone, Copy)]
pub struct Diamond;

impl Model for Diamond {
    fn transition_count(&self) -> usize {
        2
    }
    fn initial_state(&self) -> StateVector {
        StateVector::zeros(2)
    }
    fn fire(&self, s: &StateVector, t: TransitionId) -> Option<StateVector> {
        let v = t.index();
        if s[v] != 0 {
            return None;
        }
        let mut next = s.clone();
        next[v] = 1;
        Some(next)
    }
    fn format_state(&self, s: &StateVector) -> String {
        format!("x={} y={}", s[0], s[1])
    }
    fn has_stubborn_rules(&self) -> bool {
        true
    }
    fn stubborn_rule(&self, _: &StateVector, _: TransitionId) -> RuleOutcome {
        RuleOutcome::none()
    }
}

/// `p` cycles 0 -> 1 -> 0 via transitions 0 and 1; transition 2 escapes
/// from 0 to the terminal progress state 2.
#[derive(Debug, Clone, Copy)]
pub struct Lasso;

impl Lasso {
    pub const FORWARD: TransitionId = TransitionId(0);
    pub const BACK: TransitionId = TransitionId(1);
    pub const ESCAPE: TransitionId = TransitionId(2);
}

impl Model for Lasso {
    fn transition_count(&self) -> usize {
        3
    }
    fn initial_state(&self) -> StateVector {
        StateVector::zeros(1)
    }
    fn fire(&self, s: &StateVector, t: TransitionId) -> Option<StateVector> {
        let to = match (s[0], t) {
            (0, Self::FORWARD) => 1,
            (1, Self::BACK) => 0,
            (0, Self::ESCAPE) => 2,
            _ => return None,
        };
        Some(StateVector::new(vec![to]))
    }
    fn format_state(&self, s: &StateVector) -> String {
        format!("p={}", s[0])
    }
    fn has_progress_predicate(&self) -> bool {
        true
    }
    fn is_progress(&self, s: &StateVector) -> bool {
        s[0] == 2
    }
    fn has_stubborn_rules(&self) -> bool {
        true
    }
    fn stubborn_rule(&self, _: &StateVector, _: TransitionId) -> RuleOutcome {
        RuleOutcome::All
    }
}
