//! The model abstraction: deterministic transitions over fixed-length vectors
//! of bounded unsigned variables.

use std::fmt;

use crate::error::{Error, Result};

/// Bits per variable unless a model says otherwise.
pub const DEFAULT_WIDTH: u32 = 8;

/// Number of a transition, `0 <= index < transition_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransitionId(pub u32);

impl TransitionId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for TransitionId {
    fn from(index: usize) -> Self {
        TransitionId(index as u32)
    }
}

impl fmt::Display for TransitionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One model state: the values of all state variables in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateVector(Vec<u32>);

impl StateVector {
    pub fn new(values: Vec<u32>) -> Self {
        StateVector(values)
    }

    pub fn zeros(len: usize) -> Self {
        StateVector(vec![0; len])
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every value is below `2^width`.
    pub fn fits(&self, width: u32) -> bool {
        self.0.iter().all(|&v| fits_width(v, width))
    }
}

impl std::ops::Index<usize> for StateVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl std::ops::IndexMut<usize> for StateVector {
    fn index_mut(&mut self, i: usize) -> &mut u32 {
        &mut self.0[i]
    }
}

fn fits_width(value: u32, width: u32) -> bool {
    width >= 32 || value < (1u32 << width)
}

/// What a stubborn rule demands when a transition is in the stubborn set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleOutcome {
    /// These transitions must also be in the set.
    Deps(Vec<TransitionId>),
    /// Every transition must be in the set.
    All,
}

impl RuleOutcome {
    pub fn none() -> Self {
        RuleOutcome::Deps(Vec::new())
    }

    pub fn one(t: usize) -> Self {
        RuleOutcome::Deps(vec![TransitionId::from(t)])
    }
}

/// A deterministic transition system over [`StateVector`]s.
///
/// Implementations must be read-only after construction. The optional
/// capabilities (safety check, progress predicate, stubborn rules) are
/// announced through the `has_*` methods; the engine never calls a
/// capability the model does not announce.
pub trait Model: Send + Sync {
    fn transition_count(&self) -> usize;

    /// Bits per variable, uniform across the vector.
    fn width(&self) -> u32 {
        DEFAULT_WIDTH
    }

    fn initial_state(&self) -> StateVector;

    /// Fire `t` at `s`. `None` means `t` is disabled at `s`.
    fn fire(&self, s: &StateVector, t: TransitionId) -> Option<StateVector>;

    fn format_state(&self, s: &StateVector) -> String;

    fn has_safety_check(&self) -> bool {
        false
    }

    /// A message means `s` violates the safety property.
    fn check_state(&self, _s: &StateVector) -> Option<String> {
        None
    }

    fn has_progress_predicate(&self) -> bool {
        false
    }

    fn is_progress(&self, _s: &StateVector) -> bool {
        true
    }

    fn has_stubborn_rules(&self) -> bool {
        false
    }

    fn stubborn_rule(&self, _s: &StateVector, _t: TransitionId) -> RuleOutcome {
        RuleOutcome::All
    }
}

/// Fire `t` at `s`, validating the transition number and the successor.
pub fn fire_checked<M: Model + ?Sized>(model: &M, s: &StateVector, t: TransitionId) -> Result<Option<StateVector>> {
    let count = model.transition_count();
    if t.index() >= count {
        return Err(Error::TransitionOutOfRange { transition: t, count });
    }
    let Some(next) = model.fire(s, t) else {
        return Ok(None);
    };
    if next.len() != s.len() {
        return Err(Error::LengthChanged {
            transition: t,
            expected: s.len(),
            found: next.len(),
        });
    }
    let width = model.width();
    if let Some((variable, &value)) = next.values().iter().enumerate().find(|(_, &v)| !fits_width(v, width)) {
        return Err(Error::ValueOverflow {
            transition: t,
            variable,
            value,
            width,
        });
    }
    Ok(Some(next))
}

/// Bytes used per variable in the canonical encoding.
pub fn bytes_per_value(width: u32) -> usize {
    width.clamp(1, 32).div_ceil(8) as usize
}

/// Canonical encoding: each value packed little-endian into
/// [`bytes_per_value`] bytes, in declaration order.
pub fn encode_state(s: &StateVector, width: u32) -> Vec<u8> {
    let mut out = Vec::with_capacity(s.len() * bytes_per_value(width));
    encode_into(s, width, &mut out);
    out
}

pub(crate) fn encode_into(s: &StateVector, width: u32, out: &mut Vec<u8>) {
    let k = bytes_per_value(width);
    for &v in s.values() {
        out.extend_from_slice(&v.to_le_bytes()[..k]);
    }
}

pub fn decode_state(bytes: &[u8], width: u32) -> StateVector {
    let k = bytes_per_value(width);
    let values = bytes
        .chunks_exact(k)
        .map(|chunk| {
            let mut buf = [0u8; 4];
            buf[..k].copy_from_slice(chunk);
            u32::from_le_bytes(buf)
        })
        .collect();
    StateVector(values)
}
