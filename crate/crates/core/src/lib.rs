//! Explicit-state model checking with stubborn-set reduction.
//!
//! Models are deterministic transition systems over vectors of bounded
//! unsigned variables ([`kernel::Model`]). The [`explorer`] builds the full
//! or reduced state space breadth-first; [`analyses`] decides safety, AG EF
//! termination, may/must progress and infinite-occurrence queries on the
//! result and produces replayable counterexamples.

pub mod analyses;
pub mod cli;
pub mod error;
pub mod explorer;
pub mod kernel;
pub mod models;
pub mod stubborn;

pub use error::{Error, Result};
pub use explorer::{
    explore, terminal_states, trace_to, Edge, ExplorationOutcome, ExploreOptions, Mode, StateIndex, StateSpace,
};
pub use kernel::{decode_state, encode_state, fire_checked, Model, RuleOutcome, StateVector, TransitionId};
pub use stubborn::{compute_stubborn, enabled_in, StubbornSet};
