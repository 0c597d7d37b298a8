//! Verdicts computed on explored state spaces.

pub mod agef;
pub mod counterexample;
pub mod graph;
pub mod occurrence;
pub mod oracle;
pub mod progress;

pub use agef::{agef_counterexample, check_agef, AgEfVerdict};
pub use counterexample::{print_counterexample, Counterexample, TraceStep};
pub use occurrence::{check_infinite_occurrence, InfiniteOccurrenceQuery};
pub use oracle::{compare_full_reduced, verify_d1_d2, CompareReport, D1D2Report, D1D2Violation};
pub use progress::{check_may_progress, check_may_progress_via_terminals, check_must_progress, ProgressVerdict};

use crate::error::{Error, Result};
use crate::explorer::StateSpace;

fn require_complete(space: &StateSpace) -> Result<()> {
    if space.is_complete() {
        Ok(())
    } else {
        Err(Error::usage("analysis needs a completely explored state space"))
    }
}
