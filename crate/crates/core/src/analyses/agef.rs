//! AG EF termination: from every state some terminal state is reachable.

use crate::analyses::counterexample::{no_escape_counterexample, Counterexample};
use crate::analyses::graph::{backward_reach, shallowest};
use crate::analyses::require_complete;
use crate::error::Result;
use crate::explorer::{StateIndex, StateSpace};

pub const AGEF_MESSAGE: &str = "Not AG EF terminating";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgEfVerdict {
    pub holds: bool,
    /// Shallowest state from which no terminal state is reachable.
    pub witness: Option<StateIndex>,
}

/// Backward search from all terminal states over reversed edges.
///
/// On a reduced space the verdict equals the full-space verdict.
pub fn check_agef(space: &StateSpace) -> Result<AgEfVerdict> {
    require_complete(space)?;
    let reached = backward_reach(space, |i| space.is_terminal(i));
    let witness = shallowest(space, |i| !reached[i.index()]);
    Ok(AgEfVerdict {
        holds: witness.is_none(),
        witness,
    })
}

/// Path to the witness, separator, then a walk that can never terminate.
pub fn agef_counterexample(space: &StateSpace, verdict: &AgEfVerdict) -> Result<Option<Counterexample>> {
    verdict
        .witness
        .map(|w| no_escape_counterexample(space, w, AGEF_MESSAGE))
        .transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{explore, ExploreOptions};
    use crate::models::build_fixture;

    #[test]
    fn single_terminal_state_holds() {
        let m = build_fixture("empty").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::full()).unwrap().into_space();
        assert_eq!(
            check_agef(&space).unwrap(),
            AgEfVerdict {
                holds: true,
                witness: None
            }
        );
    }

    #[test]
    fn lasso_can_always_escape() {
        let m = build_fixture("lasso").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::full()).unwrap().into_space();
        assert!(check_agef(&space).unwrap().holds);
    }
}
