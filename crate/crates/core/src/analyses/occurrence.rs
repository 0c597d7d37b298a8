//! Executions where one transition occurs infinitely often and a set of
//! others does not.

use crate::analyses::counterexample::{steps_from, Counterexample};
use crate::analyses::graph::{shortest_path, strong_components, NO_COMPONENT};
use crate::analyses::require_complete;
use crate::error::{Error, Result};
use crate::explorer::StateSpace;
use crate::kernel::TransitionId;

pub const OCCURRENCE_MESSAGE: &str = "Infinite-occurrence error";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfiniteOccurrenceQuery {
    pub t_omega: TransitionId,
    pub t_star: Vec<TransitionId>,
}

/// Is there an execution with infinitely many `t_omega` and only finitely
/// many members of `t_star`?
///
/// Such an execution ends in a cycle avoiding `t_star` that contains a
/// `t_omega` edge, i.e. an edge `u --t_omega--> v` with `u`, `v` in the same
/// strong component once `t_star` edges are deleted. The witness is the
/// path to the shallowest such `u` followed by that cycle.
pub fn check_infinite_occurrence(
    space: &StateSpace,
    q: &InfiniteOccurrenceQuery,
) -> Result<(bool, Option<Counterexample>)> {
    if q.t_star.contains(&q.t_omega) {
        return Ok((false, None));
    }
    require_complete(space)?;
    let allowed = |t: TransitionId| !q.t_star.contains(&t);
    let comp = strong_components(space, |_| true, |e| allowed(e.t));
    let found = space
        .edges()
        .iter()
        .filter(|e| {
            e.t == q.t_omega && comp[e.src.index()] != NO_COMPONENT && comp[e.src.index()] == comp[e.dst.index()]
        })
        .min_by_key(|e| (space.depth(e.src), e.src, e.dst));
    let Some(&edge) = found else {
        return Ok((false, None));
    };
    let c = comp[edge.src.index()];
    let mut path = space.trace_to(edge.src)?;
    let focus = path.len() - 1;
    path.push((edge.dst, Some(edge.t)));
    if edge.dst != edge.src {
        let back = shortest_path(space, edge.dst, edge.src, |e| allowed(e.t) && comp[e.dst.index()] == c)
            .ok_or_else(|| Error::Internal("strong component is not strongly connected".into()))?;
        path.extend(back.iter().map(|e| (e.dst, Some(e.t))));
    }
    Ok((
        true,
        Some(Counterexample {
            steps: steps_from(space, &path),
            separator: None,
            cycle_start: Some(focus),
            focus,
            message: OCCURRENCE_MESSAGE.to_string(),
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{explore, ExploreOptions};
    use crate::models::build_fixture;
    use crate::models::fixtures::Lasso;

    #[test]
    fn lasso_cycle_found() {
        let m = build_fixture("lasso").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::full()).unwrap().into_space();
        let q = InfiniteOccurrenceQuery {
            t_omega: Lasso::FORWARD,
            t_star: vec![Lasso::ESCAPE],
        };
        let (found, ce) = check_infinite_occurrence(&space, &q).unwrap();
        assert!(found);
        let ce = ce.unwrap();
        ce.replay(m.as_ref()).unwrap();
        assert_eq!(ce.transitions().collect::<Vec<_>>(), vec![Lasso::FORWARD, Lasso::BACK]);
    }

    #[test]
    fn forbidding_the_cycle_edge_kills_it() {
        let m = build_fixture("lasso").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::full()).unwrap().into_space();
        let q = InfiniteOccurrenceQuery {
            t_omega: Lasso::FORWARD,
            t_star: vec![Lasso::BACK],
        };
        assert_eq!(check_infinite_occurrence(&space, &q).unwrap(), (false, None));
        let q = InfiniteOccurrenceQuery {
            t_omega: Lasso::ESCAPE,
            t_star: vec![],
        };
        assert!(!check_infinite_occurrence(&space, &q).unwrap().0);
    }

    #[test]
    fn acyclic_space_never_answers_true() {
        let m = build_fixture("diamond").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::full()).unwrap().into_space();
        for t in 0..2 {
            let q = InfiniteOccurrenceQuery {
                t_omega: TransitionId(t),
                t_star: vec![],
            };
            assert!(!check_infinite_occurrence(&space, &q).unwrap().0);
        }
    }

    #[test]
    fn omega_in_star_is_false() {
        let m = build_fixture("lasso").unwrap();
        let space = explore(m.as_ref(), ExploreOptions::full()).unwrap().into_space();
        let q = InfiniteOccurrenceQuery {
            t_omega: Lasso::FORWARD,
            t_star: vec![Lasso::FORWARD],
        };
        assert_eq!(check_infinite_occurrence(&space, &q).unwrap(), (false, None));
    }
}
