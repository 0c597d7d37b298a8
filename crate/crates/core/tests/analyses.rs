mod common;

use common::{peterson, Naive};
use stubborn_core::analyses::{
    agef_counterexample, check_agef, check_infinite_occurrence, check_may_progress, check_may_progress_via_terminals,
    check_must_progress, print_counterexample, InfiniteOccurrenceQuery,
};
use stubborn_core::models::{build_fixture, PetersonKind};
use stubborn_core::{explore, ExploreOptions, Model, StateVector, TransitionId};

fn tids(ts: &[u32]) -> Vec<TransitionId> {
    ts.iter().map(|&t| TransitionId(t)).collect()
}

#[test]
fn agef_matches_naive_in_both_modes() {
    for kind in PetersonKind::ALL {
        for n in [2, 3] {
            let m = peterson(kind, n);
            let expected = Naive::explore(&m).agef();
            for opts in [ExploreOptions::full(), ExploreOptions::reduced()] {
                let space = explore(&m, opts).unwrap().into_space();
                let v = check_agef(&space).unwrap();
                assert_eq!(v.holds, expected, "{} n={n} {}", kind.name(), space.mode());
                if let Some(ce) = agef_counterexample(&space, &v).unwrap() {
                    ce.replay(&m).unwrap();
                    assert_eq!(ce.separator, Some(ce.focus));
                }
            }
        }
    }
}

#[test]
fn agef_per_variant() {
    let holds = |kind| {
        let space = explore(&peterson(kind, 2), ExploreOptions::full())
            .unwrap()
            .into_space();
        check_agef(&space).unwrap()
    };
    assert!(holds(PetersonKind::Correct).holds);
    let plain = holds(PetersonKind::Plain);
    assert!(!plain.holds);
    assert_eq!(plain.witness.unwrap().index(), 0);
    assert!(!holds(PetersonKind::NonProgressRevealing).holds);
}

#[test]
fn npr_may_progress_witness_structure() {
    let m = peterson(PetersonKind::NonProgressRevealing, 2);
    let space = explore(&m, ExploreOptions::full()).unwrap().into_space();
    let v = check_may_progress(&space, &m).unwrap();
    assert!(!v.holds);
    let ce = v.witness.unwrap();
    assert_eq!(ce.witness_depth(), 2);
    // terminate customer 1, then customer 0 requests
    assert_eq!(ce.prefix().len(), 2);
    let first_two: Vec<_> = ce.transitions().take(2).collect();
    assert_eq!(first_two, tids(&[3, 0]));
    assert!(ce.is_lasso());
    ce.replay(&m).unwrap();
    let naive = Naive::explore(&m);
    assert!(!naive.may_progress(&m));
}

#[test]
fn may_progress_agrees_between_general_and_terminal_checks() {
    // the terminal shortcut is only sound for AG EF terminating models
    for n in [2, 3] {
        let m = peterson(PetersonKind::Correct, n);
        let full = explore(&m, ExploreOptions::full()).unwrap().into_space();
        let reduced = explore(&m, ExploreOptions::reduced()).unwrap().into_space();
        assert!(check_agef(&reduced).unwrap().holds);
        let general = check_may_progress(&full, &m).unwrap().holds;
        assert_eq!(general, Naive::explore(&m).may_progress(&m));
        assert_eq!(general, check_may_progress_via_terminals(&full, &m).unwrap().holds);
        assert_eq!(general, check_may_progress_via_terminals(&reduced, &m).unwrap().holds);
    }
}

#[test]
fn must_progress_fails_on_plain_and_correct() {
    for kind in [PetersonKind::Plain, PetersonKind::Correct] {
        let m = peterson(kind, 2);
        let space = explore(&m, ExploreOptions::full()).unwrap().into_space();
        let v = check_must_progress(&space, &m).unwrap();
        assert!(!v.holds, "{}", kind.name());
        let ce = v.witness.unwrap();
        ce.replay(&m).unwrap();
        for step in &ce.steps[ce.focus..] {
            assert!(!m.is_progress(&step.state));
        }
    }
}

#[test]
fn must_progress_refuses_reduced_spaces() {
    let m = peterson(PetersonKind::Correct, 2);
    let space = explore(&m, ExploreOptions::reduced()).unwrap().into_space();
    assert!(check_must_progress(&space, &m).is_err());
}

#[test]
fn lasso_fixture_occurrence() {
    let m = build_fixture("lasso").unwrap();
    let space = explore(m.as_ref(), ExploreOptions::full()).unwrap().into_space();
    let (found, ce) = check_infinite_occurrence(
        &space,
        &InfiniteOccurrenceQuery {
            t_omega: TransitionId(0),
            t_star: tids(&[2]),
        },
    )
    .unwrap();
    assert!(found);
    let ce = ce.unwrap();
    assert!(ce.is_lasso());
    ce.replay(m.as_ref()).unwrap();
    let cycle: Vec<_> = ce.transitions().skip(ce.cycle_start.unwrap()).collect();
    assert!(cycle.contains(&TransitionId(0)));

    let (found, ce) = check_infinite_occurrence(
        &space,
        &InfiniteOccurrenceQuery {
            t_omega: TransitionId(0),
            t_star: tids(&[0, 2]),
        },
    )
    .unwrap();
    assert!(!found);
    assert!(ce.is_none());

    // the escape transition is never part of a cycle
    let (found, _) = check_infinite_occurrence(
        &space,
        &InfiniteOccurrenceQuery {
            t_omega: TransitionId(2),
            t_star: vec![],
        },
    )
    .unwrap();
    assert!(!found);
}

#[test]
fn occurrence_agrees_between_modes_on_correct() {
    let m = peterson(PetersonKind::Correct, 2);
    let full = explore(&m, ExploreOptions::full()).unwrap().into_space();
    let reduced = explore(&m, ExploreOptions::reduced()).unwrap().into_space();
    for t_omega in 0..m.transition_count() as u32 {
        for t_star in [vec![], vec![2], vec![2, 3], vec![0, 1], vec![1, 3]] {
            let q = InfiniteOccurrenceQuery {
                t_omega: TransitionId(t_omega),
                t_star: tids(&t_star),
            };
            let (f, fce) = check_infinite_occurrence(&full, &q).unwrap();
            let (r, rce) = check_infinite_occurrence(&reduced, &q).unwrap();
            assert_eq!(f, r, "t_omega={t_omega} t_star={t_star:?}");
            for ce in fce.iter().chain(rce.iter()) {
                ce.replay(&m).unwrap();
            }
        }
    }
}

#[test]
fn mutex_trace_ends_with_two_customers_inside() {
    for opts in [ExploreOptions::full(), ExploreOptions::reduced()] {
        for n in [2, 3] {
            let m = peterson(PetersonKind::MutexViolating, n);
            let outcome = explore(&m, opts.with_safety(true)).unwrap();
            let err = outcome.error().expect("violation expected");
            assert_eq!(err.message, "Mutex violated");
            let space = outcome.space();
            let path = space.trace_to(err.state).unwrap();
            let last = space.state(err.state);
            assert_eq!((0..n).filter(|&i| last[i] == 7).count(), 2);
            for w in path.windows(2) {
                assert_eq!(m.fire(&space.state(w[0].0), w[1].1.unwrap()), Some(space.state(w[1].0)));
            }
        }
    }
}

/// Some customer gets past its gate check against the other while the other
/// has written the turn variable but not yet its own gate number; then both
/// are inside.
#[test]
fn mutex_trace_passes_a_customer_between_the_swapped_writes() {
    let n = 2;
    let m = peterson(PetersonKind::MutexViolating, n);
    let outcome = explore(&m, ExploreOptions::full().with_safety(true)).unwrap();
    let space = outcome.space();
    let states: Vec<StateVector> = space
        .trace_to(outcome.error().unwrap().state)
        .unwrap()
        .into_iter()
        .map(|(i, _)| space.state(i))
        .collect();
    let (k, q) = (2 * n, 3 * n);
    let sneaked = states.windows(2).any(|w| {
        (0..n).any(|x| {
            let y = w[0][k + x] as usize;
            w[0][x] == 6 && w[1][x] == 5 && w[1][k + x] == w[0][k + x] + 1 && y != x && w[0][y] == 3 && w[0][q + y] == 0
        })
    });
    assert!(sneaked);
    let last = states.last().unwrap();
    assert_eq!((last[0], last[1]), (7, 7));
}

#[test]
fn printed_counterexamples_replay() {
    let m = peterson(PetersonKind::NonProgressRevealing, 2);
    let space = explore(&m, ExploreOptions::full()).unwrap().into_space();
    let ce = check_may_progress(&space, &m).unwrap().witness.unwrap();
    let text = print_counterexample(&ce, &m).unwrap();
    assert!(text.ends_with("!!! May-type non-progress error\n"));
    let mut tampered = ce.clone();
    tampered.steps.swap(1, 2);
    assert!(print_counterexample(&tampered, &m).is_err());
}
