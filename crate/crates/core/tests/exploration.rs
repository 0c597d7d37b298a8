mod common;

use common::{peterson, Naive};
use stubborn_core::models::PetersonKind;
use stubborn_core::{
    decode_state, encode_state, explore, terminal_states, trace_to, ExplorationOutcome, ExploreOptions, Model,
    StateIndex, StateVector,
};

const FULL_COUNTS: [(PetersonKind, usize, usize, usize); 6] = [
    (PetersonKind::Plain, 2, 133, 266),
    (PetersonKind::Plain, 3, 38_038, 114_114),
    (PetersonKind::NonProgressRevealing, 2, 163, 326),
    (PetersonKind::NonProgressRevealing, 3, 43_675, 131_025),
    (PetersonKind::Correct, 2, 574, 1_148),
    (PetersonKind::Correct, 3, 96_854, 290_562),
];

#[test]
fn full_counts_match_reference_counts() {
    for (kind, n, states, edges) in FULL_COUNTS {
        let m = peterson(kind, n);
        let space = explore(&m, ExploreOptions::full()).unwrap().into_space();
        assert_eq!(
            (space.len(), space.edge_count()),
            (states, edges),
            "{} n={n}",
            kind.name()
        );
    }
}

#[test]
fn mutex_counts_at_abort_match_reference_counts() {
    for (n, states, edges) in [(2, 336, 602), (3, 32_957, 87_081)] {
        let m = peterson(PetersonKind::MutexViolating, n);
        let outcome = explore(&m, ExploreOptions::full().with_safety(true)).unwrap();
        assert!(outcome.error().is_some());
        let space = outcome.space();
        assert_eq!((space.len(), space.edge_count()), (states, edges), "n={n}");
    }
}

#[test]
fn full_space_equals_naive_bfs() {
    for kind in PetersonKind::ALL {
        let m = peterson(kind, 2);
        let space = explore(&m, ExploreOptions::full()).unwrap().into_space();
        let naive = Naive::explore(&m);
        assert_eq!(space.len(), naive.states.len());
        assert_eq!(space.edge_count(), naive.edges.len());
        for i in space.indices() {
            let s = space.state(i);
            let j = naive.index[s.values()];
            assert_eq!(space.depth(i), naive.depth[j], "{} depth of {s:?}", kind.name());
        }
    }
}

#[test]
fn naive_bfs_agrees_on_n3_counts() {
    let m = peterson(PetersonKind::Correct, 3);
    let naive = Naive::explore(&m);
    assert_eq!((naive.states.len(), naive.edges.len()), (96_854, 290_562));
}

#[test]
fn trace_lengths_equal_bfs_depth() {
    let m = peterson(PetersonKind::NonProgressRevealing, 2);
    let space = explore(&m, ExploreOptions::full()).unwrap().into_space();
    let naive = Naive::explore(&m);
    for i in space.indices() {
        let path = trace_to(&space, i).unwrap();
        assert_eq!(path.len() - 1, naive.depth[naive.index[space.state(i).values()]]);
        assert_eq!(path[0].0, StateIndex(0));
        assert_eq!(path.last().unwrap().0, i);
        for w in path.windows(2) {
            let t = w[1].1.unwrap();
            assert_eq!(m.fire(&space.state(w[0].0), t), Some(space.state(w[1].0)));
        }
    }
}

#[test]
fn terminal_states_by_variant() {
    let plain = peterson(PetersonKind::Plain, 2);
    let space = explore(&plain, ExploreOptions::full()).unwrap().into_space();
    assert!(terminal_states(&space).is_empty());

    let npr = peterson(PetersonKind::NonProgressRevealing, 2);
    let space = explore(&npr, ExploreOptions::full()).unwrap().into_space();
    let terminals: Vec<StateVector> = terminal_states(&space).into_iter().map(|i| space.state(i)).collect();
    assert!(!terminals.is_empty());
    assert!(terminals.iter().any(|s| s[0] == 8 && s[1] == 8));
    assert_eq!(
        terminals
            .iter()
            .map(|s| s.values().to_vec())
            .collect::<std::collections::HashSet<_>>(),
        Naive::explore(&npr).terminals()
    );
}

#[test]
fn exploration_is_deterministic() {
    for mode in [ExploreOptions::full(), ExploreOptions::reduced()] {
        let m = peterson(PetersonKind::Correct, 2);
        let a = explore(&m, mode).unwrap().into_space();
        let b = explore(&m, mode).unwrap().into_space();
        assert_eq!(a.edges(), b.edges());
        assert!(a.indices().all(|i| a.state(i) == b.state(i)));
    }
}

#[test]
fn fire_is_pure() {
    let m = peterson(PetersonKind::Correct, 2);
    let naive = Naive::explore(&m);
    for s in &naive.states {
        let sv = StateVector::new(s.clone());
        for t in 0..m.transition_count() {
            let t = t.into();
            assert_eq!(m.fire(&sv, t), m.fire(&sv, t));
            assert_eq!(sv.values(), s.as_slice());
        }
    }
}

#[test]
fn encoding_round_trips_on_reachable_states() {
    let m = peterson(PetersonKind::Correct, 3);
    let space = explore(&m, ExploreOptions::full()).unwrap().into_space();
    for i in space.indices().step_by(97) {
        let s = space.state(i);
        let bytes = encode_state(&s, m.width());
        assert_eq!(bytes.as_slice(), space.encoded(i));
        assert_eq!(decode_state(&bytes, m.width()), s);
        assert_eq!(space.index_of(&s), Some(i));
    }
}

#[test]
fn limit_keeps_partial_space() {
    let m = peterson(PetersonKind::Correct, 2);
    match explore(&m, ExploreOptions::full().with_limit(Some(50))) {
        Err(stubborn_core::Error::StateLimit { limit, partial }) => {
            assert_eq!(limit, 50);
            assert!(!partial.is_complete());
            assert!(partial.len() > 50);
        }
        other => panic!("expected a state limit error, got {other:?}"),
    }
    let ok = explore(&m, ExploreOptions::full().with_limit(Some(574))).unwrap();
    assert!(matches!(ok, ExplorationOutcome::Completed(_)));
}

#[test]
#[ignore = "large: about 26 million states"]
fn correct_n4_full_count() {
    let m = peterson(PetersonKind::Correct, 4);
    let space = explore(&m, ExploreOptions::full()).unwrap().into_space();
    assert_eq!(space.len(), 26_209_918);
}
