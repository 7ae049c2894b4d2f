use flagpath::flag::{reachable_configurations, simulate, MoveSchedule, Turn};
use flagpath::lattice::{
    complete_to_configuration, is_configuration_path, partition_from_path, path_from_partition,
    switch_steps, BinSpec, StepSequence,
};
use flagpath::selfcheck::specs_up_to;
use flagpath::OrderedPartition;
use proptest::prelude::*;

/// The constraint at every prefix length, not only at multiples of `L`:
/// after `s` steps, at most `ceil(s / L) (l_1 + .. + l_i)` of type `<= i`.
/// Implied by the turn-boundary check since tallies only grow.
fn every_prefix_ok(path: &StepSequence, spec: &BinSpec) -> bool {
    let cumulative = spec.cumulative();
    let per_turn = spec.per_turn();
    let counts = path.prefix_counts();
    (1..=path.len()).all(|s| {
        let row = counts.row(s);
        let t = s.div_ceil(per_turn);
        (1..spec.k()).all(|i| row[..i].iter().sum::<usize>() <= t * cumulative[i])
    })
}

/// A configuration path from random legal moves replayed by the process.
fn config_path(spec: &BinSpec, seed: &[u32]) -> StepSequence {
    let mut draws = seed.iter().copied().cycle().chain(std::iter::repeat(7));
    let cumulative = spec.cumulative();
    let per_turn = spec.per_turn();
    let mut bins: Vec<Vec<usize>> = vec![Vec::new(); spec.k()];
    let mut schedule = MoveSchedule::default();
    for t in 1..=spec.n() {
        bins[0].extend((t - 1) * per_turn + 1..=t * per_turn);
        let mut turn = Turn::default();
        for i in 1..spec.k() {
            let mut moved = Vec::new();
            for _ in 0..per_turn - cumulative[i] {
                let pick = draws.next().unwrap() as usize % bins[i - 1].len();
                moved.push(bins[i - 1].remove(pick));
            }
            bins[i].extend(&moved);
            moved.sort_unstable();
            turn.moves.push(moved);
        }
        schedule.turns.push(turn);
    }
    let part = simulate(spec, &schedule).unwrap();
    path_from_partition(&part, spec).unwrap()
}

fn small_spec(max_per_turn: usize, max_n: usize) -> impl Strategy<Value = BinSpec> {
    (2..=max_per_turn)
        .prop_flat_map(move |per_turn| {
            (
                proptest::collection::vec(1..=per_turn, 1..=per_turn),
                1..=max_n,
            )
        })
        .prop_filter_map("composition", |(parts, n)| {
            let l: Vec<usize> = parts;
            (l.len() >= 2).then(|| BinSpec::new(l, n).unwrap())
        })
}

#[test]
fn predicate_matches_process_for_small_specs() {
    for spec in specs_up_to(12) {
        if spec.per_turn() > 4 || spec.n() > 3 {
            continue;
        }
        let reached = reachable_configurations(&spec).unwrap();
        let mut accepted = 0usize;
        flagpath::enumeration::for_each_word(&spec.totals(), &mut |word| {
            let path = StepSequence::new(spec.k(), word.to_vec()).unwrap();
            let by_predicate = is_configuration_path(&path, &spec).unwrap();
            let part = OrderedPartition::from_labels(spec.k(), word.to_vec()).unwrap();
            assert_eq!(by_predicate, reached.contains(&part), "{spec}: {path}");
            accepted += by_predicate as usize;
        });
        assert_eq!(accepted, reached.len(), "{spec}");
    }
}

#[test]
fn turn_boundary_examples() {
    let spec = BinSpec::new(vec![1, 1, 1], 2).unwrap();
    let path = StepSequence::parse("321321", Some(3)).unwrap();
    assert!(every_prefix_ok(&path, &spec));
    // two e_1 steps in a turn of one e_1 is fine once L steps have passed
    let late = StepSequence::parse("332112", Some(3)).unwrap();
    assert!(is_configuration_path(&late, &spec).unwrap());
    let early = StepSequence::parse("113322", Some(3)).unwrap();
    assert!(!is_configuration_path(&early, &spec).unwrap());
    assert!(!every_prefix_ok(&early, &spec));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn switching_preserves_configurations(
        spec in small_spec(5, 3),
        seed in proptest::collection::vec(any::<u32>(), 0..40),
        i in any::<usize>(),
        j in any::<usize>(),
    ) {
        let path = config_path(&spec, &seed);
        prop_assert!(is_configuration_path(&path, &spec).unwrap());
        let len = path.len();
        let (i, j) = (1 + i % len, 1 + j % len);
        prop_assume!(i < j && path.axis(i) <= path.axis(j));
        let switched = switch_steps(&path, i, j).unwrap();
        prop_assert!(is_configuration_path(&switched, &spec).unwrap());
    }

    #[test]
    fn prefixes_complete(
        spec in small_spec(5, 3),
        seed in proptest::collection::vec(any::<u32>(), 0..40),
        cut in any::<usize>(),
        extra in 0usize..3,
    ) {
        let path = config_path(&spec, &seed);
        let cut = cut % (path.len() + 1);
        let prefix = StepSequence::new(spec.k(), path.steps()[..cut].to_vec()).unwrap();
        let done = complete_to_configuration(&prefix, spec.l(), extra).unwrap();
        prop_assert_eq!(&done.steps()[..cut], prefix.steps());
        if !done.is_empty() {
            let turns = done.len() / spec.per_turn();
            prop_assert!(is_configuration_path(&done, &spec.with_turns(turns).unwrap()).unwrap());
        }
    }

    #[test]
    fn partition_round_trip(
        spec in small_spec(4, 2),
        seed in proptest::collection::vec(any::<u32>(), 0..40),
    ) {
        let path = config_path(&spec, &seed);
        let part = partition_from_path(&path).unwrap();
        prop_assert_eq!(path_from_partition(&part, &spec).unwrap(), path);
    }

    #[test]
    fn process_paths_pass_every_prefix_check(
        spec in small_spec(5, 3),
        seed in proptest::collection::vec(any::<u32>(), 0..40),
    ) {
        let path = config_path(&spec, &seed);
        prop_assert!(every_prefix_ok(&path, &spec));
    }
}

#[test]
fn all_partitions_of_six_round_trip() {
    for l in [
        vec![1, 1, 1],
        vec![2, 1],
        vec![1, 2],
        vec![3, 3],
        vec![1, 1, 1, 1, 1, 1],
    ] {
        let per_turn: usize = l.iter().sum();
        let spec = BinSpec::new(l.clone(), 6 / per_turn).unwrap();
        for part in flagpath::flag::all_partitions(&spec.totals()) {
            let path = path_from_partition(&part, &spec).unwrap();
            assert_eq!(partition_from_path(&path).unwrap(), part);
        }
    }
}
