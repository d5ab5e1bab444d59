mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use signedflips::filler::{complex_from_sequence, decompose_to_moves, fill_ball_3d, fill_disk_2d, Coloring};
use signedflips::flipgraph::lift_to_signed_traced;
use signedflips::oracle::{oracle_all_signings, oracle_signable, to_signed_sequence};
use signedflips::search::{find_flip_path, find_signable_path};
use signedflips::*;

fn sequence() -> impl Strategy<Value = FlipSequence> {
    (4u32..=8, 0usize..=6, any::<u64>())
        .prop_map(|(n, len, seed)| random_sequence(&mut ChaCha8Rng::seed_from_u64(seed), n, len))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn flip_is_an_involution(n in 4u32..=9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_triangulation(&mut rng, n);
        let d = *t.diagonals().choose(&mut rng).unwrap();
        let (u, f) = t.apply_flip(d).unwrap();
        u.check_invariants().unwrap();
        prop_assert_eq!(f.diagonal_before(), d);
        let (back, g) = u.apply_flip(f.diagonal_after()).unwrap();
        prop_assert_eq!(back, t);
        prop_assert_eq!(g.removed(), f.inserted());
    }

    #[test]
    fn flip_paths_are_valid_and_shortest(n in 3u32..=8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_triangulation(&mut rng, n);
        let b = random_triangulation(&mut rng, n);
        let p = find_flip_path(&a, &b).unwrap();
        validate_sequence(&p).unwrap();
        prop_assert_eq!(p.end().unwrap(), b.clone());
        // the number of diagonals of b missing from a bounds the distance below
        let missing = b.diagonals().iter().filter(|d| !a.diagonals().contains(d)).count();
        prop_assert!(p.len() >= missing);
        prop_assert_eq!(find_flip_path(&a, &b).unwrap(), p);
    }

    #[test]
    fn signable_paths_are_bipartite(n in 4u32..=7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_triangulation(&mut rng, n);
        let b = random_triangulation(&mut rng, n);
        if let Some(p) = find_signable_path(&a, &b, 6).unwrap() {
            prop_assert!(p.len() <= 6);
            prop_assert_eq!(p.end().unwrap(), b);
            prop_assert!(oracle_signable(&p).unwrap());
        }
    }

    #[test]
    fn lifting_agrees_with_the_oracle(s in sequence()) {
        let g = build_flip_graph(&s).unwrap();
        let verdict = is_signable(&s).unwrap();
        prop_assert_eq!(verdict.is_signable(), oracle_signable(&s).unwrap());
        match two_color(&g) {
            TwoColorOutcome::Colorable(c) => {
                prop_assert!(c.is_proper_for(&g));
                let (ss, trace) = lift_to_signed_traced(&s, &c).unwrap();
                ss.check().unwrap();
                prop_assert_eq!(
                    trace.r1_only + trace.r2_only + trace.both + trace.r3_default,
                    ss.steps().iter().map(|m| m.len()).sum::<usize>()
                );
                let back = extract_coloring(&ss).unwrap();
                prop_assert!(back.same_bipartition(&c, &g));

                // the start signs of the lift are a surviving oracle state,
                // up to triangles that no flip ever touches
                let touched: BTreeSet<Triangle> = s.flips.iter().flat_map(|f| f.removed()).collect();
                let survivors = oracle_all_signings(&s).unwrap();
                let lifted = ss.step(1);
                let found = survivors
                    .iter()
                    .any(|st| lifted.iter().all(|(t, sign)| !touched.contains(t) || st.get(t) == Some(*sign)));
                prop_assert!(found);
            }
            TwoColorOutcome::OddCycle(w) => {
                prop_assert!(w.is_valid_for(&g));
                prop_assert!(w.len() % 2 == 1 && w.len() >= 3);
            }
        }
        prop_assert_eq!(two_color(&g), two_color(&build_flip_graph(&s).unwrap()));
    }

    #[test]
    fn oracle_survivors_replay_to_valid_signings(s in sequence()) {
        for st in oracle_all_signings(&s).unwrap() {
            let ss = to_signed_sequence(&s, &st).unwrap().expect("survivors replay");
            ss.check().unwrap();
            prop_assert!(extract_coloring(&ss).unwrap().is_proper_for(&build_flip_graph(&s).unwrap()));
        }
    }

    #[test]
    fn flip_complex_adjacency_is_the_interaction_graph(s in sequence()) {
        let k = complex_from_sequence(&s).unwrap();
        prop_assert_eq!(k.adjacency(), &build_flip_graph(&s).unwrap());
        prop_assert_eq!(k.tetrahedra().len(), s.len());
    }

    #[test]
    fn disk_filling_under_relabeling(len in 3usize..=9, pick in any::<usize>(), seed in any::<u64>()) {
        let colorings = strict_cycle_colorings(len);
        let colors = &colorings[pick % colorings.len()];
        let mut labels: Vec<u32> = (1..=20).collect();
        labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let cycle: Vec<u32> = labels[..len].to_vec();
        let coloring: Coloring = cycle.iter().zip(colors).map(|(&v, &c)| (v, c)).collect();
        let disk = fill_disk_2d(&cycle, &coloring).unwrap();
        check_disk(&cycle, &coloring, &disk).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_spheres_fill_and_decompose(seed in any::<u64>(), moves in 0usize..=16) {
        let (sphere, coloring) = random_move_sphere(&mut ChaCha8Rng::seed_from_u64(seed), 10, moves);
        sphere.check_sphere().unwrap();
        let ball = fill_ball_3d(&sphere, &coloring).unwrap();
        check_ball(&sphere, &coloring, &ball).map_err(TestCaseError::fail)?;
        let d = decompose_to_moves(&sphere, &coloring).unwrap();
        let surfaces = d.replay().unwrap();
        let last: BTreeSet<Vec<u32>> = surfaces.last().unwrap().iter().map(|f| f.to_vec()).collect();
        prop_assert_eq!(&last, sphere.facets());
        prop_assert_eq!(d.steps.len() + 1, ball.len());
    }
}
