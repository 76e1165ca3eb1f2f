use posetrep::classify::{analyze, decide_rep_finite, decide_tau_tilting_finite, gldim_le_2, Analysis, Answer, ClassifyConfig};
use posetrep::linrep::{global_dimension, BoundAlgebra};
use posetrep::poset::Poset;
use posetrep::quiver::{graph_type, negative_cone_witness, Quiver};
use proptest::prelude::*;

fn poset_strategy(max: usize) -> impl Strategy<Value = Poset> {
    (2..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |rel| {
            let mut up = vec![0u64; n];
            let mut k = 0;
            for (i, slot) in up.iter_mut().enumerate() {
                for j in i + 1..n {
                    if rel[k] {
                        *slot |= 1 << j;
                    }
                    k += 1;
                }
            }
            Poset::from_up_sets((0..n).map(|i| format!("x{i}")).collect(), up).unwrap()
        })
    })
}

fn quiver_strategy() -> impl Strategy<Value = Quiver> {
    (2usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(0u8..=2, n * (n - 1) / 2).prop_map(move |mult| {
            let mut arrows = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    arrows.extend(std::iter::repeat_n((i, j), usize::from(mult[k])));
                    k += 1;
                }
            }
            // a path through all vertices keeps the quiver connected
            for i in 0..n - 1 {
                if mult[i * (2 * n - i - 1) / 2] == 0 {
                    arrows.push((i, i + 1));
                }
            }
            Quiver::from_indices((1..=n).map(|i| i.to_string()).collect(), arrows).unwrap()
        })
    })
}

fn rep(p: &Poset) -> Answer {
    decide_rep_finite(p, 14).unwrap().answer
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rep_type_is_invariant_under_opposite(p in poset_strategy(9)) {
        prop_assert_eq!(rep(&p), rep(&p.opposite()));
    }

    #[test]
    fn tau_tilting_finiteness_matches_rep_finiteness(p in poset_strategy(9)) {
        prop_assert_eq!(decide_tau_tilting_finite(&p, 14).unwrap().answer, rep(&p));
    }

    #[test]
    fn subposets_of_finite_posets_are_finite(p in poset_strategy(9), k in any::<prop::sample::Index>()) {
        prop_assume!(rep(&p) == Answer::Yes);
        let q = p.delete(k.index(p.len()));
        prop_assert_eq!(rep(&q), Answer::Yes);
    }

    #[test]
    fn relabelling_does_not_change_the_verdict(p in poset_strategy(8), seed in any::<u64>()) {
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let q = p.permuted(&perm);
        prop_assert_eq!(p.canonical_form(), q.canonical_form());
        prop_assert_eq!(rep(&p), rep(&q));
    }

    #[test]
    fn interval_criterion_matches_global_dimension(p in poset_strategy(8)) {
        let gl = global_dimension(&BoundAlgebra::incidence(&p));
        prop_assert_eq!(gldim_le_2(&p).answer == Answer::Yes, gl <= 2);
    }

    #[test]
    fn wild_quivers_have_negative_vectors(q in quiver_strategy()) {
        let t = graph_type(&q).unwrap();
        prop_assert_eq!(t.is_wild(), negative_cone_witness(&q, 6).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn analysis_is_deterministic_and_round_trips(p in poset_strategy(7)) {
        prop_assume!(p.is_connected());
        let cfg = ClassifyConfig::default();
        let a = analyze(&p, &cfg).unwrap();
        prop_assert_eq!(&a, &analyze(&p, &cfg).unwrap());
        let text = serde_json::to_string(&a).unwrap();
        let back: Analysis = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
