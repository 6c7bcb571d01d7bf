//! Property-based cross-checks: the library's algorithmic implementations
//! against definitional oracles and algebraic laws.

mod common;

use common::{
    all_states_distinguishable, languages_agree_up_to, naive_classes,
    naive_closed_classes_with_periods, naive_is_closed, naive_is_ergodic,
};
use ergodfa::automata::{apply_merge, Automaton, Dfa, MergeMap};
use ergodfa::minimization::{are_equivalent, minimize, myhill_nerode_classes, reachable_trim};
use ergodfa::randgen::{derive_trial_seed, sample_dfa, SampleSpec};
use ergodfa::set::StateSet;
use ergodfa::structure::communicating_classes;
use proptest::prelude::*;

fn arb_dfa(max_n: usize, r_max: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_n, 2..=r_max).prop_flat_map(|(n, r)| {
        (
            0..n,
            proptest::collection::vec(0..n, n * r),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(initial, table, bits)| {
                Dfa::new(n, r, initial, table, bits).expect("generated table is valid")
            })
    })
}

fn arb_word(r: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(0..r, 0..=max_len)
}

proptest! {
    // Reading u then v is reading uv: the defining law of the extension.
    #[test]
    fn word_extension_composes(a in arb_dfa(10, 3), seed in any::<u64>()) {
        let r = a.alphabet_size();
        let words = (seed as usize % 5, (seed >> 8) as usize % 5);
        let u: Vec<usize> = (0..words.0).map(|i| (seed as usize >> i) % r).collect();
        let v: Vec<usize> = (0..words.1).map(|i| (seed as usize >> (i + 3)) % r).collect();
        let start = StateSet::singleton(a.state_count(), a.initial_state());
        let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
        let via_both = a.read_word(&a.read_word(&start, &u).unwrap(), &v).unwrap();
        prop_assert_eq!(a.read_word(&start, &uv).unwrap(), via_both);
    }

    // Forward closure is an idempotent, one_step-stable superset.
    #[test]
    fn closure_is_a_stable_fixed_point(a in arb_dfa(12, 3), from in any::<u64>()) {
        let n = a.state_count();
        let start = StateSet::singleton(n, (from as usize) % n);
        let closure = a.forward_closure(&start).unwrap();
        prop_assert!(start.is_subset_of(&closure));
        prop_assert_eq!(a.forward_closure(&closure).unwrap(), closure.clone());
        let step = a.one_step(&closure).unwrap();
        prop_assert!(step.is_subset_of(&closure));
    }

    // Quotients simulate: the merge map commutes with reading any word, up
    // to inclusion.
    #[test]
    fn merges_simulate_the_source(a in arb_dfa(9, 3), pick in any::<u64>(), w in arb_word(2, 6)) {
        prop_assume!(a.state_count() >= 2);
        let n = a.state_count();
        let p = (pick as usize) % n;
        let q = ((pick >> 16) as usize) % n;
        prop_assume!(p != q);
        prop_assume!(a.terminates(p) == a.terminates(q));
        let psi = MergeMap::elementary(n, p, q);
        let merged = apply_merge(&a, &psi).unwrap();

        let w: Vec<usize> = w.iter().map(|&s| s % a.alphabet_size()).collect();
        let start = StateSet::singleton(n, a.initial_state());
        let reached = a.read_word(&start, &w).unwrap();
        let image_of_reached = psi.image_set(&reached);
        let start_m = StateSet::singleton(n - 1, psi.image(a.initial_state()));
        let reached_m = merged.read_word(&start_m, &w).unwrap();
        prop_assert!(image_of_reached.is_subset_of(&reached_m));
    }

    // Class structure is a function of the transition table alone.
    #[test]
    fn decomposition_ignores_termination(a in arb_dfa(10, 3), bits in any::<u64>()) {
        let n = a.state_count();
        let flipped: Vec<bool> = (0..n).map(|q| (bits >> (q % 64)) & 1 == 1).collect();
        let b = Dfa::new(
            n,
            a.alphabet_size(),
            a.initial_state(),
            a.transition_table().to_vec(),
            flipped,
        )
        .unwrap();
        let da = communicating_classes(&a).unwrap();
        let db = communicating_classes(&b).unwrap();
        prop_assert_eq!(da.classes(), db.classes());
        for idx in 0..da.class_count() {
            prop_assert_eq!(da.is_closed(idx), db.is_closed(idx));
            prop_assert_eq!(da.period(idx), db.period(idx));
        }
    }

    // The Tarjan/BFS decomposition agrees with the definitional oracle:
    // mutual reachability for classes, partition search for periods.
    #[test]
    fn decomposition_matches_naive_oracle(a in arb_dfa(10, 3)) {
        let d = communicating_classes(&a).unwrap();
        let expected = naive_classes(&a);
        prop_assert_eq!(d.classes(), &expected[..]);
        for (idx, class) in expected.iter().enumerate() {
            prop_assert_eq!(d.is_closed(idx), naive_is_closed(&a, class));
        }
        let closed = naive_closed_classes_with_periods(&a);
        let got: Vec<(Vec<usize>, usize)> = d
            .closed_class_indices()
            .map(|i| (d.class(i).to_vec(), d.period(i).unwrap()))
            .collect();
        prop_assert_eq!(got, closed);
        prop_assert_eq!(d.is_ergodic(), naive_is_ergodic(&a));
    }

    // Minimization at r = 2, small n: exact language equality by word
    // enumeration (words up to n_a + n_b suffice for DFA equality), minimal
    // state count certified by pairwise distinguishability.
    #[test]
    fn minimize_is_correct_small(a in arb_dfa(6, 2)) {
        let minimized = minimize(&a);
        let m = &minimized.dfa;
        prop_assert!(m.state_count() <= a.state_count());
        prop_assert!(languages_agree_up_to(&a, m, a.state_count() + m.state_count()));
        prop_assert_eq!(m.reachable_states().len(), m.state_count());
        prop_assert!(all_states_distinguishable(m, m.state_count()));
        // Idempotence on the nose for already-minimal input.
        let again = minimize(m);
        prop_assert!(again.trace.is_empty());
        prop_assert_eq!(&again.dfa, m);
    }

    // Product-construction equivalence agrees with exhaustive enumeration.
    #[test]
    fn equivalence_matches_word_oracle(a in arb_dfa(6, 2), b in arb_dfa(6, 2)) {
        let expected = languages_agree_up_to(&a, &b, a.state_count() + b.state_count());
        prop_assert_eq!(are_equivalent(&a, &b).unwrap(), expected);
    }

    // Same check over a three-symbol alphabet (smaller machines keep the
    // enumeration affordable).
    #[test]
    fn equivalence_matches_word_oracle_r3(a in arb_dfa(4, 3), b in arb_dfa(4, 3)) {
        prop_assume!(a.alphabet_size() == 3 && b.alphabet_size() == 3);
        let expected = languages_agree_up_to(&a, &b, a.state_count() + b.state_count());
        prop_assert_eq!(are_equivalent(&a, &b).unwrap(), expected);
    }

    // Trimming drops exactly the unreachable states and nothing else.
    #[test]
    fn trim_keeps_the_language(a in arb_dfa(8, 2)) {
        let (trimmed, map) = reachable_trim(&a);
        prop_assert_eq!(trimmed.reachable_states().len(), trimmed.state_count());
        prop_assert!(languages_agree_up_to(&a, &trimmed, a.state_count() + trimmed.state_count()));
        let kept = map.iter().filter(|m| m.is_some()).count();
        prop_assert_eq!(kept, trimmed.state_count());
    }

    // The trace's composed map is the fold of its step maps, and its final
    // automaton is the minimized DFA.
    #[test]
    fn trace_composition(a in arb_dfa(8, 2)) {
        let minimized = minimize(&a);
        let trace = &minimized.trace;
        let mut folded = MergeMap::identity(trace.initial().state_count());
        for step in trace.steps() {
            folded = folded.then(&step.map);
        }
        prop_assert_eq!(&folded, &trace.composed_map());
        let final_dfa = Dfa::try_from(trace.final_nfa()).unwrap();
        prop_assert_eq!(&final_dfa, &minimized.dfa);
        // The Nerode partition of the minimized DFA is all singletons.
        let blocks = myhill_nerode_classes(&minimized.dfa).unwrap();
        prop_assert!(blocks.blocks().iter().all(|b| b.len() == 1));
    }

    // Sampling is a pure function of the SampleSpec, and two specs differing
    // in trial index give different seeds.
    #[test]
    fn sampler_determinism(master in any::<u64>(), trial in any::<u64>(), n in 1usize..40) {
        let spec = SampleSpec { n, r: 2, master_seed: master, trial_index: trial };
        let a = sample_dfa(&spec).unwrap();
        let b = sample_dfa(&spec).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.state_count(), n);
        prop_assert_eq!(a.alphabet_size(), 2);
        prop_assert!(a.initial_state() < n);

        let other = trial.wrapping_add(1);
        prop_assert_ne!(derive_trial_seed(master, trial), derive_trial_seed(master, other));
    }
}
