//! Property-based invariants over randomized structures.

use num_traits::Zero;
use proptest::prelude::*;

use dihp_lab::csp::{self, Constraint, Instance, Predicate};
use dihp_lab::matching::{EdgeTuple, LabeledMatching};
use dihp_lab::ratio::{rat_from_string, rat_to_string, Rat};
use dihp_lab::rectangle::structure::{contains_cycle_exhaustive, contains_cycle_peeling};
use dihp_lab::Caps;

fn arb_instance() -> impl Strategy<Value = Instance> {
    (2usize..=3, 2usize..=3).prop_flat_map(|(alphabet, arity)| {
        let num_vars = arity.max(2) + 2;
        let table_len = alphabet.pow(arity as u32);
        let tables = proptest::collection::vec(any::<bool>(), table_len..=table_len);
        let constraint = proptest::sample::subsequence((0..num_vars).collect::<Vec<_>>(), arity)
            .prop_shuffle();
        let constraints = proptest::collection::vec(constraint, 1..=4);
        (tables, constraints).prop_map(move |(table, tuples)| {
            let pred = Predicate::new("p", arity, alphabet, table).unwrap();
            let constraints = tuples
                .into_iter()
                .map(|vars| Constraint { vars, predicate: 0 })
                .collect();
            Instance::new(
                alphabet,
                arity,
                (0..num_vars).map(|i| format!("v{i}")).collect(),
                vec![pred],
                constraints,
            )
            .unwrap()
        })
    })
}

proptest! {
    #[test]
    fn instance_json_round_trip(inst in arb_instance()) {
        let json = csp::instance_to_json(&inst);
        let back = csp::instance_from_json(&json).unwrap();
        prop_assert_eq!(back.content_hash(), inst.content_hash());
    }

    #[test]
    fn eval_assignment_is_a_constraint_fraction(inst in arb_instance(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let tau: Vec<usize> = (0..inst.num_vars()).map(|_| rng.gen_range(0..inst.alphabet)).collect();
        let v = csp::eval_assignment(&inst, &tau).unwrap();
        prop_assert!(v >= Rat::zero());
        prop_assert!(v <= dihp_lab::ratio::rat_int(1));
        // denominator divides m
        let m = num_bigint::BigInt::from(inst.num_constraints());
        prop_assert!((m % v.denom()).is_zero());
    }

    #[test]
    fn lp_value_dominates_random_assignments(inst in arb_instance(), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let lp = dihp_lab::lp::lp_value(&inst).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..5 {
            let tau: Vec<usize> = (0..inst.num_vars()).map(|_| rng.gen_range(0..inst.alphabet)).collect();
            prop_assert!(lp >= csp::eval_assignment(&inst, &tau).unwrap());
        }
    }

    #[test]
    fn rational_string_round_trip(n in any::<i64>(), d in 1i64..1_000_000) {
        let r = dihp_lab::ratio::rat(n, d);
        prop_assert_eq!(rat_from_string(&rat_to_string(&r)).unwrap(), r);
    }

    #[test]
    fn labeled_matching_serde_round_trip(
        picks in proptest::collection::vec((0usize..3, 0usize..3, 0u8..4, 0u8..4), 0..3)
    ) {
        // Build a matching in the 3×3 universe {0,1,2}×{10,11,12}, dropping
        // colliding picks.
        let mut entries: Vec<(EdgeTuple, Vec<u8>)> = Vec::new();
        let mut used_a = Vec::new();
        let mut used_b = Vec::new();
        for (a, b, l0, l1) in picks {
            if used_a.contains(&a) || used_b.contains(&b) {
                continue;
            }
            used_a.push(a);
            used_b.push(b);
            entries.push((vec![a as u32, 10 + b as u32], vec![l0, l1]));
        }
        let lm = LabeledMatching::new(entries).unwrap();
        let json = serde_json::to_string(&lm).unwrap();
        let back: LabeledMatching = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, lm);
    }

    #[test]
    fn peeling_agrees_with_subset_oracle(
        k in 2usize..=3,
        raw_edges in proptest::collection::vec(proptest::collection::vec(0u32..8, 3), 1..5)
    ) {
        let edges: Vec<EdgeTuple> = raw_edges
            .into_iter()
            .filter_map(|mut e| {
                e.truncate(k);
                e.sort_unstable();
                e.dedup();
                if e.len() == k { Some(e) } else { None }
            })
            .collect();
        if !edges.is_empty() {
            prop_assert_eq!(
                contains_cycle_peeling(&edges, k),
                contains_cycle_exhaustive(&edges, k)
            );
        }
    }

    #[test]
    fn max_value_within_bounds(inst in arb_instance()) {
        let v = csp::max_value(&inst, &Caps::default()).unwrap();
        prop_assert!(v >= Rat::zero());
        prop_assert!(v <= dihp_lab::ratio::rat_int(1));
    }
}
