use std::collections::HashSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teachdim::teaching::{ExampleSet, LabeledExample};
use teachdim::universal::{
    elias_decode, elias_encode, format_bits, kt_learn, kt_step_bound, parse_bits, prop1_majorant,
    prop1_partial_sum, prop1_term, KtOutcome, NkVariant, TinyProgram, PROP1_BOUND,
};
use teachdim::BinaryString;

#[test]
fn programs_form_a_prefix_code() {
    let mut valid = HashSet::new();
    for len in 0..=18usize {
        for n in 0u32..1 << len {
            let bits: Vec<bool> = (0..len).rev().map(|b| n >> b & 1 == 1).collect();
            if TinyProgram::decode(&bits).is_ok() {
                valid.insert(bits);
            }
        }
    }
    assert!(valid.len() > 1000);
    for p in &valid {
        for cut in 0..p.len() {
            assert!(
                !valid.contains(&p[..cut]),
                "{} extends a program",
                format_bits(p)
            );
        }
    }
}

#[test]
fn elias_round_trip_and_length_law() {
    let mut by_len = vec![0u64; 32];
    for n in 1..1u64 << 11 {
        let code = elias_encode(n);
        assert_eq!(code.len() as u32, 2 * n.ilog2() + 1);
        by_len[code.len()] += 1;
    }
    for i in 0..=10 {
        assert_eq!(by_len[2 * i + 1], 1 << i);
    }
    for n in 1..=10_000u64 {
        assert_eq!(
            elias_decode(&elias_encode(n)).unwrap(),
            (n, elias_encode(n).len())
        );
    }
    let first: Vec<String> = (1..=4).map(|n| format_bits(&elias_encode(n))).collect();
    assert_eq!(first, ["1", "010", "011", "00100"]);
}

proptest! {
    #[test]
    fn elias_streams_decode_in_sequence(ns in proptest::collection::vec(1u64..1_000_000, 1..8)) {
        let stream: Vec<bool> = ns.iter().flat_map(|&n| elias_encode(n)).collect();
        let mut pos = 0;
        for &n in &ns {
            let (m, used) = elias_decode(&stream[pos..]).unwrap();
            prop_assert_eq!(m, n);
            pos += used;
        }
        prop_assert_eq!(pos, stream.len());
    }

    #[test]
    fn bit_literals_round_trip(bits in proptest::collection::vec(any::<bool>(), 0..40)) {
        prop_assert_eq!(parse_bits(&format_bits(&bits)).unwrap(), bits);
    }
}

#[test]
fn prop1_series_is_bounded_and_monotone() {
    let mut prev = 0.0;
    for i in 0..=60 {
        let s = prop1_partial_sum(i, NkVariant::Half);
        assert!(s >= prev);
        assert!(s <= PROP1_BOUND + 1e-12);
        assert!(prop1_term(i, NkVariant::Half) <= prop1_majorant(i) * (1.0 + 1e-12));
        prev = s;
    }
    // Terms shrink like 2^(-i/2), so the sum has settled by i = 60.
    assert!(prev - prop1_partial_sum(59, NkVariant::Half) < 1e-8);
    let majorant: f64 = (0..=200).map(prop1_majorant).sum();
    assert!((majorant - PROP1_BOUND).abs() < 1e-12);
}

fn random_set(rng: &mut ChaCha8Rng) -> ExampleSet {
    let mut s = ExampleSet::new();
    for _ in 0..rng.gen_range(0..=3) {
        let w = BinaryString::from_shortlex_index(rng.gen_range(0..7));
        if s.label(&w).is_none() {
            let label = rng.gen_bool(0.5);
            s.insert(LabeledExample { instance: w, label }).unwrap();
        }
    }
    s
}

#[test]
fn kt_learn_is_budget_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let s = random_set(&mut rng);
        let top = 13;
        let out = kt_learn(&s, top);
        assert!(u128::from(out.steps_executed()) <= kt_step_bound(top));
        let KtOutcome::Found { run, budget, .. } = out else {
            continue;
        };
        assert!(matches!(
            kt_learn(&s, budget - 1),
            KtOutcome::Exhausted { .. }
        ));
        for b in budget..=top {
            assert_eq!(
                kt_learn(&s, b).run().map(|r| r.program.clone()),
                Some(run.program.clone())
            );
        }
        let consistent = s.iter().all(|(w, l)| {
            let r = teachdim::universal::run_tiny(&run.program, w, run.total_steps);
            (r.halt == teachdim::universal::Halt::Accept) == l
                && r.halt != teachdim::universal::Halt::Timeout
        });
        assert!(consistent);
    }
}
