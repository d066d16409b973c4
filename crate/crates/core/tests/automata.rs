mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use cobham_core::dfao::{build_periodic_dfao, Dfao, Reading, DEFAULT_MAX_STATES};
use cobham_core::numeration::{canonical_repr, eval_word, extend_digits, restrict_digits, DigitSet};
use cobham_core::periodicity::minimal_ultimate_period;
use common::fixtures;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Random leading-zero-stable automata with at most 5 states in base 2 or 3.
fn small_dfao() -> impl Strategy<Value = Dfao> {
    (2u32..=3, 1usize..=5).prop_flat_map(|(base, states)| {
        let width = base as usize;
        (
            prop::collection::vec(0..states, states * width),
            prop::collection::vec(prop::sample::select(vec!["a", "b", "c"]), states),
        )
            .prop_map(move |(mut targets, outputs)| {
                targets[0] = 0;
                let rows = targets.chunks(width).map(<[usize]>::to_vec).collect();
                Dfao::new(
                    base,
                    (0..base).collect(),
                    0,
                    rows,
                    outputs.into_iter().map(String::from).collect(),
                    Reading::MsdFirst,
                )
                .unwrap()
            })
    })
}

fn words_up_to(alphabet: u32, len: usize) -> Vec<Vec<u32>> {
    let mut all = vec![vec![]];
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..alphabet).map(move |d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn run_folds_over_concatenation(
        dfao in small_dfao(),
        u in prop::collection::vec(0u32..2, 0..12),
        v in prop::collection::vec(0u32..2, 0..12),
    ) {
        let uv: Vec<u32> = u.iter().chain(&v).copied().collect();
        let mid = dfao.run(&u).unwrap();
        prop_assert_eq!(dfao.run(&uv).unwrap(), dfao.run_from(mid, &v).unwrap());
    }

    #[test]
    fn infinite_states_match_brute_force(dfao in small_dfao()) {
        let b = u64::from(dfao.base());
        let k = dfao.state_count() as u32;
        let seen: BTreeSet<usize> = (b.pow(k)..b.pow(k + 2))
            .map(|x| dfao.canonical_state(&big(x)))
            .collect();
        prop_assert_eq!(dfao.infinite_canonical_states().unwrap(), seen);
    }

    #[test]
    fn reversal_preserves_outputs(dfao in small_dfao()) {
        let lsd = dfao.reverse_reading(DEFAULT_MAX_STATES).unwrap();
        let back = lsd.reverse_reading(DEFAULT_MAX_STATES).unwrap();
        let top = u64::from(dfao.base()).pow(8);
        for x in 0..top {
            let x = big(x);
            prop_assert_eq!(lsd.evaluate(&x), dfao.evaluate(&x));
            prop_assert_eq!(back.evaluate(&x), dfao.evaluate(&x));
        }
    }

    #[test]
    fn extension_matches_word_values(dfao in small_dfao()) {
        let base = dfao.base();
        let ext = extend_digits(&dfao, DigitSet::extended(base).unwrap(), DEFAULT_MAX_STATES).unwrap();
        for w in words_up_to(2 * base + 1, 4) {
            let expected = dfao.evaluate(&eval_word(&w, base));
            prop_assert_eq!(ext.output(ext.run(&w).unwrap()), expected);
        }
        let back = restrict_digits(&ext, DigitSet::canonical(base).unwrap()).unwrap();
        for x in 0..500u64 {
            prop_assert_eq!(back.evaluate(&big(x)), dfao.evaluate(&big(x)));
        }
    }

    #[test]
    fn text_format_round_trips(dfao in small_dfao()) {
        prop_assert_eq!(Dfao::parse(&dfao.to_text()).unwrap(), dfao);
    }

    #[test]
    fn extension_on_long_random_words(word in prop::collection::vec(0u32..=6, 0..40)) {
        let dfao = build_periodic_dfao(&["a", "b"], &["x", "y", "z"], 3).unwrap();
        let ext = extend_digits(&dfao, DigitSet::extended(3).unwrap(), DEFAULT_MAX_STATES).unwrap();
        prop_assert_eq!(ext.output(ext.run(&word).unwrap()), dfao.evaluate(&eval_word(&word, 3)));
    }
}

#[test]
fn leading_zeros_do_not_change_outputs() {
    for fixture in fixtures().iter().step_by(4) {
        for base in [2, 3] {
            let dfao = fixture.automaton(base);
            for x in 0..10_000u64 {
                let word = canonical_repr(&big(x), base);
                let expected = dfao.evaluate(&big(x));
                for k in 1..=3 {
                    let padded: Vec<u32> = std::iter::repeat_n(0, k).chain(word.iter().copied()).collect();
                    assert_eq!(dfao.output(dfao.run(&padded).unwrap()), expected);
                }
            }
        }
    }
}

#[test]
fn generator_matches_table() {
    for fixture in fixtures() {
        for base in [2, 3, 5] {
            let dfao = fixture.automaton(base);
            for x in 0..1000usize {
                assert_eq!(dfao.evaluate(&big(x as u64)), fixture.value(x), "{}", fixture.label());
            }
        }
    }
}

#[test]
fn generator_at_a_million() {
    let dfao = build_periodic_dfao(&["3"], &["1", "2"], 3).unwrap();
    let table: Vec<&str> = (0..=1_000_000usize)
        .map(|x| if x == 0 { "3" } else if x % 2 == 1 { "1" } else { "2" })
        .collect();
    assert_eq!(dfao.evaluate(&big(1_000_000)), table[1_000_000]);
}

#[test]
fn oracle_period_divides_generator_period() {
    for fixture in fixtures() {
        for base in [2, 3] {
            let prefix = fixture.automaton(base).prefix(500);
            let (r, q) = minimal_ultimate_period(&prefix).unwrap();
            assert!(r <= fixture.pre.len(), "{}", fixture.label());
            assert_eq!(fixture.per.len() % q, 0, "{}", fixture.label());
        }
    }
    let prefix = build_periodic_dfao(&["a", "b"], &["x", "y", "z"], 2).unwrap().prefix(200);
    assert_eq!(minimal_ultimate_period(&prefix), Some((2, 3)));
}
