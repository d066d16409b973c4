//! Acceptance criteria, one pass/fail line each.

mod common;

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cobham_core::approx::{approx_powers, multiplicatively_independent, DEFAULT_MAX_TERMS};
use cobham_core::cobham::{
    extract_with_automata, teleport_check_exhaustive, verify_certificate, ExtractConfig,
    ExtractionTrace,
};
use cobham_core::dfao::{build_periodic_dfao, DEFAULT_MAX_STATES};
use cobham_core::numeration::{eval_word, extend_digits, DigitSet};
use cobham_core::periodicity::{
    check_local_period, merge_claims, minimal_ultimate_period, Interval, IntervalClaim,
};
use common::{fixtures, BASE_PAIRS};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || {
        format!("took {:?}, limit {:?}", start.elapsed(), limit)
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let eps = BigRational::new(BigInt::from(1), BigInt::from(12));
    let pair = approx_powers(2, 3, &eps, DEFAULT_MAX_TERMS).map_err(|e| e.to_string())?;
    let (am, bn) = (BigUint::from(2u32).pow(pair.m), BigUint::from(3u32).pow(pair.n));
    let gap = if am > bn { &am - &bn } else { &bn - &am };
    ensure(pair.m >= 1 && pair.n >= 1 && gap.clone() * 12u32 <= bn, || {
        format!("({}, {}) fails the bound", pair.m, pair.n)
    })?;

    let mut oracle = Vec::new();
    for m in 1..=64u32 {
        for n in 1..=64u32 {
            let (am, bn) = (BigUint::from(2u32).pow(m), BigUint::from(3u32).pow(n));
            let gap = if am > bn { &am - &bn } else { &bn - &am };
            if gap * 12u32 <= bn {
                oracle.push((m, n));
            }
        }
    }
    ensure(oracle.contains(&(19, 12)), || "oracle misses (19, 12)".into())?;
    within_time(start, Duration::from_secs(5))?;
    Ok(format!(
        "(m, n) = ({}, {}), |2^m - 3^n| = {gap}; oracle finds {} pairs with m, n <= 64",
        pair.m,
        pair.n,
        oracle.len()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let parity = build_periodic_dfao::<&str>(&[], &["e", "o"], 2).unwrap();
    let ext = extend_digits(&parity, DigitSet::extended(2).unwrap(), DEFAULT_MAX_STATES)
        .map_err(|e| e.to_string())?;
    let direct = |w: &[u32]| if eval_word(w, 2).is_odd() { "o" } else { "e" };

    let mut words: Vec<Vec<u32>> = vec![vec![]];
    let mut layer: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..4 {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..=4).map(move |d| {
                    let mut w = w.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
        words.extend(layer.iter().cloned());
    }
    let exhaustive = words.len();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let len = rng.gen_range(0..=32);
        words.push((0..len).map(|_| rng.gen_range(0..=4)).collect());
    }
    for w in &words {
        let got = ext.output(ext.run(w).map_err(|e| e.to_string())?);
        ensure(got == direct(w), || format!("word {w:?}: {got} != {}", direct(w)))?;
    }
    within_time(start, Duration::from_secs(5))?;
    Ok(format!("{exhaustive} exhaustive + 1000 random words agree"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let len = 160usize;
    for instance in 0..1000 {
        let p = rng.gen_range(1..10usize);
        let q = rng.gen_range(1..10usize);
        let i_lo = rng.gen_range(0..50);
        let i_hi = rng.gen_range(i_lo + p + q - 1..110);
        let j_lo = rng.gen_range(i_lo..=i_hi + 1 - (p + q));
        let j_hi = rng.gen_range(i_hi.max(j_lo + p + q - 1)..len);

        // Fill the overlap with a gcd(p, q)-periodic pattern and extend along
        // residues; values outside I ∪ J stay random.
        let g = p.gcd(&q);
        let pattern: Vec<u8> = (0..g).map(|_| rng.gen_range(0..6)).collect();
        let mut f: Vec<u8> = (0..len).map(|_| rng.gen_range(0..6)).collect();
        for x in j_lo..=i_hi {
            f[x] = pattern[x % g];
        }
        let rep = |x: usize, m: usize| (j_lo..=i_hi).find(|y| y % m == x % m).unwrap();
        for x in i_lo..=i_hi {
            f[x] = f[rep(x, p)];
        }
        for x in j_lo..=j_hi {
            f[x] = f[rep(x, q)];
        }

        let claim = |lo: usize, hi: usize, p: usize| {
            IntervalClaim::new(Interval::new(lo as u64, hi as u64).unwrap(), p as u64).unwrap()
        };
        let (c1, c2) = (claim(i_lo, i_hi, p), claim(j_lo, j_hi, q));
        let lookup = |x: &BigUint| f[usize::try_from(x).unwrap()];
        ensure(check_local_period(lookup, &c1) && check_local_period(lookup, &c2), || {
            format!("instance {instance}: generated inputs are not verified")
        })?;
        let merged = merge_claims(&c1, &c2).map_err(|e| e.to_string())?;
        ensure(check_local_period(lookup, &merged), || {
            format!("instance {instance}: merged claim fails")
        })?;
    }
    within_time(start, Duration::from_secs(5))?;
    Ok("1000/1000 merged claims hold".into())
}

/// Largest `n` with `2cⁿ ≤ 10⁴`.
fn window_exponent(c: u32) -> u32 {
    (1..).take_while(|&n| 2 * c.pow(n) <= 10_000).last().unwrap()
}

/// Independent recomputation of the three trace inequalities.
fn trace_inequalities(trace: &ExtractionTrace) -> Result<(), String> {
    let am = BigInt::from(trace.base_a).pow(trace.approx.m);
    let bn = BigInt::from(trace.base_b).pow(trace.approx.n);
    let gap = (&am - &bn).magnitude().clone();
    let bn_u = bn.magnitude().clone();
    ensure(gap.clone() * trace.xi * 6u32 <= bn_u, || "6ξ|a^m - b^n| > b^n".into())?;
    ensure(bn_u.clone() * 5u32 <= am.magnitude() * 6u32, || "5b^n > 6a^m".into())?;
    for w in &trace.witnesses {
        let p = BigInt::from(w.x as i128 - w.y as i128) * (&am - &bn);
        ensure(p > BigInt::zero() && p.magnitude() * 6u32 <= bn_u, || {
            format!("p_st for state {} outside (0, b^n/6]", w.s)
        })?;
        ensure(trace.periods.get(&w.s) == Some(p.magnitude()), || {
            format!("recorded p_st for state {} disagrees", w.s)
        })?;
    }
    Ok(())
}

struct SuiteOutcome {
    c4: Outcome,
    c5: Outcome,
    c7: Outcome,
}

fn fixture_suite() -> SuiteOutcome {
    let start = Instant::now();
    let mut pairs = 0;
    let mut witnesses = 0;
    let mut c4: Result<(), String> = Ok(());
    let mut c5: Result<(), String> = Ok(());
    let mut c7: Result<(), String> = Ok(());

    for fixture in fixtures() {
        let truth: Vec<&str> = (0..500).map(|x| fixture.value(x)).collect();
        let (_, min_period) = minimal_ultimate_period(&truth).expect("fixture is periodic");
        for (a, b) in BASE_PAIRS {
            pairs += 1;
            let label = format!("{} in bases ({a}, {b})", fixture.label());
            let (fa, fb) = (fixture.automaton(a), fixture.automaton(b));
            let (cert, ext) = match extract_with_automata(&fa, &fb, &ExtractConfig::default()) {
                Ok(done) => done,
                Err(e) => {
                    c5 = c5.and(Err(format!("{label}: {e}")));
                    continue;
                }
            };

            if c5.is_ok() {
                let period = &cert.period;
                if period.is_zero() || !(period % min_period).is_zero() {
                    c5 = Err(format!("{label}: period {period} not a multiple of {min_period}"));
                }
                for dfao in [&fa, &fb] {
                    let report = verify_certificate(dfao, &cert, 1000, 1000, 0);
                    if !report.passed() {
                        c5 = Err(format!("{label}: verification fails at {:?}", report.counterexample));
                    }
                }
            }

            if c7.is_ok() {
                c7 = trace_inequalities(&cert.trace).map_err(|e| format!("{label}: {e}"));
            }

            for w in &cert.trace.witnesses {
                witnesses += 1;
                let (x, y) = (BigUint::from(w.x), BigUint::from(w.y));
                for (dfao, state, c) in [(&ext.b, w.s, b), (&ext.a, w.t, a)] {
                    let n = window_exponent(c);
                    let ok = teleport_check_exhaustive(dfao, state, &x, &y, n);
                    if c4.is_ok() && ok != Ok(true) {
                        c4 = Err(format!("{label}: witness {w:?} in base {c}: {ok:?}"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    if c5.is_ok() && pairs < 20 {
        c5 = Err(format!("only {pairs} fixture pairs"));
    }
    if c5.is_ok() && elapsed >= Duration::from_secs(60) {
        c5 = Err(format!("suite took {elapsed:?}, limit 60s"));
    }
    SuiteOutcome {
        c4: c4.map(|_| format!("{witnesses} witnesses, both bases, exhaustive windows")),
        c5: c5.map(|_| format!("{pairs} fixture pairs certified and verified in {elapsed:.1?}")),
        c7: c7.map(|_| format!("{pairs} traces satisfy all three inequalities")),
    }
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    for a in 2..=64u64 {
        for b in 2..=64u64 {
            let dependent = (1..=32u32).any(|m| {
                let am = BigUint::from(a).pow(m);
                (1..=32u32).any(|n| BigUint::from(b).pow(n) == am)
            });
            ensure(multiplicatively_independent(a, b) != dependent, || {
                format!("disagreement at ({a}, {b})")
            })?;
        }
    }
    within_time(start, Duration::from_secs(5))?;
    Ok("3969 base pairs agree with the brute-force scan".into())
}

fn main() {
    let suite = fixture_suite();
    let results = [
        ("1 power approximation (2, 3, 1/12)", criterion_1()),
        ("2 digit-set extension equivalence", criterion_2()),
        ("3 local-period merge soundness", criterion_3()),
        ("4 teleport identity on witnesses", suite.c4),
        ("5 end-to-end certificates", suite.c5),
        ("6 independence oracle", criterion_6()),
        ("7 trace arithmetic", suite.c7),
    ];
    let mut failed = 0;
    for (name, result) in &results {
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {name}: {reason}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
