//! Eventual-periodicity certificates from two automata for one sequence.
//!
//! Given DFAOs for the same sequence in multiplicatively independent bases
//! `a` and `b`, [`extract`] builds a threshold `N₀` and a period `p` with
//! `f_x = f_{x+p}` for all `x ≥ N₀`, together with every intermediate
//! quantity used to obtain them.
//!
//! The construction rests on one identity: if `x` and `y` drive an automaton
//! over extended digits `{0, …, 2c}` into the same state, then
//! `f(x·cⁿ + z) = f(y·cⁿ + z)` for every `z ≤ 2cⁿ` (see [`teleport_check`]).
//! Pairs `x ≠ y` sharing a state in both bases, together with powers
//! `aᵐ ≈ bⁿ`, yield local periods `p_st = (x − y)(aᵐ − bⁿ)` on the intervals
//! `I_y = ball((y + 1)bⁿ, ⅔bⁿ)`. Consecutive intervals overlap enough for
//! these local periods to glue into one.

mod format;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::approx::{approx_powers, dependence_witness, ApproxPair, DEFAULT_MAX_TERMS};
use crate::dfao::{Dfao, Reading, DEFAULT_MAX_STATES};
use crate::error::{Error, Result};
use crate::numeration::{extend_digits, represent_in_window, restrict_digits, DigitSet};
use crate::periodicity::{glue_chain, Interval, IntervalClaim};

/// Search limits for [`extract`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractConfig {
    /// Largest index examined while looking for state-pair witnesses.
    pub witness_cap: u64,
    /// The two automata must agree on every `x` below this bound.
    pub sanity_bound: u64,
    pub approx_max_terms: u64,
    pub max_states: usize,
    /// Number of consecutive intervals glued as a consistency check.
    pub chain_len: usize,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig {
            witness_cap: 1_000_000,
            sanity_bound: 10_000,
            approx_max_terms: DEFAULT_MAX_TERMS,
            max_states: DEFAULT_MAX_STATES,
            chain_len: 8,
        }
    }
}

/// Two distinct indices whose canonical runs end in state `s` of the
/// extended base-`b` automaton and state `t` of the extended base-`a` one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePairWitness {
    pub s: usize,
    pub t: usize,
    pub x: u64,
    pub y: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub base_a: u32,
    pub base_b: u32,
    /// State counts of the extended-digit automata.
    pub states_a: usize,
    pub states_b: usize,
    pub s_infinity: BTreeSet<usize>,
    /// One witness per state of `s_infinity`, oriented so that
    /// `(x − y)(aᵐ − bⁿ) > 0`.
    pub witnesses: Vec<StatePairWitness>,
    pub xi: u64,
    pub eps: BigRational,
    pub approx: ApproxPair,
    /// `p_st` for each `s` in `s_infinity`.
    pub periods: BTreeMap<usize, BigUint>,
    pub x_start: BigUint,
}

impl ExtractionTrace {
    pub fn b_pow(&self) -> BigUint {
        self.approx.b_pow()
    }

    /// `I_y = ball((y + 1)·bⁿ, ⅔·bⁿ)`.
    pub fn interval(&self, y: &BigUint) -> Interval {
        let bn = BigInt::from(self.b_pow());
        let center = BigRational::from_integer((BigInt::from(y.clone()) + 1) * &bn);
        let radius = BigRational::new(bn * 2, BigInt::from(3));
        Interval::ball(&center, &radius).expect("radius below center")
    }

    /// The three exact inequalities every trace must satisfy:
    /// `6ξ·|aᵐ − bⁿ| ≤ bⁿ`, `5bⁿ ≤ 6aᵐ` and `0 < 6·p_st ≤ bⁿ`.
    pub fn check_arithmetic(&self) -> std::result::Result<(), String> {
        let bn = self.approx.b_pow();
        let am = self.approx.a_pow();
        let gap = self.approx.gap();
        if gap.clone() * self.xi * 6u32 > bn {
            return Err(format!("6·ξ·|a^m − b^n| = {} exceeds b^n = {bn}", gap * self.xi * 6u32));
        }
        if bn.clone() * 5u32 > am * 6u32 {
            return Err("5·b^n exceeds 6·a^m".into());
        }
        for (s, p) in &self.periods {
            if p.is_zero() || p * 6u32 > bn {
                return Err(format!("p_st = {p} for state {s} is outside (0, b^n/6]"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodCertificate {
    /// `N₀`: the sequence is `period`-periodic from here on.
    pub threshold: BigUint,
    pub period: BigUint,
    pub trace: ExtractionTrace,
}

/// The extended-digit automata built during extraction.
#[derive(Debug, Clone)]
pub struct ExtendedPair {
    pub a: Dfao,
    pub b: Dfao,
}

pub fn extract(dfao_a: &Dfao, dfao_b: &Dfao, config: &ExtractConfig) -> Result<PeriodCertificate> {
    extract_with_automata(dfao_a, dfao_b, config).map(|(cert, _)| cert)
}

fn extend_to_window_digits(dfao: &Dfao, max_states: usize) -> Result<Dfao> {
    if dfao.reading() != Reading::MsdFirst {
        return Err(Error::InvalidArgument(
            "extraction needs most-significant-first automata".into(),
        ));
    }
    let base = dfao.base();
    let canonical = if dfao.has_canonical_digits() {
        dfao.clone()
    } else {
        restrict_digits(dfao, DigitSet::canonical(base)?)?
    };
    extend_digits(&canonical, DigitSet::extended(base)?, max_states)
}

/// [`extract`], also returning the extended automata the witnesses refer to.
pub fn extract_with_automata(
    dfao_a: &Dfao,
    dfao_b: &Dfao,
    config: &ExtractConfig,
) -> Result<(PeriodCertificate, ExtendedPair)> {
    let (a, b) = (dfao_a.base(), dfao_b.base());
    if let Some((m, n)) = dependence_witness(a.into(), b.into()) {
        return Err(Error::DependentBases {
            a: a.into(),
            b: b.into(),
            m,
            n,
        });
    }
    for x in 0..config.sanity_bound {
        let x_big = BigUint::from(x);
        let (left, right) = (dfao_a.evaluate(&x_big), dfao_b.evaluate(&x_big));
        if left != right {
            return Err(Error::SequenceMismatch {
                x,
                left: left.into(),
                right: right.into(),
            });
        }
    }

    let ext_a = extend_to_window_digits(dfao_a, config.max_states)?;
    let ext_b = extend_to_window_digits(dfao_b, config.max_states)?;
    let s_infinity = ext_b.infinite_canonical_states()?;

    // Smallest x, then smallest y, sharing (s, t).
    let mut first_seen: HashMap<(usize, usize), u64> = HashMap::new();
    let mut found: BTreeMap<usize, StatePairWitness> = BTreeMap::new();
    let mut x = 0u64;
    while found.len() < s_infinity.len() {
        if x > config.witness_cap {
            let missing: Vec<String> = s_infinity
                .iter()
                .filter(|s| !found.contains_key(s))
                .map(usize::to_string)
                .collect();
            return Err(Error::Resource(format!(
                "no witness below {} for states {}",
                config.witness_cap,
                missing.join(", ")
            )));
        }
        let x_big = BigUint::from(x);
        let s = ext_b.canonical_state(&x_big);
        if s_infinity.contains(&s) && !found.contains_key(&s) {
            let t = ext_a.canonical_state(&x_big);
            match first_seen.get(&(s, t)) {
                Some(&earlier) => {
                    found.insert(s, StatePairWitness { s, t, x: earlier, y: x });
                }
                None => {
                    first_seen.insert((s, t), x);
                }
            }
        }
        x += 1;
    }

    let xi = found.values().map(|w| w.x.max(w.y)).max().unwrap_or(0) + 1;
    let eps = BigRational::new(BigInt::from(1), BigInt::from(6 * xi));
    let approx = approx_powers(a.into(), b.into(), &eps, config.approx_max_terms)?;
    let difference = approx.difference();
    if difference.is_zero() {
        return Err(Error::Resource("power approximation returned a^m = b^n".into()));
    }
    let gap = approx.gap();

    let mut witnesses = Vec::with_capacity(found.len());
    let mut periods = BTreeMap::new();
    for (s, mut w) in found {
        // p_st = (x − y)(aᵐ − bⁿ) must be positive.
        if (w.x > w.y) != difference.is_positive() {
            std::mem::swap(&mut w.x, &mut w.y);
        }
        periods.insert(s, BigUint::from(w.x.abs_diff(w.y)) * &gap);
        witnesses.push(w);
    }

    let x_start = BigUint::from(b).pow(ext_b.state_count() as u32);
    let trace = ExtractionTrace {
        base_a: a,
        base_b: b,
        states_a: ext_a.state_count(),
        states_b: ext_b.state_count(),
        s_infinity,
        witnesses,
        xi,
        eps,
        approx,
        periods,
        x_start,
    };
    trace.check_arithmetic().map_err(Error::InvalidArgument)?;

    let period_at = |y: &BigUint| -> Result<&BigUint> {
        let s = ext_b.canonical_state(y);
        trace.periods.get(&s).ok_or_else(|| {
            Error::InvalidArgument(format!("index {y} reaches state {s}, which is not in S∞"))
        })
    };
    let claims = (0..config.chain_len.max(1) as u32)
        .map(|k| {
            let y = &trace.x_start + k;
            IntervalClaim::new(trace.interval(&y), period_at(&y)?.clone())
        })
        .collect::<Result<Vec<_>>>()?;
    let chain = glue_chain(&claims)?;

    let certificate = PeriodCertificate {
        threshold: chain.interval.lo().clone(),
        period: chain.period,
        trace,
    };
    Ok((certificate, ExtendedPair { a: ext_a, b: ext_b }))
}

/// Outcome of [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub checked: u64,
    /// The first failing `x` (window before samples), if any.
    pub counterexample: Option<BigUint>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `f_x = f_{x+p}` on `[N₀, N₀ + window]` and on `samples` seeded
/// pseudo-random `x` in `[N₀, N₀ + 10·bⁿ]`.
pub fn verify_certificate(
    dfao: &Dfao,
    cert: &PeriodCertificate,
    window: u64,
    samples: u64,
    seed: u64,
) -> VerificationReport {
    let holds = |x: &BigUint| dfao.evaluate(x) == dfao.evaluate(&(x + &cert.period));
    let mut checked = 0;
    for k in 0..=window {
        let x = &cert.threshold + k;
        checked += 1;
        if !holds(&x) {
            return VerificationReport {
                checked,
                counterexample: Some(x),
            };
        }
    }
    let span = cert.trace.b_pow() * 10u32 + 1u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = &cert.threshold + rng.gen_biguint_below(&span);
        checked += 1;
        if !holds(&x) {
            return VerificationReport {
                checked,
                counterexample: Some(x),
            };
        }
    }
    VerificationReport {
        checked,
        counterexample: None,
    }
}

fn teleport_over(
    dfao_ext: &Dfao,
    s: usize,
    x: &BigUint,
    y: &BigUint,
    n: u32,
    zs: impl Iterator<Item = BigUint>,
) -> Result<bool> {
    let c = dfao_ext.base();
    for (name, v) in [("x", x), ("y", y)] {
        let reached = dfao_ext.canonical_state(v);
        if reached != s {
            return Err(Error::InvalidArgument(format!(
                "{name} = {v} reaches state {reached}, not {s}"
            )));
        }
    }
    let digits = DigitSet::extended(c)?;
    if dfao_ext.reading() != Reading::MsdFirst || dfao_ext.max_digit() < digits.max_digit() {
        return Err(Error::InvalidArgument(
            "teleport_check needs a most-significant-first automaton over {0..2c}".into(),
        ));
    }
    let cn = BigUint::from(c).pow(n);
    let (xc, yc) = (x * &cn, y * &cn);
    for z in zs {
        let word = represent_in_window(&z, c, n as usize, digits)?;
        let via_state = dfao_ext.output(dfao_ext.run_from(s, &word)?);
        let at_x = dfao_ext.evaluate(&(&xc + &z));
        let at_y = dfao_ext.evaluate(&(&yc + &z));
        if at_x != at_y || via_state != at_x {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tests `f(x·cⁿ + z) = f(y·cⁿ + z)` for `trials` seeded random
/// `z ∈ [0, 2cⁿ]`, where `x` and `y` both reach state `s` of `dfao_ext`.
/// Each `z` is also fed from `s` as an `n`-digit window word.
pub fn teleport_check(
    dfao_ext: &Dfao,
    s: usize,
    x: &BigUint,
    y: &BigUint,
    n: u32,
    trials: u64,
    seed: u64,
) -> Result<bool> {
    let bound = BigUint::from(dfao_ext.base()).pow(n) * 2u32 + 1u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zs = (0..trials).map(move |_| rng.gen_biguint_below(&bound));
    teleport_over(dfao_ext, s, x, y, n, zs)
}

/// [`teleport_check`] over every `z ∈ [0, 2cⁿ]`.
pub fn teleport_check_exhaustive(
    dfao_ext: &Dfao,
    s: usize,
    x: &BigUint,
    y: &BigUint,
    n: u32,
) -> Result<bool> {
    let top = BigUint::from(dfao_ext.base()).pow(n) * 2u32;
    let mut z = BigUint::zero();
    let zs = std::iter::from_fn(move || {
        (z <= top).then(|| {
            let current = z.clone();
            z += 1u32;
            current
        })
    });
    teleport_over(dfao_ext, s, x, y, n, zs)
}
