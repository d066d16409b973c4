//! Base-`c` words: evaluation, canonical expansion, fixed-length windows over
//! extended digits, and digit-set extension/restriction for automata.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::dfao::{Dfao, Reading};
use crate::error::{Error, Result};

/// The contiguous digit alphabet `{0, …, max_digit}` for a base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DigitSet {
    base: u32,
    max_digit: u32,
}

impl DigitSet {
    pub fn new(base: u32, max_digit: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidArgument(format!("base {base} is less than 2")));
        }
        if max_digit + 1 < base {
            return Err(Error::InvalidArgument(format!(
                "digit set {{0..{max_digit}}} does not contain all canonical digits of base {base}"
            )));
        }
        Ok(DigitSet { base, max_digit })
    }

    pub fn canonical(base: u32) -> Result<Self> {
        Self::new(base, base.saturating_sub(1))
    }

    /// `{0, …, 2·base}`: every value in `[0, 2·baseⁿ]` has an `n`-digit word.
    pub fn extended(base: u32) -> Result<Self> {
        Self::new(base, 2 * base)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn max_digit(&self) -> u32 {
        self.max_digit
    }

    pub fn digits(&self) -> Vec<u32> {
        (0..=self.max_digit).collect()
    }

    /// Largest value of an `len`-digit word: `max_digit·(baseˡᵉⁿ − 1)/(base − 1)`.
    pub fn window_max(&self, len: usize) -> BigUint {
        let b = BigUint::from(self.base);
        (b.pow(len as u32) - 1u32) / (self.base - 1) * self.max_digit
    }
}

/// `w₀·bⁿ⁻¹ + … + wₙ₋₁`; digits may exceed `base − 1`.
pub fn eval_word(word: &[u32], base: u32) -> BigUint {
    word.iter()
        .fold(BigUint::zero(), |acc, &d| acc * base + d)
}

/// The base-`base` expansion of `x` without leading zeros; empty for 0.
pub fn canonical_repr(x: &BigUint, base: u32) -> Vec<u32> {
    if x.is_zero() {
        return Vec::new();
    }
    x.to_radix_be(base)
        .into_iter()
        .map(u32::from)
        .collect()
}

/// A word of exactly `len` digits from `digit_set` whose value is `z`.
///
/// Digits are chosen greedily from the most significant end, each the largest
/// one that still leaves a representable remainder.
pub fn represent_in_window(
    z: &BigUint,
    base: u32,
    len: usize,
    digit_set: DigitSet,
) -> Result<Vec<u32>> {
    if digit_set.base != base {
        return Err(Error::InvalidArgument(format!(
            "digit set is for base {}, not {base}",
            digit_set.base
        )));
    }
    let max = digit_set.window_max(len);
    if *z > max {
        return Err(Error::WindowOverflow {
            value: z.to_string(),
            len,
            max: max.to_string(),
        });
    }
    let b = BigUint::from(base);
    let mut residual = z.clone();
    let mut word = Vec::with_capacity(len);
    for k in (0..len).rev() {
        let place = b.pow(k as u32);
        let (q, _) = residual.div_rem(&place);
        let d = q
            .to_u32()
            .map_or(digit_set.max_digit, |q| q.min(digit_set.max_digit));
        residual -= place * d;
        word.push(d);
    }
    debug_assert!(residual.is_zero());
    Ok(word)
}

/// An automaton over `digit_set` computing the same sequence as `dfao`, which
/// must read most significant digit first over canonical digits.
///
/// The input is reversed to read least significant digit first, composed with
/// a carry that normalizes each extended digit to a canonical one (flushing
/// the final carry's digits at the end), and reversed back.
pub fn extend_digits(dfao: &Dfao, digit_set: DigitSet, max_states: usize) -> Result<Dfao> {
    let base = dfao.base();
    if digit_set.base != base {
        return Err(Error::InvalidArgument(format!(
            "digit set is for base {}, automaton has base {base}",
            digit_set.base
        )));
    }
    if !dfao.has_canonical_digits() || dfao.reading() != Reading::MsdFirst {
        return Err(Error::InvalidArgument(
            "extend_digits needs a most-significant-first automaton over canonical digits".into(),
        ));
    }

    let lsd = dfao.reverse_reading(max_states)?.minimize();
    let max_carry = digit_set.max_digit.div_ceil(base - 1);

    let flush = |mut state: usize, mut carry: u32| {
        while carry > 0 {
            state = lsd.next(state, carry % base).expect("canonical digit");
            carry /= base;
        }
        state
    };

    let digits = digit_set.digits();
    let mut pairs = vec![(lsd.initial(), 0u32)];
    let mut index: HashMap<(usize, u32), usize> = HashMap::from([((lsd.initial(), 0), 0)]);
    let mut queue = VecDeque::from([0usize]);
    let mut rows: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(id) = queue.pop_front() {
        let (state, carry) = pairs[id];
        let mut row = Vec::with_capacity(digits.len());
        for &d in &digits {
            let total = d + carry;
            let next = (
                lsd.next(state, total % base).expect("canonical digit"),
                total / base,
            );
            debug_assert!(next.1 <= max_carry);
            let target = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                rows.push(Vec::new());
                queue.push_back(pairs.len() - 1);
                pairs.len() - 1
            });
            row.push(target);
        }
        rows[id] = row;
        if pairs.len() > max_states {
            return Err(Error::Resource(format!(
                "carry product exceeded {max_states} states"
            )));
        }
    }
    let outputs = pairs
        .iter()
        .map(|&(s, k)| lsd.output(flush(s, k)).to_owned())
        .collect();
    let carried = Dfao::new(base, digits, 0, rows, outputs, Reading::LsdFirst)?.minimize();

    Ok(carried.reverse_reading(max_states)?.minimize())
}

/// The same automaton with transitions on digits outside `digit_set` removed.
pub fn restrict_digits(dfao: &Dfao, digit_set: DigitSet) -> Result<Dfao> {
    if digit_set.base != dfao.base() {
        return Err(Error::InvalidArgument(format!(
            "digit set is for base {}, automaton has base {}",
            digit_set.base,
            dfao.base()
        )));
    }
    let kept = digit_set.digits();
    if let Some(d) = kept.iter().find(|&&d| dfao.digit_index(d).is_none()) {
        return Err(Error::InvalidArgument(format!(
            "digit {d} is not in the automaton's alphabet"
        )));
    }
    let rows = (0..dfao.state_count())
        .map(|s| {
            kept.iter()
                .map(|&d| dfao.next(s, d).expect("checked above"))
                .collect()
        })
        .collect();
    Dfao::new(
        dfao.base(),
        kept,
        dfao.initial(),
        rows,
        dfao.outputs().to_vec(),
        dfao.reading(),
    )
}

/// `baseⁿ` as a big integer.
pub fn power(base: u32, n: u32) -> BigUint {
    BigUint::from(base).pow(n)
}

/// `{0, …, 2·baseⁿ}` has at least `baseⁿ + 1` elements, the window size used
/// when teleporting.
pub fn window_bound(base: u32, n: u32) -> BigUint {
    power(base, n) * 2u32
}
