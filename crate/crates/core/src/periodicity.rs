//! Local periods on integer intervals.
//!
//! A sequence has local period `p` on `I` when `f_x = f_{x+p}` for all
//! `x, x + p ∈ I`. Two such claims whose intervals overlap in at least
//! `p + q` points combine into one claim over the union carrying `p`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// The inclusive interval `{lo, …, hi}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigUint,
    hi: BigUint,
}

impl Interval {
    pub fn new(lo: impl Into<BigUint>, hi: impl Into<BigUint>) -> Result<Self> {
        let (lo, hi) = (lo.into(), hi.into());
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// `{y ∈ ℕ : |y − center| ≤ radius}`, i.e. `[⌈center − radius⌉, ⌊center + radius⌋]`.
    pub fn ball(center: &BigRational, radius: &BigRational) -> Result<Self> {
        if radius.is_negative() || radius > center {
            return Err(Error::InvalidArgument(format!(
                "ball radius {radius} must lie in [0, {center}]"
            )));
        }
        let lo = (center - radius).ceil().to_integer();
        let hi = (center + radius).floor().to_integer();
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "ball of radius {radius} around {center} contains no integer"
            )));
        }
        Ok(Interval {
            lo: lo.to_biguint().expect("non-negative"),
            hi: hi.to_biguint().expect("non-negative"),
        })
    }

    pub fn lo(&self) -> &BigUint {
        &self.lo
    }

    pub fn hi(&self) -> &BigUint {
        &self.hi
    }

    pub fn len(&self) -> BigUint {
        &self.hi - &self.lo + 1u32
    }

    pub fn contains(&self, x: &BigUint) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Size of the intersection, zero when disjoint.
    pub fn overlap(&self, other: &Interval) -> BigUint {
        let lo = (&self.lo).max(&other.lo);
        let hi = (&self.hi).min(&other.hi);
        if lo > hi {
            BigUint::zero()
        } else {
            hi - lo + 1u32
        }
    }

    /// The union, if it is an interval (the two overlap or touch).
    pub fn union(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).min(&other.lo).clone();
        let hi = (&self.hi).max(&other.hi).clone();
        let gap_free = self.lo <= &other.hi + 1u32 && other.lo <= &self.hi + 1u32;
        gap_free.then_some(Interval { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A claimed local period on an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalClaim {
    pub interval: Interval,
    pub period: BigUint,
}

impl IntervalClaim {
    pub fn new(interval: Interval, period: impl Into<BigUint>) -> Result<Self> {
        let period = period.into();
        if period.is_zero() {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        Ok(IntervalClaim { interval, period })
    }
}

/// Checks `f_x = f_{x+p}` for every `x` with `x, x + p` in the interval.
pub fn check_local_period<T, F>(mut f: F, claim: &IntervalClaim) -> bool
where
    T: PartialEq,
    F: FnMut(&BigUint) -> T,
{
    let p = &claim.period;
    let hi = claim.interval.hi();
    let mut x = claim.interval.lo().clone();
    while &(&x + p) <= hi {
        if f(&x) != f(&(&x + p)) {
            return false;
        }
        x += 1u32;
    }
    true
}

/// Combines two verified claims into `(I ∪ J, p)`, requiring `|I ∩ J| ≥ p + q`.
///
/// Never looks at the sequence; soundness rests on both inputs having been
/// checked.
pub fn merge_claims(first: &IntervalClaim, second: &IntervalClaim) -> Result<IntervalClaim> {
    let overlap = first.interval.overlap(&second.interval);
    let needed = &first.period + &second.period;
    if overlap < needed {
        return Err(Error::MergePrecondition {
            overlap: overlap.to_string(),
            needed: needed.to_string(),
        });
    }
    let interval = first
        .interval
        .union(&second.interval)
        .expect("overlapping intervals have an interval union");
    Ok(IntervalClaim {
        interval,
        period: first.period.clone(),
    })
}

/// Left fold of [`merge_claims`]; the result carries the first claim's period.
pub fn glue_chain(claims: &[IntervalClaim]) -> Result<IntervalClaim> {
    let (head, rest) = claims
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("glue_chain needs at least one claim".into()))?;
    rest.iter()
        .enumerate()
        .try_fold(head.clone(), |acc, (i, claim)| {
            merge_claims(&acc, claim).map_err(|e| Error::GlueChain {
                index: i + 1,
                source: Box::new(e),
            })
        })
}

/// The least `(preperiod, period)`, ordered by preperiod then period, such
/// that `prefix` repeats with that period from the preperiod on and the
/// periodic tail spans at least three full periods.
pub fn minimal_ultimate_period<T: PartialEq>(prefix: &[T]) -> Option<(usize, usize)> {
    let len = prefix.len();
    for pre in 0..len {
        let tail = len - pre;
        for period in (1..=tail / 3).filter(|&p| p >= 1) {
            if (pre..len - period).all(|x| prefix[x] == prefix[x + period]) {
                return Some((pre, period));
            }
        }
    }
    None
}

/// Whether `p` divides `q` for positive big integers.
pub fn divides(p: &BigUint, q: &BigUint) -> bool {
    !p.is_zero() && q.is_multiple_of(p)
}

/// `center ± radius` geometry helper for rational multiples of an integer.
pub fn scaled(value: &BigUint, num: u32, den: u32) -> BigRational {
    BigRational::new(
        num_bigint::BigInt::from(value.clone()) * num,
        num_bigint::BigInt::from(den),
    )
}
