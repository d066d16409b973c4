//! Multiplicative independence and close powers of two bases.
//!
//! [`approx_powers`] finds `m, n ≥ 1` with `|aᵐ − bⁿ| ≤ ε·bⁿ` by a pigeonhole
//! scan over the normalized powers `a'ˣ·b^(−f_x) ∈ [1, b)`, using exact
//! integer comparisons only.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Default number of scanned terms before [`approx_powers`] gives up.
pub const DEFAULT_MAX_TERMS: u64 = 10_000_000;

/// Prime factorization by trial division, smallest prime first.
pub fn factorize(mut x: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= x {
        if x.is_multiple_of(p) {
            let mut e = 0;
            while x.is_multiple_of(p) {
                x /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if x > 1 {
        factors.push((x, 1));
    }
    factors
}

/// The least `(m, n)` with `aᵐ = bⁿ`, if any.
///
/// `a` and `b` are dependent iff they have the same prime support and
/// proportional exponent vectors.
pub fn dependence_witness(a: u64, b: u64) -> Option<(u32, u32)> {
    let fa = factorize(a);
    let fb = factorize(b);
    if fa.is_empty() || fa.len() != fb.len() {
        return None;
    }
    if fa.iter().zip(&fb).any(|((p, _), (q, _))| p != q) {
        return None;
    }
    // a^m = b^n iff m·e_i = n·f_i for every prime; fix the ratio from the first.
    let (e0, f0) = (fa[0].1, fb[0].1);
    let g = e0.gcd(&f0);
    let (m, n) = (f0 / g, e0 / g);
    fa.iter()
        .zip(&fb)
        .all(|((_, e), (_, f))| m * e == n * f)
        .then_some((m, n))
}

/// True iff `aᵐ ≠ bⁿ` for all positive `m, n`.
pub fn multiplicatively_independent(a: u64, b: u64) -> bool {
    dependence_witness(a, b).is_none()
}

/// Exponents `(m, n)` with `|aᵐ − bⁿ| ≤ ε·bⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxPair {
    pub a: u64,
    pub b: u64,
    pub m: u32,
    pub n: u32,
    pub eps: BigRational,
}

impl ApproxPair {
    pub fn a_pow(&self) -> BigUint {
        BigUint::from(self.a).pow(self.m)
    }

    pub fn b_pow(&self) -> BigUint {
        BigUint::from(self.b).pow(self.n)
    }

    /// `aᵐ − bⁿ`, signed.
    pub fn difference(&self) -> BigInt {
        BigInt::from(self.a_pow()) - BigInt::from(self.b_pow())
    }

    /// `|aᵐ − bⁿ|`.
    pub fn gap(&self) -> BigUint {
        self.difference().abs().to_biguint().expect("absolute value")
    }

    /// Exact check of `|aᵐ − bⁿ| ≤ eps·bⁿ` for `eps = p/q`.
    pub fn satisfies(&self, eps: &BigRational) -> bool {
        within(&self.a_pow(), &self.b_pow(), eps)
    }
}

impl fmt::Display for ApproxPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}^{} - {}^{} = {}",
            self.a,
            self.m,
            self.b,
            self.n,
            self.difference()
        )
    }
}

fn within(a_pow: &BigUint, b_pow: &BigUint, eps: &BigRational) -> bool {
    let diff = if a_pow >= b_pow {
        a_pow - b_pow
    } else {
        b_pow - a_pow
    };
    let p = eps.numer().to_biguint().expect("positive eps");
    let q = eps.denom().to_biguint().expect("positive eps");
    diff * q <= p * b_pow
}

/// Finds `(m, n)` with `m, n ≥ 1` and `|aᵐ − bⁿ| ≤ eps·bⁿ`.
///
/// `a` is first replaced by its least power `a' = aᵏ ≥ b`. The terms
/// `uₓ = a'ˣ / b^(f_x)` are kept in `[1, b)` by dividing out `b` as needed, so
/// `f_x` strictly increases. `[1, b)` is cut into half-open cells of width
/// `eps`; the first cell hit twice, by `x < y`, gives `m = k(y − x)` and
/// `n = f_y − f_x`. Candidates are checked exactly and the scan continues past
/// any that fail.
pub fn approx_powers(a: u64, b: u64, eps: &BigRational, max_terms: u64) -> Result<ApproxPair> {
    if a < 2 || b < 2 {
        return Err(Error::InvalidArgument(format!(
            "bases must be at least 2, got {a} and {b}"
        )));
    }
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let p = eps.numer().to_biguint().expect("positive");
    let q = eps.denom().to_biguint().expect("positive");
    let big_a = BigUint::from(a);
    let big_b = BigUint::from(b);

    let mut k = 1u32;
    let mut a_prime = big_a.clone();
    while a_prime < big_b {
        a_prime *= a;
        k += 1;
    }

    // u_x = num / den with num = a'^x and den = b^(f_x).
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    let mut f: u64 = 0;
    let mut first_in_cell: HashMap<BigUint, (u64, u64)> = HashMap::new();

    for x in 0..max_terms {
        // cell = floor((u − 1)/eps) = floor((num − den)·q / (den·p))
        let cell = ((&num - &den) * &q).div_floor(&(&den * &p));
        match first_in_cell.get(&cell) {
            Some(&(x0, f0)) => {
                let m = u32::try_from(u64::from(k) * (x - x0))
                    .map_err(|_| Error::Resource("exponent m overflowed".into()))?;
                let n = u32::try_from(f - f0)
                    .map_err(|_| Error::Resource("exponent n overflowed".into()))?;
                let pair = ApproxPair {
                    a,
                    b,
                    m,
                    n,
                    eps: eps.clone(),
                };
                if pair.satisfies(eps) {
                    return Ok(pair);
                }
            }
            None => {
                first_in_cell.insert(cell, (x, f));
            }
        }
        num *= &a_prime;
        let limit = &den * &big_b;
        if num >= limit {
            den = limit;
            f += 1;
            while num >= &den * &big_b {
                den *= &big_b;
                f += 1;
            }
        }
    }
    Err(Error::Resource(format!(
        "no verified pair within {max_terms} terms"
    )))
}
