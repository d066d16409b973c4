//! Browser bindings for the interactive demo in `www/`.
//!
//! Each exported function returns a JSON string; the page renders it.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cobham_core::approx::{self, DEFAULT_MAX_TERMS};
use cobham_core::cobham::{self, ExtractConfig};
use cobham_core::dfao::build_periodic_dfao;
use cobham_core::periodicity::minimal_ultimate_period;

/// Extraction inputs from the page are kept small enough to stay interactive.
const MAX_TOKENS: usize = 8;
const MAX_PREFIX: u32 = 4096;

fn split(list: &str) -> Vec<&str> {
    list.split_whitespace().collect()
}

fn check_sizes(pre: &[&str], per: &[&str]) -> Result<(), String> {
    if pre.len() > MAX_TOKENS || per.len() > MAX_TOKENS {
        return Err(format!("at most {MAX_TOKENS} tokens per list"));
    }
    Ok(())
}

pub fn sequence_json(pre: &str, per: &str, base: u32, count: u32) -> Result<Value, String> {
    let (pre, per) = (split(pre), split(per));
    check_sizes(&pre, &per)?;
    let dfao = build_periodic_dfao(&pre, &per, base).map_err(|e| e.to_string())?;
    let tokens = dfao.prefix(count.min(MAX_PREFIX).into());
    let minimal = minimal_ultimate_period(&tokens);
    Ok(json!({
        "tokens": tokens,
        "states": dfao.state_count(),
        "dfao": dfao.to_text(),
        "preperiod": minimal.map(|(r, _)| r),
        "period": minimal.map(|(_, q)| q),
    }))
}

pub fn approx_json(a: u32, b: u32, eps: &str) -> Result<Value, String> {
    let eps: BigRational = eps
        .trim()
        .parse()
        .map_err(|_| format!("eps must be a fraction p/q, got {eps:?}"))?;
    if eps <= BigRational::from_integer(BigInt::from(0)) {
        return Err("eps must be positive".into());
    }
    let pair = approx::approx_powers(a.into(), b.into(), &eps, DEFAULT_MAX_TERMS)
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "m": pair.m,
        "n": pair.n,
        "a_pow": pair.a_pow().to_string(),
        "b_pow": pair.b_pow().to_string(),
        "difference": pair.difference().to_string(),
        "independent": approx::multiplicatively_independent(a.into(), b.into()),
    }))
}

pub fn certificate_json(pre: &str, per: &str, a: u32, b: u32, window: u32) -> Result<Value, String> {
    let (pre, per) = (split(pre), split(per));
    check_sizes(&pre, &per)?;
    let fa = build_periodic_dfao(&pre, &per, a).map_err(|e| e.to_string())?;
    let fb = build_periodic_dfao(&pre, &per, b).map_err(|e| e.to_string())?;
    let cert = cobham::extract(&fa, &fb, &ExtractConfig::default()).map_err(|e| e.to_string())?;
    let report = cobham::verify_certificate(&fb, &cert, window.into(), 200, 0);
    let trace = &cert.trace;
    let witnesses: Vec<Value> = trace
        .witnesses
        .iter()
        .map(|w| json!({ "s": w.s, "t": w.t, "x": w.x, "y": w.y }))
        .collect();
    let periods: Vec<Value> = trace
        .periods
        .iter()
        .map(|(s, p)| json!({ "s": s, "p": p.to_string() }))
        .collect();
    Ok(json!({
        "threshold": cert.threshold.to_string(),
        "period": cert.period.to_string(),
        "xi": trace.xi,
        "eps": trace.eps.to_string(),
        "m": trace.approx.m,
        "n": trace.approx.n,
        "x_start": trace.x_start.to_string(),
        "witnesses": witnesses,
        "periods": periods,
        "certificate": cert.to_string(),
        "verified": report.passed(),
        "checked": report.checked,
        "counterexample": report.counterexample.as_ref().map(BigUint::to_string),
    }))
}

fn to_js(result: Result<Value, String>) -> Result<String, JsValue> {
    result
        .map(|v| v.to_string())
        .map_err(|e| JsValue::from_str(&e))
}

/// First `count` values of `pre` followed by `per` repeated, via its base-`base` automaton.
#[wasm_bindgen]
pub fn sequence_prefix(pre: &str, per: &str, base: u32, count: u32) -> Result<String, JsValue> {
    to_js(sequence_json(pre, per, base, count))
}

/// Exponents with `|aᵐ − bⁿ| ≤ eps·bⁿ`.
#[wasm_bindgen]
pub fn power_approximation(a: u32, b: u32, eps: &str) -> Result<String, JsValue> {
    to_js(approx_json(a, b, eps))
}

/// Certificate for the sequence built in bases `a` and `b`, checked on `window` indices.
#[wasm_bindgen]
pub fn extract_certificate(
    pre: &str,
    per: &str,
    a: u32,
    b: u32,
    window: u32,
) -> Result<String, JsValue> {
    to_js(certificate_json(pre, per, a, b, window))
}
