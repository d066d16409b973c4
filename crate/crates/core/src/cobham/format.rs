//! Text serialization of certificates. All integers are decimal; ε is `p/q`.
//!
//! ```text
//! cobham-certificate 1
//! threshold <N₀>
//! period <p>
//! base_a <a>
//! base_b <b>
//! states_a <count>
//! states_b <count>
//! s_infinity <s> ...
//! witness <s> <t> <x> <y>
//! xi <ξ>
//! eps <p>/<q>
//! approx <m> <n>
//! pst <s> <p_st>
//! x_start <x>
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;

use super::{ExtractionTrace, PeriodCertificate, StatePairWitness};
use crate::approx::ApproxPair;
use crate::error::{Error, Result};

const HEADER: &str = "cobham-certificate 1";

impl fmt::Display for PeriodCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.trace;
        writeln!(f, "{HEADER}")?;
        writeln!(f, "threshold {}", self.threshold)?;
        writeln!(f, "period {}", self.period)?;
        writeln!(f, "base_a {}", t.base_a)?;
        writeln!(f, "base_b {}", t.base_b)?;
        writeln!(f, "states_a {}", t.states_a)?;
        writeln!(f, "states_b {}", t.states_b)?;
        let s_inf: Vec<String> = t.s_infinity.iter().map(usize::to_string).collect();
        writeln!(f, "s_infinity {}", s_inf.join(" "))?;
        for w in &t.witnesses {
            writeln!(f, "witness {} {} {} {}", w.s, w.t, w.x, w.y)?;
        }
        writeln!(f, "xi {}", t.xi)?;
        writeln!(f, "eps {}/{}", t.eps.numer(), t.eps.denom())?;
        writeln!(f, "approx {} {}", t.approx.m, t.approx.n)?;
        for (s, p) in &t.periods {
            writeln!(f, "pst {s} {p}")?;
        }
        writeln!(f, "x_start {}", t.x_start)
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn num<T: FromStr>(line: usize, token: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| err(line, format!("expected a number, found {token:?}")))
}

#[derive(Default)]
struct Fields {
    threshold: Option<BigUint>,
    period: Option<BigUint>,
    base_a: Option<u32>,
    base_b: Option<u32>,
    states_a: Option<usize>,
    states_b: Option<usize>,
    s_infinity: Option<BTreeSet<usize>>,
    witnesses: Vec<StatePairWitness>,
    xi: Option<u64>,
    eps: Option<BigRational>,
    approx: Option<(u32, u32)>,
    periods: BTreeMap<usize, BigUint>,
    x_start: Option<BigUint>,
}

fn set<T>(slot: &mut Option<T>, value: T, line: usize, key: &str) -> Result<()> {
    if slot.replace(value).is_some() {
        return Err(err(line, format!("duplicate `{key}` line")));
    }
    Ok(())
}

impl FromStr for PeriodCertificate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, HEADER)) => {}
            Some((line, other)) => return Err(err(line, format!("unexpected header {other:?}"))),
            None => return Err(err(1, "empty certificate")),
        }

        let mut f = Fields::default();
        for (line, content) in lines {
            let mut tokens = content.split_whitespace();
            let key = tokens.next().unwrap_or_default();
            let args: Vec<&str> = tokens.collect();
            let one = || -> Result<&str> {
                match args.as_slice() {
                    [v] => Ok(v),
                    _ => Err(err(line, format!("`{key}` takes one value"))),
                }
            };
            match key {
                "threshold" => set(&mut f.threshold, num(line, one()?)?, line, key)?,
                "period" => set(&mut f.period, num(line, one()?)?, line, key)?,
                "base_a" => set(&mut f.base_a, num(line, one()?)?, line, key)?,
                "base_b" => set(&mut f.base_b, num(line, one()?)?, line, key)?,
                "states_a" => set(&mut f.states_a, num(line, one()?)?, line, key)?,
                "states_b" => set(&mut f.states_b, num(line, one()?)?, line, key)?,
                "s_infinity" => {
                    let states = args
                        .iter()
                        .map(|t| num(line, t))
                        .collect::<Result<BTreeSet<usize>>>()?;
                    set(&mut f.s_infinity, states, line, key)?;
                }
                "witness" => {
                    let [s, t, x, y] = args.as_slice() else {
                        return Err(err(line, "`witness` takes <s> <t> <x> <y>"));
                    };
                    f.witnesses.push(StatePairWitness {
                        s: num(line, s)?,
                        t: num(line, t)?,
                        x: num(line, x)?,
                        y: num(line, y)?,
                    });
                }
                "xi" => set(&mut f.xi, num(line, one()?)?, line, key)?,
                "eps" => {
                    let eps: BigRational = one()?
                        .parse()
                        .map_err(|_| err(line, "eps must be a fraction p/q"))?;
                    set(&mut f.eps, eps, line, key)?;
                }
                "approx" => {
                    let [m, n] = args.as_slice() else {
                        return Err(err(line, "`approx` takes <m> <n>"));
                    };
                    set(&mut f.approx, (num(line, m)?, num(line, n)?), line, key)?;
                }
                "pst" => {
                    let [s, p] = args.as_slice() else {
                        return Err(err(line, "`pst` takes <s> <p>"));
                    };
                    if f.periods.insert(num(line, s)?, num(line, p)?).is_some() {
                        return Err(err(line, format!("duplicate `pst` for state {s}")));
                    }
                }
                "x_start" => set(&mut f.x_start, num(line, one()?)?, line, key)?,
                other => return Err(err(line, format!("unknown key {other:?}"))),
            }
        }

        let end = text.lines().count();
        let need = |name: &str| err(end, format!("missing `{name}`"));
        let base_a = f.base_a.ok_or_else(|| need("base_a"))?;
        let base_b = f.base_b.ok_or_else(|| need("base_b"))?;
        let eps = f.eps.ok_or_else(|| need("eps"))?;
        let (m, n) = f.approx.ok_or_else(|| need("approx"))?;
        let period = f.period.ok_or_else(|| need("period"))?;
        if period == BigUint::ZERO {
            return Err(err(end, "period must be positive"));
        }
        Ok(PeriodCertificate {
            threshold: f.threshold.ok_or_else(|| need("threshold"))?,
            period,
            trace: ExtractionTrace {
                base_a,
                base_b,
                states_a: f.states_a.ok_or_else(|| need("states_a"))?,
                states_b: f.states_b.ok_or_else(|| need("states_b"))?,
                s_infinity: f.s_infinity.ok_or_else(|| need("s_infinity"))?,
                witnesses: f.witnesses,
                xi: f.xi.ok_or_else(|| need("xi"))?,
                approx: ApproxPair {
                    a: base_a.into(),
                    b: base_b.into(),
                    m,
                    n,
                    eps: eps.clone(),
                },
                eps,
                periods: f.periods,
                x_start: f.x_start.ok_or_else(|| need("x_start"))?,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobham::{extract, ExtractConfig};
    use crate::dfao::build_periodic_dfao;

    #[test]
    fn certificate_round_trip() {
        let fa = build_periodic_dfao(&["3"], &["1", "2"], 2).unwrap();
        let fb = build_periodic_dfao(&["3"], &["1", "2"], 3).unwrap();
        let cert = extract(&fa, &fb, &ExtractConfig::default()).unwrap();
        let text = cert.to_string();
        let parsed: PeriodCertificate = text.parse().unwrap();
        assert_eq!(parsed, cert);
        assert_eq!(parsed.to_string(), text);
    }

    #[test]
    fn rejects_malformed() {
        assert!("".parse::<PeriodCertificate>().is_err());
        assert!("cobham-certificate 1\nperiod 0\n".parse::<PeriodCertificate>().is_err());
        let err = "cobham-certificate 1\nbogus 3\n".parse::<PeriodCertificate>().unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
