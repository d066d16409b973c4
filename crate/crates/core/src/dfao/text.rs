//! Line-oriented text format:
//!
//! ```text
//! base 2
//! digits 0 1 2 3 4        # optional, defaults to 0..base-1
//! reading lsd             # optional, defaults to msd
//! states 2
//! initial 0
//! outputs e o
//! trans 0 0 0
//! trans 0 1 1
//! ...
//! ```

use std::fmt;
use std::str::FromStr;

use super::{Dfao, Reading};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found {token:?}")))
}

impl Dfao {
    pub fn parse(text: &str) -> Result<Dfao> {
        let mut base: Option<u32> = None;
        let mut digits: Option<Vec<u32>> = None;
        let mut reading = Reading::MsdFirst;
        let mut states: Option<usize> = None;
        let mut initial: Option<usize> = None;
        let mut outputs: Option<Vec<String>> = None;
        let mut trans: Vec<(usize, usize, u32, usize)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = content.split_whitespace();
            let Some(keyword) = tokens.next() else {
                continue;
            };
            let args: Vec<&str> = tokens.collect();
            let single = |what: &str| -> Result<&str> {
                match args.as_slice() {
                    [one] => Ok(one),
                    _ => Err(parse_err(line, format!("`{keyword}` takes exactly one {what}"))),
                }
            };
            let once = |seen: bool| -> Result<()> {
                if seen {
                    Err(parse_err(line, format!("duplicate `{keyword}` line")))
                } else {
                    Ok(())
                }
            };
            match keyword {
                "base" => {
                    once(base.is_some())?;
                    base = Some(number(line, single("integer")?, "a base")?);
                }
                "digits" => {
                    once(digits.is_some())?;
                    let ds = args
                        .iter()
                        .map(|t| number(line, t, "a digit"))
                        .collect::<Result<Vec<u32>>>()?;
                    if ds.is_empty() {
                        return Err(parse_err(line, "`digits` needs at least one digit"));
                    }
                    digits = Some(ds);
                }
                "reading" => {
                    reading = match single("direction")? {
                        "msd" => Reading::MsdFirst,
                        "lsd" => Reading::LsdFirst,
                        other => {
                            return Err(parse_err(
                                line,
                                format!("unknown reading direction {other:?}"),
                            ))
                        }
                    };
                }
                "states" => {
                    once(states.is_some())?;
                    let k: usize = number(line, single("integer")?, "a state count")?;
                    if k == 0 {
                        return Err(parse_err(line, "state count must be positive"));
                    }
                    states = Some(k);
                }
                "initial" => {
                    once(initial.is_some())?;
                    initial = Some(number(line, single("integer")?, "a state index")?);
                }
                "outputs" => {
                    once(outputs.is_some())?;
                    outputs = Some(args.iter().map(|t| t.to_string()).collect());
                }
                "trans" => {
                    let [s, d, t] = args.as_slice() else {
                        return Err(parse_err(line, "`trans` takes <state> <digit> <state>"));
                    };
                    trans.push((
                        line,
                        number(line, s, "a state index")?,
                        number(line, d, "a digit")?,
                        number(line, t, "a state index")?,
                    ));
                }
                other => return Err(parse_err(line, format!("unknown keyword {other:?}"))),
            }
        }

        let end = text.lines().count().max(1);
        let base = base.ok_or_else(|| parse_err(end, "missing `base` line"))?;
        if base < 2 {
            return Err(parse_err(end, format!("base {base} is less than 2")));
        }
        let mut digits = digits.unwrap_or_else(|| (0..base).collect());
        digits.sort_unstable();
        if digits.windows(2).any(|w| w[0] == w[1]) {
            return Err(parse_err(end, "duplicate digit in `digits`"));
        }
        let states = states.ok_or_else(|| parse_err(end, "missing `states` line"))?;
        let initial = initial.ok_or_else(|| parse_err(end, "missing `initial` line"))?;
        if initial >= states {
            return Err(parse_err(end, format!("initial state {initial} out of range")));
        }
        let outputs = outputs.ok_or_else(|| parse_err(end, "missing `outputs` line"))?;
        if outputs.len() != states {
            return Err(parse_err(
                end,
                format!("{} outputs for {states} states", outputs.len()),
            ));
        }

        let width = digits.len();
        let mut table: Vec<Option<usize>> = vec![None; states * width];
        for (line, s, d, t) in trans {
            if s >= states {
                return Err(parse_err(line, format!("source state {s} out of range")));
            }
            if t >= states {
                return Err(parse_err(line, format!("target state {t} out of range")));
            }
            let Ok(j) = digits.binary_search(&d) else {
                return Err(parse_err(line, format!("digit {d} is not in the alphabet")));
            };
            let slot = &mut table[s * width + j];
            if slot.is_some() {
                return Err(parse_err(
                    line,
                    format!("duplicate transition for state {s} digit {d}"),
                ));
            }
            *slot = Some(t);
        }
        let table = table
            .iter()
            .enumerate()
            .map(|(k, t)| {
                t.ok_or_else(|| {
                    parse_err(
                        end,
                        format!(
                            "missing transition for state {} digit {}",
                            k / width,
                            digits[k % width]
                        ),
                    )
                })
            })
            .collect::<Result<Vec<usize>>>()?;

        Dfao::from_table(base, digits, initial, table, outputs, reading)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl FromStr for Dfao {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dfao::parse(s)
    }
}

impl fmt::Display for Dfao {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base {}", self.base)?;
        if !self.has_canonical_digits() {
            let ds: Vec<String> = self.digits.iter().map(u32::to_string).collect();
            writeln!(f, "digits {}", ds.join(" "))?;
        }
        if self.reading == Reading::LsdFirst {
            writeln!(f, "reading lsd")?;
        }
        writeln!(f, "states {}", self.state_count())?;
        writeln!(f, "initial {}", self.initial)?;
        writeln!(f, "outputs {}", self.outputs.join(" "))?;
        for s in 0..self.state_count() {
            for (j, d) in self.digits.iter().enumerate() {
                writeln!(f, "trans {s} {d} {}", self.step_index(s, j))?;
            }
        }
        Ok(())
    }
}
