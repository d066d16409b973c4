//! Deterministic finite automata with output (DFAOs) fed base-`c` digit words.

mod text;

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::numeration::canonical_repr;

/// Default cap on materialized states during reversal.
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// Which end of a digit word the automaton consumes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Reading {
    /// Most significant digit first. This is the usual convention; such
    /// automata must satisfy `δ(s₀, 0) = s₀`.
    #[default]
    MsdFirst,
    /// Least significant digit first. Such automata must have
    /// `F(δ(s, 0)) = F(s)` for every reachable state `s`.
    LsdFirst,
}

impl Reading {
    pub fn flipped(self) -> Self {
        match self {
            Reading::MsdFirst => Reading::LsdFirst,
            Reading::LsdFirst => Reading::MsdFirst,
        }
    }
}

/// A DFAO `(S, D, δ, s₀, F)` over a digit alphabet `D ⊇ {0, …, base − 1}`.
///
/// States are `0..state_count()`. Output tokens are opaque strings compared
/// by equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfao {
    base: u32,
    digits: Vec<u32>,
    initial: usize,
    /// Row-major `state * digits.len() + digit position`.
    table: Vec<usize>,
    outputs: Vec<String>,
    reading: Reading,
}

impl Dfao {
    /// Builds and validates an automaton. `transitions[s][i]` is the target of
    /// state `s` on `digits[i]`; `digits` must be strictly increasing.
    pub fn new(
        base: u32,
        digits: Vec<u32>,
        initial: usize,
        transitions: Vec<Vec<usize>>,
        outputs: Vec<String>,
        reading: Reading,
    ) -> Result<Self> {
        if transitions.len() != outputs.len() {
            return Err(Error::InvalidDfao(format!(
                "{} transition rows but {} outputs",
                transitions.len(),
                outputs.len()
            )));
        }
        let width = digits.len();
        let mut table = Vec::with_capacity(transitions.len() * width);
        for (s, row) in transitions.iter().enumerate() {
            if row.len() != width {
                return Err(Error::InvalidDfao(format!(
                    "state {s} has {} transitions, expected {width}",
                    row.len()
                )));
            }
            table.extend_from_slice(row);
        }
        Self::from_table(base, digits, initial, table, outputs, reading)
    }

    pub(crate) fn from_table(
        base: u32,
        digits: Vec<u32>,
        initial: usize,
        table: Vec<usize>,
        outputs: Vec<String>,
        reading: Reading,
    ) -> Result<Self> {
        let dfao = Dfao {
            base,
            digits,
            initial,
            table,
            outputs,
            reading,
        };
        dfao.validate()?;
        Ok(dfao)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDfao(msg));
        if self.base < 2 {
            return bad(format!("base {} is less than 2", self.base));
        }
        if self.digits.windows(2).any(|w| w[0] >= w[1]) {
            return bad("digits must be strictly increasing".into());
        }
        if let Some(d) = (0..self.base).find(|d| self.digits.binary_search(d).is_err()) {
            return bad(format!("digit alphabet is missing canonical digit {d}"));
        }
        let n = self.outputs.len();
        if n == 0 {
            return bad("automaton has no states".into());
        }
        if self.table.len() != n * self.digits.len() {
            return bad("transition table has the wrong size".into());
        }
        if self.initial >= n {
            return bad(format!("initial state {} out of range", self.initial));
        }
        if let Some(t) = self.table.iter().find(|&&t| t >= n) {
            return bad(format!("transition target {t} out of range"));
        }
        if let Some(tok) = self.outputs.iter().find(|t| !is_valid_token(t)) {
            return bad(format!("output token {tok:?} is empty or contains whitespace or '#'"));
        }
        match self.reading {
            Reading::MsdFirst => {
                if self.step(self.initial, 0) != self.initial {
                    return bad("initial state is not stable under digit 0".into());
                }
            }
            Reading::LsdFirst => {
                for s in self.reachable() {
                    if self.outputs[self.step(s, 0)] != self.outputs[s] {
                        return bad(format!(
                            "reading a high-order 0 from state {s} changes the output"
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn max_digit(&self) -> u32 {
        *self.digits.last().expect("digit alphabet is never empty")
    }

    /// True when the alphabet is exactly `{0, …, base − 1}`.
    pub fn has_canonical_digits(&self) -> bool {
        self.digits.len() == self.base as usize
    }

    pub fn state_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn reading(&self) -> Reading {
        self.reading
    }

    pub fn output(&self, state: usize) -> &str {
        &self.outputs[state]
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn digit_index(&self, digit: u32) -> Option<usize> {
        self.digits.binary_search(&digit).ok()
    }

    /// `δ(state, digit)`, or `None` if `digit` is not in the alphabet.
    pub fn next(&self, state: usize, digit: u32) -> Option<usize> {
        self.digit_index(digit)
            .map(|i| self.table[state * self.digits.len() + i])
    }

    fn step(&self, state: usize, digit: u32) -> usize {
        self.next(state, digit).expect("canonical digit in alphabet")
    }

    fn step_index(&self, state: usize, index: usize) -> usize {
        self.table[state * self.digits.len() + index]
    }

    /// `δ(s₀, word)`, consuming `word` left to right.
    pub fn run(&self, word: &[u32]) -> Result<usize> {
        self.run_from(self.initial, word)
    }

    pub fn run_from(&self, state: usize, word: &[u32]) -> Result<usize> {
        word.iter()
            .enumerate()
            .try_fold(state, |s, (position, &digit)| {
                self.next(s, digit)
                    .ok_or(Error::InvalidDigit { position, digit })
            })
    }

    /// State reached on the canonical representation of `x`, read in this
    /// automaton's direction.
    pub fn canonical_state(&self, x: &BigUint) -> usize {
        let mut word = canonical_repr(x, self.base);
        if self.reading == Reading::LsdFirst {
            word.reverse();
        }
        word.iter().fold(self.initial, |s, &d| self.step(s, d))
    }

    /// The sequence value `f_x`.
    pub fn evaluate(&self, x: &BigUint) -> &str {
        self.output(self.canonical_state(x))
    }

    /// The first `count` sequence values.
    pub fn prefix(&self, count: u64) -> Vec<String> {
        (0..count)
            .map(|x| self.evaluate(&BigUint::from(x)).to_owned())
            .collect()
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for j in 0..self.digits.len() {
                let t = self.step_index(s, j);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// States reached by the canonical representations of infinitely many
    /// naturals.
    ///
    /// A canonical word has no leading zero, so the search starts from the
    /// successors of `s₀` on non-zero digits. A state qualifies iff it is
    /// reachable along canonical digits from some state lying on a
    /// canonical-digit cycle that itself is reachable that way.
    pub fn infinite_canonical_states(&self) -> Result<BTreeSet<usize>> {
        if self.reading != Reading::MsdFirst {
            return Err(Error::InvalidArgument(
                "infinite_canonical_states needs a most-significant-first automaton".into(),
            ));
        }
        let n = self.state_count();
        let canon = |s: usize| (0..self.base).map(move |d| self.step(s, d));
        let closure = |start: Vec<usize>| {
            let mut seen = vec![false; n];
            let mut stack = start;
            while let Some(s) = stack.pop() {
                if !seen[s] {
                    seen[s] = true;
                    stack.extend(canon(s));
                }
            }
            seen
        };

        let entered = closure((1..self.base).map(|d| self.step(self.initial, d)).collect());
        let on_cycle: Vec<usize> = (0..n)
            .filter(|&s| entered[s] && closure(canon(s).collect())[s])
            .collect();
        let infinite = closure(on_cycle);
        Ok((0..n).filter(|&s| infinite[s]).collect())
    }

    /// An automaton reading digits from the opposite end that produces the
    /// same output on every word.
    ///
    /// States of the result are the reachable maps `s ↦ δ(s, v)` for the
    /// suffixes `v` read so far. When the result reads most significant digit
    /// first and its initial state is not fixed by digit 0, a fresh initial
    /// state looping on 0 is added.
    pub fn reverse_reading(&self, max_states: usize) -> Result<Dfao> {
        let n = self.state_count();
        let width = self.digits.len();
        let mut maps: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(maps[0].clone(), 0);
        let mut table = Vec::new();

        let mut i = 0;
        while i < maps.len() {
            for j in 0..width {
                let next: Vec<usize> = (0..n).map(|s| maps[i][self.step_index(s, j)]).collect();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if maps.len() >= max_states {
                            return Err(Error::Resource(format!(
                                "reversal exceeded {max_states} states"
                            )));
                        }
                        index.insert(next.clone(), maps.len());
                        maps.push(next);
                        maps.len() - 1
                    }
                };
                table.push(id);
            }
            i += 1;
        }

        let mut outputs: Vec<String> = maps
            .iter()
            .map(|g| self.outputs[g[self.initial]].clone())
            .collect();
        let reading = self.reading.flipped();
        let mut initial = 0;

        let zero = self.digit_index(0).expect("0 is always a digit");
        if reading == Reading::MsdFirst && table[zero] != 0 {
            let mut row = table[..width].to_vec();
            row[zero] = maps.len();
            table.extend(row);
            outputs.push(outputs[0].clone());
            initial = maps.len();
        }

        let reversed = Dfao {
            base: self.base,
            digits: self.digits.clone(),
            initial,
            table,
            outputs,
            reading,
        };
        Ok(reversed.trim())
    }

    /// Drops unreachable states and renumbers the rest in breadth-first order
    /// from the initial state, which becomes state 0.
    pub fn trim(&self) -> Dfao {
        let order = self.reachable();
        let mut rename = vec![usize::MAX; self.state_count()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        let width = self.digits.len();
        let table = order
            .iter()
            .flat_map(|&s| (0..width).map(move |j| (s, j)))
            .map(|(s, j)| rename[self.step_index(s, j)])
            .collect();
        Dfao {
            base: self.base,
            digits: self.digits.clone(),
            initial: 0,
            table,
            outputs: order.iter().map(|&s| self.outputs[s].clone()).collect(),
            reading: self.reading,
        }
    }

    /// Merges output-equivalent states (Moore partition refinement) after
    /// trimming.
    pub fn minimize(&self) -> Dfao {
        let trimmed = self.trim();
        let n = trimmed.state_count();
        let width = trimmed.digits.len();

        let mut class = vec![0usize; n];
        let mut by_output: HashMap<&str, usize> = HashMap::new();
        for (c, output) in class.iter_mut().zip(&trimmed.outputs) {
            let next = by_output.len();
            *c = *by_output.entry(output.as_str()).or_insert(next);
        }
        let mut classes = by_output.len();
        loop {
            let mut signatures: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut refined = vec![0usize; n];
            for s in 0..n {
                let mut sig = Vec::with_capacity(width + 1);
                sig.push(class[s]);
                sig.extend((0..width).map(|j| class[trimmed.step_index(s, j)]));
                let next = signatures.len();
                refined[s] = *signatures.entry(sig).or_insert(next);
            }
            let count = signatures.len();
            class = refined;
            if count == classes {
                break;
            }
            classes = count;
        }

        let mut representative = vec![usize::MAX; classes];
        for s in (0..n).rev() {
            representative[class[s]] = s;
        }
        let table = representative
            .iter()
            .flat_map(|&s| (0..width).map(move |j| (s, j)))
            .map(|(s, j)| class[trimmed.step_index(s, j)])
            .collect();
        let quotient = Dfao {
            base: trimmed.base,
            digits: trimmed.digits.clone(),
            initial: class[trimmed.initial],
            table,
            outputs: representative
                .iter()
                .map(|&s| trimmed.outputs[s].clone())
                .collect(),
            reading: trimmed.reading,
        };
        quotient.trim()
    }
}

fn is_valid_token(token: &str) -> bool {
    !token.is_empty() && !token.contains(|c: char| c.is_whitespace() || c == '#')
}

/// The automaton for the sequence `preperiod` followed by `period` repeated
/// forever, over canonical digits in `base`.
///
/// States track `x` exactly while `x < preperiod.len()` and `x mod q`
/// afterwards, under the update `x ↦ x·base + d`.
pub fn build_periodic_dfao<S: AsRef<str>>(
    preperiod: &[S],
    period: &[S],
    base: u32,
) -> Result<Dfao> {
    if period.is_empty() {
        return Err(Error::InvalidArgument("period must be non-empty".into()));
    }
    if base < 2 {
        return Err(Error::InvalidArgument(format!("base {base} is less than 2")));
    }
    let r = preperiod.len() as u64;
    let q = period.len() as u64;
    let b = u64::from(base);

    // States 0..r are exact values below r; state r + j is "x ≥ r, x ≡ j (mod q)".
    let state_of = |x: u64| if x < r { x } else { r + x % q };
    let mut transitions = Vec::new();
    let mut outputs = Vec::new();
    for s in 0..r + q {
        let row = (0..b)
            .map(|d| {
                let next = if s < r {
                    state_of(s * b + d)
                } else {
                    r + ((s - r) * b + d) % q
                };
                next as usize
            })
            .collect();
        transitions.push(row);
        let token = if s < r {
            preperiod[s as usize].as_ref()
        } else {
            // x ≡ s − r (mod q), position in the period is (x − r) mod q.
            let residue = s - r;
            period[((residue + q - r % q) % q) as usize].as_ref()
        };
        outputs.push(token.to_owned());
    }
    let dfao = Dfao::new(
        base,
        (0..base).collect(),
        0,
        transitions,
        outputs,
        Reading::MsdFirst,
    )?;
    Ok(dfao.trim())
}
