#![allow(dead_code)]

use cobham_core::dfao::{build_periodic_dfao, Dfao};

pub const BASE_PAIRS: [(u32, u32); 3] = [(2, 3), (2, 5), (3, 5)];

/// A preperiodic sequence given by its generator parameters.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub pre: Vec<String>,
    pub per: Vec<String>,
}

impl Fixture {
    pub fn automaton(&self, base: u32) -> Dfao {
        build_periodic_dfao(&self.pre, &self.per, base).unwrap()
    }

    pub fn value(&self, x: usize) -> &str {
        if x < self.pre.len() {
            &self.pre[x]
        } else {
            &self.per[(x - self.pre.len()) % self.per.len()]
        }
    }

    pub fn label(&self) -> String {
        format!("[{}]·[{}]^ω", self.pre.join(","), self.per.join(","))
    }
}

/// Every preperiod length ≤ 4 and period length ≤ 5. Periods alternate
/// between distinct tokens and a pattern with repeats, and preperiods reuse a
/// period token now and then, so minimal periods and preperiods vary.
pub fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for r in 0..=4usize {
        for q in 1..=5usize {
            let per: Vec<String> = if (r + q) % 2 == 0 {
                (0..q).map(|i| format!("v{i}")).collect()
            } else {
                (0..q).map(|i| format!("v{}", (i * i) % 3)).collect()
            };
            let pre = (0..r)
                .map(|i| if i % 3 == 1 { per[0].clone() } else { format!("p{i}") })
                .collect();
            out.push(Fixture { pre, per });
        }
    }
    out
}
