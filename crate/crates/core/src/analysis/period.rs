use serde::Serialize;

use crate::words::{FiniteWord, Symbol};
use crate::{Error, Result};

/// A candidate eventual period: `x_{a+n} = x_{a+n+b}` for all `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PeriodWitness {
    /// Preperiod.
    pub a: usize,
    /// Period length, at least 1.
    pub b: usize,
}

impl PeriodWitness {
    /// Whether the relation holds on every index the prefix can see.
    pub fn is_valid_on(&self, prefix: &[Symbol]) -> bool {
        self.b > 0
            && prefix
                .get(self.a..)
                .is_some_and(|tail| tail.iter().zip(&tail[self.b.min(tail.len())..]).all(|(x, y)| x == y))
    }
}

/// Searches the box `a ≤ a_max`, `1 ≤ b ≤ b_max` for an eventual period that
/// holds on the whole prefix, smallest `b` first and then smallest `a`.
///
/// For a fixed `b` the valid preperiods are exactly those beyond the last
/// index `i` with `x_i ≠ x_{i+b}`, so each `b` costs one backward scan that
/// stops at the first mismatch it meets.
///
/// `None` refutes every candidate in the box at this prefix length; it is not
/// a proof of aperiodicity.
pub fn find_period(word: &FiniteWord, a_max: usize, b_max: usize) -> Result<Option<PeriodWitness>> {
    let x = word.symbols();
    let len = x.len();
    if b_max == 0 {
        return Err(Error::Precondition("b_max must be at least 1".into()));
    }
    let needed = a_max.saturating_add(b_max.saturating_mul(2));
    if needed >= len {
        return Err(Error::Precondition(format!(
            "a period search over a ≤ {a_max}, b ≤ {b_max} needs a prefix longer than {needed}, got {len}"
        )));
    }
    for b in 1..=b_max {
        let last_mismatch = (0..len - b).rev().find(|&i| x[i] != x[i + b]);
        let a = last_mismatch.map_or(0, |i| i + 1);
        if a <= a_max {
            return Ok(Some(PeriodWitness { a, b }));
        }
    }
    Ok(None)
}
