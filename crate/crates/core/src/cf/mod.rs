//! Exact continued-fraction arithmetic.
//!
//! `TM_m` becomes a real number by mapping its letters injectively to positive
//! integers and reading the result as partial quotients:
//! `α = [0; f(t_0), f(t_1), f(t_2), …]`. Everything here is exact: values of
//! `α` are only ever known as the interval between two consecutive
//! convergents, and all comparisons are done on those rational endpoints.

mod alphabet;
mod approx;
mod convergent;
mod evaluate;
mod moebius;

pub use alphabet::{map_alphabet, AlphabetMap, PartialQuotients};
pub use approx::{approximation_report, ApproximationReport, ApproximationRow};
pub use convergent::{
    check_convergents, convergents, ConvergentCheck, ConvergentPair, ConvergentStream,
};
pub use evaluate::{evaluate, Evaluation, Rounding};
pub use moebius::{check_tail_interval, tail_transform, MoebiusMap, TailCheck};

use num_bigint::BigInt;
use num_rational::BigRational;

/// A closed interval with exact rational endpoints, `lo ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Bracket {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_bracket(&self, other: &Bracket) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

pub(crate) fn ratio(p: &BigInt, q: &BigInt) -> BigRational {
    BigRational::new(p.clone(), q.clone())
}
