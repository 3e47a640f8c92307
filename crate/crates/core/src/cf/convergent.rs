use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{ratio, Bracket};
use crate::{Error, Result};

/// The state `(p_n, q_n, p_{n−1}, q_{n−1})` after `n` partial quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentPair {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
    pub p_prev: BigInt,
    pub q_prev: BigInt,
}

impl ConvergentPair {
    /// `p_n q_{n−1} − p_{n−1} q_n`, which is `(−1)^{n−1}`.
    pub fn determinant(&self) -> BigInt {
        &self.p * &self.q_prev - &self.p_prev * &self.q
    }

    pub fn value(&self) -> BigRational {
        ratio(&self.p, &self.q)
    }

    /// The interval between this convergent and the previous one; it contains
    /// every real number whose expansion starts with the quotients seen so far
    /// (for `index ≥ 1`).
    pub fn bracket(&self) -> Bracket {
        Bracket::new(self.value(), ratio(&self.p_prev, &self.q_prev))
    }
}

/// Incremental `p_n = a_n p_{n−1} + p_{n−2}`, `q_n = a_n q_{n−1} + q_{n−2}`
/// from `p_{−1} = 1, q_{−1} = 0, p_0 = a_0, q_0 = 1`.
#[derive(Clone, Debug)]
pub struct ConvergentStream {
    current: ConvergentPair,
}

impl Default for ConvergentStream {
    fn default() -> Self {
        Self::new()
    }
}

impl ConvergentStream {
    /// Starts `[0; …]`.
    pub fn new() -> Self {
        Self::with_integer_part(BigInt::zero())
    }

    pub fn with_integer_part(a0: BigInt) -> Self {
        Self {
            current: ConvergentPair {
                index: 0,
                p: a0,
                q: BigInt::one(),
                p_prev: BigInt::one(),
                q_prev: BigInt::zero(),
            },
        }
    }

    pub fn current(&self) -> &ConvergentPair {
        &self.current
    }

    pub fn push(&mut self, a: u64) -> Result<&ConvergentPair> {
        if a == 0 {
            return Err(Error::Domain(format!(
                "partial quotient a_{} must be positive",
                self.current.index + 1
            )));
        }
        let a = BigInt::from(a);
        let c = &mut self.current;
        let p = &a * &c.p + &c.p_prev;
        let q = &a * &c.q + &c.q_prev;
        c.p_prev = std::mem::replace(&mut c.p, p);
        c.q_prev = std::mem::replace(&mut c.q, q);
        c.index += 1;
        Ok(&self.current)
    }
}

/// Convergents `1..=n` of `[0; a_1, a_2, …]`, fewer if the stream ends early.
///
/// ```
/// use tmcf::cf::convergents;
///
/// let pairs = convergents([1, 2, 2, 1, 2], 5).unwrap();
/// let last = pairs.last().unwrap();
/// assert_eq!((last.p.to_string(), last.q.to_string()), ("19".into(), "27".into()));
/// ```
pub fn convergents(quotients: impl IntoIterator<Item = u64>, n: usize) -> Result<Vec<ConvergentPair>> {
    let mut stream = ConvergentStream::new();
    quotients
        .into_iter()
        .take(n)
        .map(|a| stream.push(a).cloned())
        .collect()
}

/// Which structural identities a run of convergents satisfies. Each field
/// holds the first index that breaks it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConvergentCheck {
    pub checked: usize,
    pub determinant: Option<usize>,
    pub coprime: Option<usize>,
    pub increasing_denominators: Option<usize>,
    pub fibonacci_growth: Option<usize>,
    pub bracketing: Option<usize>,
}

impl ConvergentCheck {
    pub fn all_hold(&self) -> bool {
        self.determinant.is_none()
            && self.coprime.is_none()
            && self.increasing_denominators.is_none()
            && self.fibonacci_growth.is_none()
            && self.bracketing.is_none()
    }
}

/// Checks consecutive convergents `1..=n` of a continued fraction with
/// positive quotients.
pub fn check_convergents(pairs: &[ConvergentPair]) -> ConvergentCheck {
    let mut check = ConvergentCheck {
        checked: pairs.len(),
        ..Default::default()
    };
    let first = |slot: &mut Option<usize>, ok: bool, n: usize| {
        if !ok && slot.is_none() {
            *slot = Some(n);
        }
    };
    // (F(k), F(k+1)) with F(1) = F(2) = 1.
    let (mut k, mut fib, mut fib_next) = (1usize, BigInt::one(), BigInt::one());
    let (mut last_even, mut last_odd): (Option<BigRational>, Option<BigRational>) = (None, None);
    for (i, pair) in pairs.iter().enumerate() {
        let n = pair.index;
        let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        first(&mut check.determinant, pair.determinant() == sign, n);
        first(&mut check.coprime, pair.p.gcd(&pair.q).is_one(), n);
        if i > 0 {
            first(&mut check.increasing_denominators, pair.q > pairs[i - 1].q, n);
        }
        while k < n {
            let next = &fib + &fib_next;
            fib = std::mem::replace(&mut fib_next, next);
            k += 1;
        }
        first(&mut check.fibonacci_growth, pair.q >= fib, n);

        let v = pair.value();
        let ok = if n % 2 == 0 {
            let ok = last_even.as_ref().is_none_or(|e| e < &v) && last_odd.as_ref().is_none_or(|o| &v < o);
            last_even = Some(v);
            ok
        } else {
            let ok = last_odd.as_ref().is_none_or(|o| &v < o) && last_even.as_ref().is_none_or(|e| e < &v);
            last_odd = Some(v);
            ok
        };
        first(&mut check.bracketing, ok, n);
    }
    check
}
