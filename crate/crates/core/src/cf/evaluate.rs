use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{Bracket, ConvergentStream};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    /// The first `D` digits of the decimal expansion. Outputs at different
    /// `D` are prefixes of one another.
    #[default]
    Truncate,
    /// Nearest `D`-digit decimal, ties to even.
    HalfEven,
}

/// A certified decimal for `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub digits: usize,
    pub rounding: Rounding,
    pub decimal: String,
    /// The convergent bracket that certified the digits.
    pub enclosure: Bracket,
    pub convergents_used: usize,
}

/// Evaluates `[0; a_1, a_2, …]` to `digits` decimal places.
///
/// Convergents are consumed until two consecutive ones are closer than
/// `10^{−digits−2}` and both produce the same `digits`-place decimal under the
/// chosen rounding; since `α` lies between them, that decimal is the one for
/// `α`. A finite stream is evaluated exactly.
///
/// ```
/// use tmcf::cf::{evaluate, Rounding};
///
/// let golden = evaluate(std::iter::repeat(1), 10, Rounding::Truncate).unwrap();
/// assert_eq!(golden.decimal, "0.6180339887");
/// ```
pub fn evaluate(
    quotients: impl IntoIterator<Item = u64>,
    digits: usize,
    rounding: Rounding,
) -> Result<Evaluation> {
    if digits == 0 {
        return Err(Error::Precondition("at least one decimal digit is required".into()));
    }
    let scale = BigInt::from(10u32).pow(digits as u32);
    let tolerance = BigInt::from(10u32).pow(digits as u32 + 2);
    let mut stream = ConvergentStream::new();
    let mut quotients = quotients.into_iter();
    loop {
        let Some(a) = quotients.next() else {
            // Finite expansion: the last convergent is the exact value.
            let c = stream.current();
            let exact = c.value();
            let scaled = round_exact(&exact, &scale, rounding);
            return Ok(Evaluation {
                digits,
                rounding,
                decimal: format_scaled(&scaled, digits),
                enclosure: Bracket::new(exact.clone(), exact),
                convergents_used: c.index,
            });
        };
        let c = stream.push(a)?;
        if c.index < 2 || &c.q * &c.q_prev <= tolerance {
            continue;
        }
        let bracket = c.bracket();
        let lo = scaled_digits(&bracket.lo, &scale, rounding);
        let hi = scaled_digits(&bracket.hi, &scale, rounding);
        if let (Some(lo), Some(hi)) = (lo, hi) {
            if lo == hi {
                return Ok(Evaluation {
                    digits,
                    rounding,
                    decimal: format_scaled(&lo, digits),
                    enclosure: bracket,
                    convergents_used: c.index,
                });
            }
        }
    }
}

/// `x·10^D` rounded to an integer, or `None` when `x` sits exactly on a
/// boundary of the rounding rule (where an enclosure endpoint cannot vouch
/// for nearby values).
fn scaled_digits(x: &BigRational, scale: &BigInt, rounding: Rounding) -> Option<BigInt> {
    let scaled = x * BigRational::from(scale.clone());
    let (floor, rem) = scaled.numer().div_mod_floor(scaled.denom());
    match rounding {
        Rounding::Truncate => (!rem.is_zero()).then_some(floor),
        Rounding::HalfEven => {
            let twice = &rem * 2;
            let den = scaled.denom();
            if &twice == den {
                None
            } else if &twice > den {
                Some(floor + 1)
            } else {
                Some(floor)
            }
        }
    }
}

fn round_exact(x: &BigRational, scale: &BigInt, rounding: Rounding) -> BigInt {
    let scaled = x * BigRational::from(scale.clone());
    let (floor, rem) = scaled.numer().div_mod_floor(scaled.denom());
    match rounding {
        Rounding::Truncate => floor,
        Rounding::HalfEven => {
            let twice = &rem * 2;
            let den = scaled.denom();
            if &twice > den || (&twice == den && floor.is_odd()) {
                floor + 1
            } else {
                floor
            }
        }
    }
}

fn format_scaled(scaled: &BigInt, digits: usize) -> String {
    let ten = BigInt::from(10u32).pow(digits as u32);
    let (int, frac) = scaled.div_mod_floor(&ten);
    let frac = frac.to_string();
    format!("{int}.{}{frac}", "0".repeat(digits - frac.len()))
}

impl Evaluation {
    /// Width of the certifying enclosure.
    pub fn error_bound(&self) -> BigRational {
        self.enclosure.width()
    }

    pub fn is_exact(&self) -> bool {
        self.enclosure.lo == self.enclosure.hi
    }
}
