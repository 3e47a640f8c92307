//! Words over the residue alphabet `{0, …, m−1}`, base-`m` digit codecs, and
//! word morphisms.
//!
//! Digit words are least-significant digit first throughout: the word
//! `c_0 c_1 … c_r` encodes `Σ c_i m^i`.

mod finite;
mod lazy;
mod morphism;

pub use finite::FiniteWord;
pub use lazy::LazyWord;
pub use morphism::Morphism;

use crate::{Error, Result};

/// A letter of a [`ModAlphabet`], always a residue in `0..m`.
pub type Symbol = u32;

/// The alphabet `{0, …, m−1}` with arithmetic modulo `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct ModAlphabet {
    m: u32,
}

impl ModAlphabet {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidAlphabet { modulus: m.into() });
        }
        Ok(Self { m })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.m
    }

    #[inline]
    pub fn contains(self, symbol: Symbol) -> bool {
        symbol < self.m
    }

    pub fn check(self, symbol: Symbol) -> Result<Symbol> {
        if self.contains(symbol) {
            Ok(symbol)
        } else {
            Err(Error::InvalidSymbol {
                symbol,
                modulus: self.m,
            })
        }
    }

    pub fn check_all(self, symbols: &[Symbol]) -> Result<()> {
        symbols.iter().try_for_each(|&s| self.check(s).map(drop))
    }

    /// `(a + b) mod m`, for `a, b` already in the alphabet.
    #[inline]
    pub fn add(self, a: Symbol, b: Symbol) -> Symbol {
        ((u64::from(a) + u64::from(b)) % u64::from(self.m)) as Symbol
    }

    /// Reduces an arbitrary integer into the alphabet.
    #[inline]
    pub fn reduce(self, x: u64) -> Symbol {
        (x % u64::from(self.m)) as Symbol
    }

    pub fn symbols(self) -> impl Iterator<Item = Symbol> {
        0..self.m
    }
}

/// Base-`m` digits of `n`, least significant first. `digits(0, m)` is the
/// one-letter word `0`.
///
/// ```
/// use tmcf::words::digits;
///
/// assert_eq!(digits(196, 3).unwrap().symbols(), &[1, 2, 0, 1, 2]);
/// assert_eq!(digits(0, 5).unwrap().symbols(), &[0]);
/// ```
pub fn digits(n: u64, m: u32) -> Result<FiniteWord> {
    let alphabet = ModAlphabet::new(m)?;
    Ok(FiniteWord::from_trusted(alphabet, raw_digits(n, m)))
}

pub(crate) fn raw_digits(mut n: u64, m: u32) -> Vec<Symbol> {
    let base = u64::from(m);
    let mut out = Vec::with_capacity(64);
    loop {
        out.push((n % base) as Symbol);
        n /= base;
        if n == 0 {
            return out;
        }
    }
}

/// `Σ w_i m^i` for an LSB-first digit word.
///
/// ```
/// use tmcf::words::value;
///
/// assert_eq!(value(&[2, 3, 0, 1], 4).unwrap(), 78);
/// ```
pub fn value(word: &[Symbol], m: u32) -> Result<u64> {
    let alphabet = ModAlphabet::new(m)?;
    alphabet.check_all(word)?;
    let base = u64::from(m);
    word.iter().rev().try_fold(0u64, |acc, &d| {
        acc.checked_mul(base)
            .and_then(|x| x.checked_add(u64::from(d)))
            .ok_or(Error::Overflow("the value of a digit word"))
    })
}
