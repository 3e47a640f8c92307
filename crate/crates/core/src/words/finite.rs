use std::fmt;
use std::ops::Index;

use super::{ModAlphabet, Symbol};
use crate::{Error, Result};

/// A finite word `w_0 … w_r` over a [`ModAlphabet`]. Its length is `r + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    alphabet: ModAlphabet,
    symbols: Vec<Symbol>,
}

impl FiniteWord {
    pub fn new(alphabet: ModAlphabet, symbols: Vec<Symbol>) -> Result<Self> {
        alphabet.check_all(&symbols)?;
        Ok(Self { alphabet, symbols })
    }

    /// Builds a word from a modulus and a list of symbols in one step.
    pub fn from_symbols(m: u32, symbols: impl Into<Vec<Symbol>>) -> Result<Self> {
        Self::new(ModAlphabet::new(m)?, symbols.into())
    }

    pub fn empty(alphabet: ModAlphabet) -> Self {
        Self {
            alphabet,
            symbols: Vec::new(),
        }
    }

    pub(crate) fn from_trusted(alphabet: ModAlphabet, symbols: Vec<Symbol>) -> Self {
        debug_assert!(symbols.iter().all(|&s| alphabet.contains(s)));
        Self { alphabet, symbols }
    }

    #[inline]
    pub fn alphabet(&self) -> ModAlphabet {
        self.alphabet
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.alphabet.modulus()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    #[inline]
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub fn get(&self, i: usize) -> Option<Symbol> {
        self.symbols.get(i).copied()
    }

    /// The half-open factor `w_{j1} … w_{j2−1}`.
    pub fn slice(&self, start: usize, end: usize) -> Result<FiniteWord> {
        if start > end || end > self.len() {
            return Err(Error::OutOfBounds {
                start,
                end,
                len: self.len(),
            });
        }
        Ok(Self::from_trusted(
            self.alphabet,
            self.symbols[start..end].to_vec(),
        ))
    }

    pub fn concat(&self, other: &FiniteWord) -> Result<FiniteWord> {
        if self.alphabet != other.alphabet {
            return Err(mismatch(other));
        }
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Ok(Self::from_trusted(self.alphabet, symbols))
    }

    pub fn is_palindrome(&self) -> bool {
        self.symbols.iter().eq(self.symbols.iter().rev())
    }

    /// Base-`m` value of the word read LSB first.
    pub fn value(&self) -> Result<u64> {
        super::value(&self.symbols, self.modulus())
    }
}

/// Error for a word that was built over a different alphabet: reports the
/// first symbol that the expected alphabet cannot carry, or the modulus itself.
pub(crate) fn mismatch(word: &FiniteWord) -> Error {
    Error::InvalidSymbol {
        symbol: word.symbols.iter().copied().max().unwrap_or(0),
        modulus: word.modulus(),
    }
}

impl Index<usize> for FiniteWord {
    type Output = Symbol;

    fn index(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }
}

impl AsRef<[Symbol]> for FiniteWord {
    fn as_ref(&self) -> &[Symbol] {
        &self.symbols
    }
}

impl fmt::Display for FiniteWord {
    /// Single-digit alphabets print as a run of digits (`0110`), larger ones
    /// comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.modulus() <= 10 { "" } else { "," };
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(m: u32, s: &[Symbol]) -> FiniteWord {
        FiniteWord::from_symbols(m, s).unwrap()
    }

    #[test]
    fn slicing() {
        let word = w(2, &[0, 1, 1, 0]);
        assert_eq!(word.slice(1, 3).unwrap().symbols(), &[1, 1]);
        assert!(word.slice(2, 2).unwrap().is_empty());
        assert!(word.slice(4, 4).unwrap().is_empty());
        assert!(matches!(
            word.slice(3, 5),
            Err(Error::OutOfBounds { start: 3, end: 5, len: 4 })
        ));
        assert!(matches!(word.slice(3, 2), Err(Error::OutOfBounds { .. })));
    }

    #[test]
    fn construction_validates() {
        assert!(FiniteWord::from_symbols(3, vec![0, 1, 3]).is_err());
        assert!(FiniteWord::from_symbols(1, vec![]).is_err());
    }

    #[test]
    fn display_and_palindromes() {
        assert_eq!(w(2, &[0, 1, 1, 0]).to_string(), "0110");
        assert_eq!(w(12, &[11, 0, 10]).to_string(), "11,0,10");
        assert!(w(2, &[0, 1, 1, 0]).is_palindrome());
        assert!(!w(2, &[0, 1]).is_palindrome());
        assert!(FiniteWord::empty(ModAlphabet::new(2).unwrap()).is_palindrome());
    }

    #[test]
    fn concat_requires_same_alphabet() {
        let a = w(3, &[0, 1]);
        assert_eq!(a.concat(&w(3, &[2])).unwrap().symbols(), &[0, 1, 2]);
        assert!(a.concat(&w(4, &[3])).is_err());
    }
}
