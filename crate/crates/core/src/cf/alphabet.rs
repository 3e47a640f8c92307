use std::collections::HashSet;

use crate::tm::TmSequence;
use crate::words::Symbol;
use crate::{Error, Result};

/// An injective map from `{0, …, m−1}` to the positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphabetMap {
    image: Vec<u64>,
}

impl AlphabetMap {
    pub fn new(image: Vec<u64>) -> Result<Self> {
        if image.len() < 2 {
            return Err(Error::InvalidMap(format!(
                "need images for at least two symbols, got {}",
                image.len()
            )));
        }
        if let Some(j) = image.iter().position(|&a| a == 0) {
            return Err(Error::InvalidMap(format!(
                "symbol {j} maps to 0, partial quotients must be positive"
            )));
        }
        let mut seen = HashSet::new();
        for (j, &a) in image.iter().enumerate() {
            if !seen.insert(a) {
                return Err(Error::InvalidMap(format!(
                    "symbol {j} maps to {a}, which is already taken"
                )));
            }
        }
        Ok(Self { image })
    }

    /// `j ↦ j + 1`.
    pub fn shifted(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidAlphabet { modulus: m.into() });
        }
        Self::new((1..=u64::from(m)).collect())
    }

    /// Parses `symbol:value` pairs separated by commas, e.g. `0:1,1:2`.
    /// Symbols that are not mentioned keep the default `j ↦ j + 1`.
    ///
    /// ```
    /// use tmcf::cf::AlphabetMap;
    ///
    /// let f = AlphabetMap::parse(3, "0:5").unwrap();
    /// assert_eq!(f.images(), &[5, 2, 3]);
    /// assert!(AlphabetMap::parse(2, "0:1,1:1").is_err());
    /// ```
    pub fn parse(m: u32, spec: &str) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidAlphabet { modulus: m.into() });
        }
        let mut image: Vec<u64> = (1..=u64::from(m)).collect();
        let mut assigned = HashSet::new();
        for entry in spec.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (symbol, value) = entry
                .split_once(':')
                .ok_or_else(|| Error::InvalidMap(format!("expected symbol:value, got {entry:?}")))?;
            let symbol: Symbol = symbol
                .trim()
                .parse()
                .map_err(|_| Error::InvalidMap(format!("bad symbol in {entry:?}")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidMap(format!("bad value in {entry:?}")))?;
            if symbol >= m {
                return Err(Error::InvalidMap(format!(
                    "symbol {symbol} is outside {{0, …, {}}}",
                    m - 1
                )));
            }
            if !assigned.insert(symbol) {
                return Err(Error::InvalidMap(format!("symbol {symbol} assigned twice")));
            }
            image[symbol as usize] = value;
        }
        Self::new(image)
    }

    pub fn modulus(&self) -> u32 {
        self.image.len() as u32
    }

    pub fn images(&self) -> &[u64] {
        &self.image
    }

    pub fn apply(&self, symbol: Symbol) -> u64 {
        self.image[symbol as usize]
    }

    pub fn max_image(&self) -> u64 {
        self.image.iter().copied().max().unwrap_or(0)
    }
}

/// The partial quotients `a_1, a_2, … = f(t_0), f(t_1), …`; `a_0 = 0` is
/// implicit. Infinite.
#[derive(Clone, Debug)]
pub struct PartialQuotients {
    seq: TmSequence,
    map: AlphabetMap,
    next: usize,
}

impl Iterator for PartialQuotients {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let a = self.map.apply(self.seq.get(self.next));
        self.next += 1;
        Some(a)
    }
}

pub fn map_alphabet(seq: &TmSequence, map: &AlphabetMap) -> Result<PartialQuotients> {
    if map.modulus() != seq.modulus() {
        return Err(Error::InvalidMap(format!(
            "map covers {} symbols but the sequence has modulus {}",
            map.modulus(),
            seq.modulus()
        )));
    }
    Ok(PartialQuotients {
        seq: seq.clone(),
        map: map.clone(),
        next: 0,
    })
}
