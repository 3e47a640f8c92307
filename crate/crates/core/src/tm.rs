//! The generalized Thue–Morse sequences `TM_m`.
//!
//! Two independent constructions are provided:
//!
//! * [`Construction::DigitSum`]: `t_n = (sum of the base-m digits of n) mod m`,
//!   streamed with carry propagation so each term costs O(1) amortized.
//! * [`Construction::Morphic`]: the fixed point at `0` of
//!   `φ_m: j ↦ j, j+1, …, j+m−1 (mod m)`.
//!
//! They share nothing but the [`words`](crate::words) primitives, which is what
//! makes [`verify_equivalence`] a real cross-check rather than a tautology.

use serde::Serialize;

use crate::words::{self, FiniteWord, LazyWord, ModAlphabet, Morphism, Symbol};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    DigitSum,
    Morphic,
}

/// `TM_m` as a lazily materialized infinite word.
#[derive(Clone, Debug)]
pub struct TmSequence {
    alphabet: ModAlphabet,
    word: LazyWord,
    construction: Construction,
}

impl TmSequence {
    pub fn digit_sum(m: u32) -> Result<Self> {
        let alphabet = ModAlphabet::new(m)?;
        let word = LazyWord::from_chunks(alphabet, move |start, count, out| {
            out.extend(DigitSumStream::starting_at(start, m).take(count));
        });
        Ok(Self {
            alphabet,
            word,
            construction: Construction::DigitSum,
        })
    }

    pub fn morphic(m: u32) -> Result<Self> {
        let word = tm_morphism(m)?.fixed_point(0)?;
        Ok(Self {
            alphabet: word.alphabet(),
            word,
            construction: Construction::Morphic,
        })
    }

    pub fn new(m: u32, construction: Construction) -> Result<Self> {
        match construction {
            Construction::DigitSum => Self::digit_sum(m),
            Construction::Morphic => Self::morphic(m),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.alphabet.modulus()
    }

    pub fn alphabet(&self) -> ModAlphabet {
        self.alphabet
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn word(&self) -> &LazyWord {
        &self.word
    }

    pub fn get(&self, n: usize) -> Symbol {
        self.word.get(n)
    }

    pub fn prefix(&self, len: usize) -> FiniteWord {
        self.word.prefix(len)
    }
}

/// `t_n(m)` by full digit extraction.
///
/// ```
/// use tmcf::tm::tm_digit_sum;
///
/// assert_eq!(tm_digit_sum(7, 3).unwrap(), 0);
/// assert_eq!(tm_digit_sum(9, 3).unwrap(), 1);
/// ```
pub fn tm_digit_sum(n: u64, m: u32) -> Result<Symbol> {
    let alphabet = ModAlphabet::new(m)?;
    let base = u64::from(m);
    let (mut n, mut sum) = (n, 0u64);
    while n > 0 {
        sum += n % base;
        n /= base;
    }
    Ok(alphabet.reduce(sum))
}

/// Streams `t_start, t_{start+1}, …` keeping the base-`m` digits of the
/// current index and their sum mod `m`.
#[derive(Clone, Debug)]
pub struct DigitSumStream {
    m: u32,
    digits: Vec<Symbol>,
    sum: Symbol,
}

impl DigitSumStream {
    pub fn starting_at(start: u64, m: u32) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        let digits = words::raw_digits(start, m);
        let sum = (digits.iter().map(|&d| u64::from(d)).sum::<u64>() % u64::from(m)) as Symbol;
        Self { m, digits, sum }
    }
}

impl Iterator for DigitSumStream {
    type Item = Symbol;

    fn next(&mut self) -> Option<Symbol> {
        let current = self.sum;
        // Trailing (m−1)s roll over to 0, each moving the sum by −(m−1) ≡ +1,
        // then the first smaller digit goes up by one.
        let top = self.m - 1;
        let mut i = 0;
        while i < self.digits.len() && self.digits[i] == top {
            self.digits[i] = 0;
            i += 1;
        }
        if i == self.digits.len() {
            self.digits.push(0);
        }
        self.digits[i] += 1;
        let m = u64::from(self.m);
        self.sum = ((u64::from(current) + 1 + i as u64) % m) as Symbol;
        Some(current)
    }
}

/// `φ_m(j) = j, j+1, …, j+m−1 (mod m)`.
///
/// ```
/// use tmcf::tm::tm_morphism;
///
/// assert_eq!(tm_morphism(4).unwrap().image(2), &[2, 3, 0, 1]);
/// ```
pub fn tm_morphism(m: u32) -> Result<Morphism> {
    let alphabet = ModAlphabet::new(m)?;
    let images = alphabet
        .symbols()
        .map(|j| alphabet.symbols().map(|i| alphabet.add(j, i)).collect())
        .collect();
    Morphism::new(alphabet, images)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub m: u32,
    pub checked_length: u64,
    pub first_mismatch: Option<u64>,
    /// Indices `j` for which `φ^{n+1}(0)_j` was also read directly off a
    /// morphism power and matched the digit sum.
    pub lemma_samples: u64,
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Largest morphism power image materialized by the lemma samplers.
const LEMMA_IMAGE_CAP: usize = 1 << 16;

/// Compares the digit-sum and morphic constructions on `[0, len)`.
pub fn verify_equivalence(m: u32, len: u64) -> Result<EquivalenceReport> {
    if len == 0 {
        return Err(Error::Precondition("equivalence needs at least one term".into()));
    }
    let morphic = TmSequence::morphic(m)?;
    morphic
        .word()
        .with_prefix(len as usize, |prefix| verify_equivalence_against(m, prefix))
}

/// Compares an externally supplied candidate prefix of the morphic
/// construction against the digit sums.
pub fn verify_equivalence_against(m: u32, morphic_prefix: &[Symbol]) -> Result<EquivalenceReport> {
    ModAlphabet::new(m)?;
    let first_mismatch = DigitSumStream::starting_at(0, m)
        .zip(morphic_prefix)
        .position(|(a, &b)| a != b)
        .map(|i| i as u64);

    // Lemma instances: the term at j, read as φ^k(0)_j for the least k with
    // m^k > j, taken straight from the iterated image of 0.
    let phi = tm_morphism(m)?;
    let mut lemma_samples = 0;
    let mut image = phi.image(0).to_vec();
    let limit = morphic_prefix.len().min(LEMMA_IMAGE_CAP);
    for j in 0..limit {
        if image.len() <= j {
            image = phi.apply_symbols(&image);
        }
        if image[j] == tm_digit_sum_of(&words::raw_digits(j as u64, m), m) {
            lemma_samples += 1;
        }
    }

    Ok(EquivalenceReport {
        m,
        checked_length: morphic_prefix.len() as u64,
        first_mismatch,
        lemma_samples,
    })
}

fn tm_digit_sum_of(digits: &[Symbol], m: u32) -> Symbol {
    (digits.iter().map(|&d| u64::from(d)).sum::<u64>() % u64::from(m)) as Symbol
}

/// Checks `φ^{n+1}(c_{n+1})` at position `[c_0 … c_n]_m` against
/// `Σ c_i mod m`, for a digit word `c = c_0 … c_{n+1}` with at least two
/// letters.
///
/// ```
/// use tmcf::{tm::check_lemma_recursion, FiniteWord};
///
/// let c = FiniteWord::from_symbols(3, vec![1, 2]).unwrap();
/// assert!(check_lemma_recursion(&c).unwrap());
/// ```
pub fn check_lemma_recursion(c: &FiniteWord) -> Result<bool> {
    LemmaChecker::new(c.modulus(), c.len())?.check(c)
}

/// Reuses morphism powers across many lemma checks at one modulus.
#[derive(Clone, Debug)]
pub struct LemmaChecker {
    m: u32,
    /// `powers[k − 1] = φ_m^k`.
    powers: Vec<Morphism>,
}

impl LemmaChecker {
    /// Prepares powers for digit words of length up to `max_len`.
    pub fn new(m: u32, max_len: usize) -> Result<Self> {
        let phi = tm_morphism(m)?;
        let mut powers = vec![phi.clone()];
        for _ in 2..max_len {
            let next = phi.compose(powers.last().unwrap())?;
            powers.push(next);
        }
        Ok(Self { m, powers })
    }

    pub fn check(&self, c: &FiniteWord) -> Result<bool> {
        if c.modulus() != self.m {
            return Err(Error::Domain(format!(
                "digit word over modulus {} checked at modulus {}",
                c.modulus(),
                self.m
            )));
        }
        if c.len() < 2 {
            return Err(Error::Precondition(
                "the lemma needs a digit word of length at least 2".into(),
            ));
        }
        let exponent = c.len() - 1;
        let power = self.powers.get(exponent - 1).ok_or_else(|| {
            Error::Precondition(format!(
                "checker prepared for words up to length {}",
                self.powers.len() + 1
            ))
        })?;
        let (low, top) = c.symbols().split_at(exponent);
        let position = words::value(low, self.m)? as usize;
        let image = power.image(top[0]);
        Ok(image[position] == tm_digit_sum_of(c.symbols(), self.m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub m: u32,
    pub max_len: usize,
    pub checked: u64,
    pub failures: Vec<Vec<Symbol>>,
}

/// Every digit word of length `2..=max_len` over `{0, …, m−1}`.
pub fn check_lemma_exhaustive(m: u32, max_len: usize) -> Result<LemmaReport> {
    let checker = LemmaChecker::new(m, max_len)?;
    let alphabet = ModAlphabet::new(m)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for len in 2..=max_len {
        let mut c = vec![0 as Symbol; len];
        loop {
            let word = FiniteWord::new(alphabet, c.clone())?;
            checked += 1;
            if !checker.check(&word)? {
                failures.push(c.clone());
            }
            // Odometer increment.
            let mut i = 0;
            while i < len && c[i] == m - 1 {
                c[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
            c[i] += 1;
        }
    }
    Ok(LemmaReport {
        m,
        max_len,
        checked,
        failures,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub checked: u64,
    pub first_violation: Option<u64>,
}

impl PropertyCheck {
    fn record(&mut self, ok: bool, at: u64) {
        self.checked += 1;
        if !ok && self.first_violation.is_none() {
            self.first_violation = Some(at);
        }
    }

    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Results for the three congruence properties of `TM_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub m: u32,
    pub length: u64,
    /// `t_n = t_{nm}`.
    pub scaling: PropertyCheck,
    /// `t_{n+1} − t_n ≢ 1 (mod m)` implies `n ≡ m−1 (mod m)`.
    pub step: PropertyCheck,
    /// `t_{nm+r} ≡ t_{nm} + r (mod m)` for `r ∈ {1, …, m−1}`.
    pub block: PropertyCheck,
}

impl CongruenceReport {
    pub fn all_hold(&self) -> bool {
        self.scaling.holds() && self.step.holds() && self.block.holds()
    }
}

/// Checks the congruence properties on the first `len` terms of the morphic
/// construction.
pub fn check_congruences(m: u32, len: u64) -> Result<CongruenceReport> {
    let tm = TmSequence::morphic(m)?;
    tm.word()
        .with_prefix(len as usize, |prefix| check_congruences_on(m, prefix))
}

/// Same as [`check_congruences`] on an arbitrary candidate prefix.
pub fn check_congruences_on(m: u32, t: &[Symbol]) -> Result<CongruenceReport> {
    let alphabet = ModAlphabet::new(m)?;
    alphabet.check_all(t)?;
    let len = t.len();
    if len < m as usize {
        return Err(Error::Precondition(format!(
            "congruence checks need at least m = {m} terms, got {len}"
        )));
    }
    let mu = m as usize;

    let mut scaling = PropertyCheck::default();
    for n in 1..len.div_ceil(mu) {
        scaling.record(t[n] == t[n * mu], n as u64);
    }

    let mut step = PropertyCheck::default();
    for n in 0..len - 1 {
        let diff = alphabet.add(t[n + 1], m - t[n]);
        step.record(diff == 1 || n % mu == mu - 1, n as u64);
    }

    let mut block = PropertyCheck::default();
    for base in (0..len).step_by(mu) {
        for r in 1..mu.min(len - base) {
            block.record(t[base + r] == alphabet.add(t[base], r as Symbol), (base + r) as u64);
        }
    }

    Ok(CongruenceReport {
        m,
        length: len as u64,
        scaling,
        step,
        block,
    })
}

/// First `j` with `t_j = t_{j+1} = t_{j+2}`, if any.
pub fn find_triple_repeat(t: &[Symbol]) -> Option<u64> {
    t.windows(3)
        .position(|w| w[0] == w[1] && w[1] == w[2])
        .map(|j| j as u64)
}
