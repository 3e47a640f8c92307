use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::tm::{tm_morphism, TmSequence};
use crate::words::Symbol;
use crate::{Error, Result};

/// Outcome of checking that `f(s, v) = φ^r(v)_{[s : s+n]}` covers every
/// length-`n` factor of `TM_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectionReport {
    pub m: u32,
    pub r: u32,
    pub n: usize,
    /// Length of the prefix the factors were read from.
    pub prefix_length: usize,
    /// Distinct length-`n` factors in that prefix.
    pub factor_count: usize,
    /// Distinct length-2 factors, the `v` side of the domain.
    pub pair_count: usize,
    pub checked: usize,
    /// Checked factors with no preimage.
    pub uncovered: Vec<Vec<Symbol>>,
}

impl SurjectionReport {
    pub fn is_onto(&self) -> bool {
        self.uncovered.is_empty()
    }

    /// `m^r · |t[2]|`, which bounds the number of factors when `f` is onto.
    pub fn domain_size(&self) -> u64 {
        u64::from(self.m).pow(self.r) * self.pair_count as u64
    }
}

/// Longest prefix this check will materialize.
const MAX_PREFIX: u64 = 1 << 24;

/// Exhibits, for length-`n` factors of a long `TM_m` prefix, a preimage
/// `(s, v)` with `s < m^r` and `v` a length-2 factor. With
/// `sample_count = None` every factor is checked; otherwise a seeded random
/// sample of that size.
pub fn verify_complexity_surjection(
    m: u32,
    r: u32,
    n: usize,
    sample_count: Option<usize>,
    seed: u64,
) -> Result<SurjectionReport> {
    let phi = tm_morphism(m)?;
    let base = u64::from(m);
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    let block = base
        .checked_pow(r)
        .filter(|&b| b <= MAX_PREFIX)
        .ok_or(Error::Overflow("m^r"))?;
    let lower = block / base;
    if !(lower <= n as u64 && (n as u64) < block) {
        return Err(Error::Precondition(format!(
            "need m^(r−1) ≤ n < m^r, got m={m}, r={r}, n={n}"
        )));
    }

    // Enough blocks of length m^r that the prefix is φ^r of a prefix long
    // enough to contain every pair.
    let blocks = base.saturating_pow(3).max(64) + 2;
    let prefix_length = block.saturating_mul(blocks).min(MAX_PREFIX) as usize;
    let tm = TmSequence::morphic(m)?;
    let prefix = tm.prefix(prefix_length).into_symbols();

    let pairs: HashSet<&[Symbol]> = prefix.windows(2).collect();
    let mut pairs: Vec<&[Symbol]> = pairs.into_iter().collect();
    pairs.sort_unstable();
    let power = phi.power(r)?;
    let mut preimages: HashMap<Vec<Symbol>, (usize, usize)> = HashMap::new();
    for (vi, v) in pairs.iter().enumerate() {
        let image = power.apply_symbols(v);
        for s in 0..block as usize {
            preimages
                .entry(image[s..s + n].to_vec())
                .or_insert((s, vi));
        }
    }

    let factors: HashSet<&[Symbol]> = prefix.windows(n).collect();
    let mut factors: Vec<&[Symbol]> = factors.into_iter().collect();
    factors.sort_unstable();
    let factor_count = factors.len();
    if let Some(k) = sample_count {
        if k < factors.len() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            factors.shuffle(&mut rng);
            factors.truncate(k);
        }
    }
    let uncovered: Vec<Vec<Symbol>> = factors
        .iter()
        .filter(|x| !preimages.contains_key(**x))
        .map(|x| x.to_vec())
        .collect();

    Ok(SurjectionReport {
        m,
        r,
        n,
        prefix_length,
        factor_count,
        pair_count: pairs.len(),
        checked: factors.len(),
        uncovered,
    })
}
