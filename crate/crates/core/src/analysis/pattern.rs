use serde::Serialize;

use crate::tm::tm_digit_sum;
use crate::words::{FiniteWord, Symbol};
use crate::{Error, Result};

/// Every start index of `pattern` in `word` (Knuth–Morris–Pratt). The empty
/// pattern occurs at every position `0..=|word|`.
pub fn find_pattern(word: &FiniteWord, pattern: &[Symbol]) -> Vec<usize> {
    let text = word.symbols();
    if pattern.is_empty() {
        return (0..=text.len()).collect();
    }
    if pattern.len() > text.len() {
        return Vec::new();
    }
    let border = failure_function(pattern);
    let mut hits = Vec::new();
    let mut k = 0;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && pattern[k] != c {
            k = border[k - 1];
        }
        if pattern[k] == c {
            k += 1;
        }
        if k == pattern.len() {
            hits.push(i + 1 - k);
            k = border[k - 1];
        }
    }
    hits
}

fn failure_function(p: &[Symbol]) -> Vec<usize> {
    let mut border = vec![0; p.len()];
    let mut k = 0;
    for i in 1..p.len() {
        while k > 0 && p[i] != p[k] {
            k = border[k - 1];
        }
        if p[i] == p[k] {
            k += 1;
        }
        border[i] = k;
    }
    border
}

/// A predicted occurrence of `0 1 1` in `TM_m`, `m ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedOccurrence {
    /// `None` for the base position `j`, `Some(k)` for `j(k)`.
    pub k: Option<u32>,
    pub position: u64,
    /// `t_q, t_{q+1}, t_{q+2}` from the digit-sum definition.
    pub terms: [Symbol; 3],
}

impl PredictedOccurrence {
    pub fn is_valid(&self) -> bool {
        self.terms == [0, 1, 1]
    }
}

/// The base position `j = [m−2, m−1, …, m−1]_m` (with `m−2` trailing digits
/// `m−1`, least significant first) and the shifted positions
/// `j(k) = j + (m−2)·m^k + 2·m^{k+1}` for `m ≤ k ≤ k_max`, each annotated with
/// the actual terms there.
///
/// ```
/// use tmcf::analysis::predicted_011_positions;
///
/// let p = predicted_011_positions(3, 3).unwrap();
/// assert_eq!(p.iter().map(|o| o.position).collect::<Vec<_>>(), vec![7, 196]);
/// assert!(p.iter().all(|o| o.is_valid()));
/// ```
pub fn predicted_011_positions(m: u32, k_max: u32) -> Result<Vec<PredictedOccurrence>> {
    if m < 3 {
        return Err(Error::Domain(format!(
            "the 011 construction needs m ≥ 3, got {m}"
        )));
    }
    let base = u64::from(m);
    let overflow = || Error::Overflow("a predicted 011 position");
    // j + 1 = m^{m−1} − 1, i.e. m−1 digits equal to m−1.
    let j = base
        .checked_pow(m - 1)
        .and_then(|p| p.checked_sub(2))
        .ok_or_else(overflow)?;
    let mut positions = vec![(None, j)];
    for k in m..=k_max {
        let shift = (base - 2)
            .checked_mul(base.checked_pow(k).ok_or_else(overflow)?)
            .and_then(|lo| {
                base.checked_pow(k + 1)
                    .and_then(|p| p.checked_mul(2))
                    .and_then(|hi| hi.checked_add(lo))
            })
            .and_then(|s| s.checked_add(j))
            .ok_or_else(overflow)?;
        positions.push((Some(k), shift));
    }
    positions
        .into_iter()
        .map(|(k, q)| {
            let q2 = q.checked_add(2).ok_or_else(overflow)?;
            Ok(PredictedOccurrence {
                k,
                position: q,
                terms: [
                    tm_digit_sum(q, m)?,
                    tm_digit_sum(q + 1, m)?,
                    tm_digit_sum(q2, m)?,
                ],
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::TmSequence;

    #[test]
    fn kmp_matches_naive() {
        let w = TmSequence::morphic(2).unwrap().prefix(3000);
        for pattern in [&[0, 1, 1][..], &[1, 0, 0, 1, 0], &[0, 0], &[1, 1, 1]] {
            let naive: Vec<_> = w
                .symbols()
                .windows(pattern.len())
                .enumerate()
                .filter(|(_, win)| *win == pattern)
                .map(|(i, _)| i)
                .collect();
            assert_eq!(find_pattern(&w, pattern), naive);
        }
        let own = &w.symbols()[..37];
        assert_eq!(find_pattern(&w, own)[0], 0);
        assert!(find_pattern(&w, &[0; 4000]).is_empty());
        assert_eq!(find_pattern(&w.slice(0, 2).unwrap(), &[]), vec![0, 1, 2]);
    }

    #[test]
    fn overlapping_occurrences() {
        let w = FiniteWord::from_symbols(2, vec![0; 6]).unwrap();
        assert_eq!(find_pattern(&w, &[0, 0, 0]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn tm3_forbidden_and_predicted() {
        let w = TmSequence::morphic(3).unwrap().prefix(10_000);
        assert!(find_pattern(&w, &[1, 1, 0]).is_empty());
        let hits = find_pattern(&TmSequence::morphic(3).unwrap().prefix(300), &[0, 1, 1]);
        assert!(hits.contains(&7) && hits.contains(&196));
    }

    #[test]
    fn predicted_positions() {
        assert_eq!(predicted_011_positions(3, 0).unwrap()[0].position, 7);
        assert_eq!(predicted_011_positions(4, 0).unwrap()[0].position, 62);
        let p = predicted_011_positions(3, 3).unwrap();
        assert_eq!(p[1], PredictedOccurrence { k: Some(3), position: 196, terms: [0, 1, 1] });
        for m in 3..=8 {
            let all = predicted_011_positions(m, m + 4).unwrap();
            assert_eq!(all.len(), 6);
            assert!(all.iter().all(PredictedOccurrence::is_valid), "m={m}");
        }
        assert!(matches!(predicted_011_positions(2, 5), Err(Error::Domain(_))));
        assert!(matches!(predicted_011_positions(3, 60), Err(Error::Overflow(_))));
    }
}
