use serde::Serialize;
use smallvec::SmallVec;

use crate::words::{FiniteWord, Symbol};
use crate::{Error, Result};

/// `n ↦ p(n)`, the number of distinct length-`n` factors of a prefix, for
/// `1 ≤ n ≤ n_max`, annotated against the linear bound `p(n) ≤ m³·n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub prefix_length: usize,
    /// `table[n − 1] = p(n)`.
    pub table: Vec<u64>,
    /// `m³` for the alphabet of the analysed word.
    pub bound_factor: u64,
    /// Every `n` with `p(n) > m³·n`.
    pub violations: Vec<usize>,
}

impl ComplexityProfile {
    pub fn n_max(&self) -> usize {
        self.table.len()
    }

    /// `p(n)` for `1 ≤ n ≤ n_max`.
    pub fn p(&self, n: usize) -> u64 {
        self.table[n - 1]
    }

    pub fn ratio_diagnostic(&self) -> RatioDiagnostic {
        // Exact argmax of p(n)/n by cross-multiplication.
        let (mut best_n, mut best_p) = (1usize, self.table[0]);
        for (i, &p) in self.table.iter().enumerate() {
            let n = i + 1;
            if u128::from(p) * best_n as u128 > u128::from(best_p) * n as u128 {
                best_n = n;
                best_p = p;
            }
        }
        RatioDiagnostic {
            n: best_n,
            p: best_p,
            ratio: best_p as f64 / best_n as f64,
            bound_factor: self.bound_factor,
            within_bound: u128::from(best_p) <= u128::from(self.bound_factor) * best_n as u128,
        }
    }
}

/// The largest `p(n)/n` over a profile. A bounded ratio is the finite-scale
/// shadow of `limsup p(n)/n < ∞`; it proves nothing about the limit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioDiagnostic {
    /// Where the maximum is attained (smallest such `n`).
    pub n: usize,
    pub p: u64,
    pub ratio: f64,
    pub bound_factor: u64,
    /// `p ≤ bound_factor · n`, decided in exact integer arithmetic.
    pub within_bound: bool,
}

/// Counts distinct factors of every length up to `n_max` with a suffix
/// automaton: each state stands for the factors with lengths in
/// `(len(link), len]`, so a difference array over those ranges yields the
/// whole table in `O(L)`.
pub fn complexity(word: &FiniteWord, n_max: usize) -> Result<ComplexityProfile> {
    let len = word.len();
    if n_max == 0 {
        return Err(Error::Precondition("n_max must be at least 1".into()));
    }
    if n_max > len {
        return Err(Error::OutOfBounds {
            start: 0,
            end: n_max,
            len,
        });
    }
    let automaton = SuffixAutomaton::build(word.symbols());
    let mut diff = vec![0i64; n_max + 2];
    for state in &automaton.states[1..] {
        let lo = automaton.states[state.link as usize].len as usize + 1;
        let hi = (state.len as usize).min(n_max);
        if lo <= hi {
            diff[lo] += 1;
            diff[hi + 1] -= 1;
        }
    }
    let mut table = Vec::with_capacity(n_max);
    let mut running = 0i64;
    for d in &diff[1..=n_max] {
        running += d;
        table.push(running as u64);
    }

    let m = u64::from(word.modulus());
    let bound_factor = m.pow(3);
    let violations = table
        .iter()
        .enumerate()
        .filter(|&(i, &p)| u128::from(p) > u128::from(bound_factor) * (i as u128 + 1))
        .map(|(i, _)| i + 1)
        .collect();
    Ok(ComplexityProfile {
        prefix_length: len,
        table,
        bound_factor,
        violations,
    })
}

pub fn complexity_ratio_diagnostic(word: &FiniteWord, n_max: usize) -> Result<RatioDiagnostic> {
    Ok(complexity(word, n_max)?.ratio_diagnostic())
}

const NONE: u32 = u32::MAX;

#[derive(Clone)]
struct State {
    len: u32,
    link: u32,
    next: SmallVec<[(Symbol, u32); 2]>,
}

impl State {
    #[inline]
    fn go(&self, c: Symbol) -> u32 {
        self.next
            .iter()
            .find_map(|&(s, t)| (s == c).then_some(t))
            .unwrap_or(NONE)
    }

    #[inline]
    fn set(&mut self, c: Symbol, target: u32) {
        match self.next.iter_mut().find(|(s, _)| *s == c) {
            Some(edge) => edge.1 = target,
            None => self.next.push((c, target)),
        }
    }
}

struct SuffixAutomaton {
    states: Vec<State>,
}

impl SuffixAutomaton {
    fn build(text: &[Symbol]) -> Self {
        assert!(text.len() < (u32::MAX / 2) as usize, "prefix too long for the automaton");
        let mut states = Vec::with_capacity(2 * text.len() + 1);
        states.push(State {
            len: 0,
            link: NONE,
            next: SmallVec::new(),
        });
        let mut last = 0u32;
        for &c in text {
            let cur = states.len() as u32;
            states.push(State {
                len: states[last as usize].len + 1,
                link: 0,
                next: SmallVec::new(),
            });
            let mut p = last;
            while p != NONE && states[p as usize].go(c) == NONE {
                states[p as usize].set(c, cur);
                p = states[p as usize].link;
            }
            if p != NONE {
                let q = states[p as usize].go(c);
                if states[p as usize].len + 1 == states[q as usize].len {
                    states[cur as usize].link = q;
                } else {
                    let clone = states.len() as u32;
                    let mut cloned = states[q as usize].clone();
                    cloned.len = states[p as usize].len + 1;
                    states.push(cloned);
                    while p != NONE && states[p as usize].go(c) == q {
                        states[p as usize].set(c, clone);
                        p = states[p as usize].link;
                    }
                    states[q as usize].link = clone;
                    states[cur as usize].link = clone;
                }
            }
            last = cur;
        }
        Self { states }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tm::TmSequence;
    use std::collections::HashSet;

    fn naive(word: &[Symbol], n: usize) -> u64 {
        word.windows(n).collect::<HashSet<_>>().len() as u64
    }

    #[test]
    fn constant_word() {
        let w = FiniteWord::from_symbols(3, vec![0; 500]).unwrap();
        let profile = complexity(&w, 100).unwrap();
        assert!(profile.table.iter().all(|&p| p == 1));
        assert!(profile.violations.is_empty());
    }

    #[test]
    fn matches_naive_on_short_words() {
        let w = FiniteWord::from_symbols(3, vec![0, 1, 2, 1, 2, 0, 2, 0, 1, 1, 2, 0, 0]).unwrap();
        let profile = complexity(&w, w.len()).unwrap();
        for n in 1..=w.len() {
            assert_eq!(profile.p(n), naive(w.symbols(), n), "n={n}");
        }
        assert_eq!(profile.p(w.len()), 1);
    }

    #[test]
    fn bounds_and_errors() {
        let w = FiniteWord::from_symbols(2, vec![0, 1]).unwrap();
        assert!(matches!(complexity(&w, 3), Err(Error::OutOfBounds { .. })));
        assert!(matches!(complexity(&w, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn ratio_of_distinct_symbols() {
        let w = FiniteWord::from_symbols(5, vec![4, 2, 0, 1, 3]).unwrap();
        let d = complexity_ratio_diagnostic(&w, 1).unwrap();
        assert_eq!((d.n, d.p), (1, 5));
        assert_eq!(d.ratio, 5.0);
    }

    #[test]
    fn tm_profile_is_monotone_and_bounded() {
        for m in 2..=4 {
            let w = TmSequence::morphic(m).unwrap().prefix(20_000);
            let profile = complexity(&w, 300).unwrap();
            assert!(profile.violations.is_empty());
            for n in 1..300 {
                assert!(profile.p(n + 1) >= profile.p(n));
                assert!(profile.p(n + 1) <= u64::from(m) * profile.p(n));
            }
        }
    }
}
