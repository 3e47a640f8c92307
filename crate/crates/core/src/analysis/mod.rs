//! Finite-prefix analyzers.
//!
//! Everything here inspects a finite prefix of an infinite word. Statements
//! about the infinite word (aperiodicity, non-palindromicity) can only be
//! refuted or corroborated at a given scale, never proven.

mod complexity;
mod palindrome;
mod pattern;
mod period;
mod surjection;

pub use complexity::{complexity, complexity_ratio_diagnostic, ComplexityProfile, RatioDiagnostic};
pub use palindrome::{palindromic_prefixes, PalindromeLadder};
pub use pattern::{find_pattern, predicted_011_positions, PredictedOccurrence};
pub use period::{find_period, PeriodWitness};
pub use surjection::{verify_complexity_surjection, SurjectionReport};
