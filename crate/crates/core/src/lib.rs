//! Generalized Thue–Morse sequences and their continued fractions.
//!
//! For a modulus `m ≥ 2`, the sequence `TM_m` has as its `n`-th term the sum
//! of the base-`m` digits of `n`, reduced modulo `m`. Equivalently it is the
//! fixed point, based at `0`, of the `m`-uniform morphism
//! `j ↦ j, j+1, …, j+m−1 (mod m)`. For `m = 2` this is the classical
//! Thue–Morse word `0110100110010110…`.
//!
//! The crate is split along the lines of the theory:
//!
//! * [`words`]: finite and lazily materialized infinite words, base-`m` digit
//!   codecs and word morphisms.
//! * [`tm`]: both constructions of `TM_m` and the checks that tie them
//!   together.
//! * [`analysis`]: finite-prefix analyzers: subword complexity, period
//!   refutation, palindromic prefixes and pattern occurrences.
//! * [`cf`]: exact continued-fraction arithmetic over the partial quotients
//!   obtained by mapping `TM_m` injectively into the positive integers.
//! * [`store`]: the versioned binary format for cached prefixes.
//!
//! ```
//! use tmcf::tm::TmSequence;
//!
//! let tm = TmSequence::morphic(3).unwrap();
//! assert_eq!(tm.prefix(9).symbols(), &[0, 1, 2, 1, 2, 0, 2, 0, 1]);
//! ```

pub mod analysis;
pub mod cf;
mod error;
pub mod store;
pub mod tm;
pub mod words;

pub use error::{Error, Result};
pub use words::{FiniteWord, LazyWord, ModAlphabet, Morphism, Symbol};
