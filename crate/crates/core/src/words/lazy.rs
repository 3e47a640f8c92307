use std::fmt;
use std::sync::{Arc, RwLock};

use super::{FiniteWord, ModAlphabet, Morphism, Symbol};
use crate::{Error, Result};

const MIN_CHUNK: usize = 64;

type TermFn = dyn Fn(u64) -> Symbol + Send + Sync;
type ChunkFn = dyn Fn(u64, usize, &mut Vec<Symbol>) + Send + Sync;

enum Source {
    /// `index ↦ symbol`.
    Terms(Arc<TermFn>),
    /// Appends `count` consecutive terms starting at `start`; lets streaming
    /// generators carry state across a chunk.
    Chunks(Arc<ChunkFn>),
    /// `φ(v) = v` grown from `φ(j)` by appending `φ(v_cursor)`.
    FixedPoint(Morphism),
    /// `φ(inner)`, appending `φ(inner_cursor)`.
    Image(Morphism, LazyWord),
}

#[derive(Default)]
struct Materialized {
    symbols: Vec<Symbol>,
    /// Next source position whose image is appended (morphic sources only).
    cursor: usize,
}

struct Inner {
    alphabet: ModAlphabet,
    source: Source,
    state: RwLock<Materialized>,
}

/// A right-infinite word with a memoized prefix.
///
/// Cloning is cheap and shares the cache. Reads below the materialized length
/// take a shared lock only; a read past it extends the prefix under an
/// exclusive lock, growing it at least geometrically.
#[derive(Clone)]
pub struct LazyWord {
    inner: Arc<Inner>,
}

impl LazyWord {
    /// A word given by a pure term function. Symbols the function returns must
    /// lie in the alphabet; extension panics otherwise.
    pub fn from_fn<F>(alphabet: ModAlphabet, f: F) -> Self
    where
        F: Fn(u64) -> Symbol + Send + Sync + 'static,
    {
        Self::with_source(alphabet, Source::Terms(Arc::new(f)), Materialized::default())
    }

    /// A word produced in chunks: `f(start, count, out)` must append exactly
    /// `count` symbols, namely the terms at `start..start + count`.
    pub fn from_chunks<F>(alphabet: ModAlphabet, f: F) -> Self
    where
        F: Fn(u64, usize, &mut Vec<Symbol>) + Send + Sync + 'static,
    {
        Self::with_source(alphabet, Source::Chunks(Arc::new(f)), Materialized::default())
    }

    /// `j x φ(x) φ²(x) …` for `φ(j) = j x`. Callers check prolongability and
    /// growth; see [`Morphism::fixed_point`].
    pub(crate) fn fixed_point(morphism: Morphism, j: Symbol) -> Self {
        let seed = Materialized {
            symbols: morphism.image(j).to_vec(),
            cursor: 1,
        };
        Self::with_source(morphism.alphabet(), Source::FixedPoint(morphism), seed)
    }

    pub(crate) fn image(morphism: Morphism, inner: LazyWord) -> Self {
        Self::with_source(
            morphism.alphabet(),
            Source::Image(morphism, inner),
            Materialized::default(),
        )
    }

    fn with_source(alphabet: ModAlphabet, source: Source, state: Materialized) -> Self {
        Self {
            inner: Arc::new(Inner {
                alphabet,
                source,
                state: RwLock::new(state),
            }),
        }
    }

    pub fn alphabet(&self) -> ModAlphabet {
        self.inner.alphabet
    }

    /// Number of symbols currently cached.
    pub fn materialized_len(&self) -> usize {
        self.inner.state.read().expect("lazy word lock poisoned").symbols.len()
    }

    pub fn get(&self, i: usize) -> Symbol {
        {
            let state = self.inner.state.read().expect("lazy word lock poisoned");
            if let Some(&s) = state.symbols.get(i) {
                return s;
            }
        }
        self.ensure(i + 1);
        self.inner.state.read().expect("lazy word lock poisoned").symbols[i]
    }

    /// Runs `f` on the first `len` symbols without copying them.
    pub fn with_prefix<R>(&self, len: usize, f: impl FnOnce(&[Symbol]) -> R) -> R {
        self.ensure(len);
        let state = self.inner.state.read().expect("lazy word lock poisoned");
        f(&state.symbols[..len])
    }

    pub fn prefix(&self, len: usize) -> FiniteWord {
        self.with_prefix(len, |s| FiniteWord::from_trusted(self.alphabet(), s.to_vec()))
    }

    /// The half-open factor at `start..end`.
    pub fn slice(&self, start: usize, end: usize) -> Result<FiniteWord> {
        if start > end {
            return Err(Error::OutOfBounds {
                start,
                end,
                len: usize::MAX,
            });
        }
        self.with_prefix(end, |s| {
            Ok(FiniteWord::from_trusted(self.alphabet(), s[start..].to_vec()))
        })
    }

    /// Iterates over the whole infinite word.
    pub fn iter(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..).map(move |i| self.get(i))
    }

    fn ensure(&self, len: usize) {
        if self.materialized_len() >= len {
            return;
        }
        let mut state = self.inner.state.write().expect("lazy word lock poisoned");
        let current = state.symbols.len();
        if current >= len {
            return;
        }
        let target = len.max(current.saturating_mul(2)).max(MIN_CHUNK);
        self.extend(&mut state, target);
    }

    fn extend(&self, state: &mut Materialized, target: usize) {
        let alphabet = self.inner.alphabet;
        match &self.inner.source {
            Source::Terms(f) => {
                let start = state.symbols.len() as u64;
                state.symbols.extend((start..target as u64).map(|i| {
                    let s = f(i);
                    assert!(alphabet.contains(s), "term {i} = {s} outside the alphabet");
                    s
                }));
            }
            Source::Chunks(f) => {
                let start = state.symbols.len();
                f(start as u64, target - start, &mut state.symbols);
                assert_eq!(state.symbols.len(), target, "chunk generator miscounted");
                assert!(
                    state.symbols[start..].iter().all(|&s| alphabet.contains(s)),
                    "chunk generator produced a symbol outside the alphabet"
                );
            }
            Source::FixedPoint(phi) => {
                while state.symbols.len() < target {
                    let s = state.symbols[state.cursor];
                    state.symbols.extend_from_slice(phi.image(s));
                    state.cursor += 1;
                }
            }
            Source::Image(phi, inner) => {
                while state.symbols.len() < target {
                    let s = inner.get(state.cursor);
                    state.symbols.extend_from_slice(phi.image(s));
                    state.cursor += 1;
                }
            }
        }
    }
}

impl fmt::Debug for LazyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyWord")
            .field("alphabet", &self.inner.alphabet)
            .field("materialized", &self.materialized_len())
            .finish_non_exhaustive()
    }
}
