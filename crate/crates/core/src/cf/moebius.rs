use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{convergents, ratio, Bracket, ConvergentPair, ConvergentStream};
use crate::{Error, Result};

/// `x ↦ (a·x + b) / (c·x + d)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusMap {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl MoebiusMap {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one())
    }

    pub fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `self ∘ other`, the matrix product.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// The integer inverse of a unimodular map: `det · adj`, so that
    /// `self ∘ inverse` is exactly the identity matrix.
    pub fn unimodular_inverse(&self) -> Result<MoebiusMap> {
        let det = self.determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::Domain(format!(
                "map with determinant {det} has no integer inverse"
            )));
        }
        Ok(MoebiusMap {
            a: &det * &self.d,
            b: -(&det * &self.b),
            c: -(&det * &self.c),
            d: &det * &self.a,
        })
    }

    /// `±` the identity matrix, i.e. the identity map.
    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && self.a.abs().is_one()
    }

    /// `None` at the pole `x = −d/c`.
    pub fn apply(&self, x: &BigRational) -> Option<BigRational> {
        let num = x * BigRational::from(self.a.clone()) + BigRational::from(self.b.clone());
        let den = x * BigRational::from(self.c.clone()) + BigRational::from(self.d.clone());
        (!den.is_zero()).then(|| num / den)
    }

    /// `−d/c`, or `None` for affine maps.
    pub fn pole(&self) -> Option<BigRational> {
        (!self.c.is_zero()).then(|| ratio(&-self.d.clone(), &self.c))
    }

    /// Image of an interval. A Möbius map is monotone on any interval that
    /// avoids its pole, so the image is spanned by the endpoint images.
    pub fn apply_bracket(&self, bracket: &Bracket) -> Option<Bracket> {
        if self.pole().is_some_and(|p| bracket.contains(&p)) {
            return None;
        }
        Some(Bracket::new(self.apply(&bracket.lo)?, self.apply(&bracket.hi)?))
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ ({}·x + {}) / ({}·x + {})", self.a, self.b, self.c, self.d)
    }
}

/// For the convergent pair at index `n − 1` of `α = [0; a_1, a_2, …]`,
/// returns `T` with `T(α_n) = α`, where `α_n = [a_n; a_{n+1}, …]`, and its
/// integer inverse `S`. Needs `n ≥ 2`.
///
/// `T(x) = (p_{n−1}·x + p_{n−2}) / (q_{n−1}·x + q_{n−2})`.
pub fn tail_transform(pair: &ConvergentPair) -> Result<(MoebiusMap, MoebiusMap)> {
    if pair.index < 1 {
        return Err(Error::OutOfBounds {
            start: pair.index,
            end: pair.index + 1,
            len: 1,
        });
    }
    let t = MoebiusMap::new(
        pair.p.clone(),
        pair.p_prev.clone(),
        pair.q.clone(),
        pair.q_prev.clone(),
    );
    let s = t.unimodular_inverse()?;
    Ok((t, s))
}

/// Exact comparison between `α` and its tail `α_n` through the tail maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailCheck {
    pub n: usize,
    /// `α` enclosed by its convergents through `a_depth`.
    pub alpha: Bracket,
    /// `S(alpha)`.
    pub mapped: Bracket,
    /// `α_n` enclosed by its own convergents, using more quotients.
    pub tail: Bracket,
    /// `T(tail)`, which must land back inside `alpha`.
    pub folded: Bracket,
    pub determinant: BigInt,
}

impl TailCheck {
    pub fn is_consistent(&self) -> bool {
        self.mapped.contains_bracket(&self.tail)
            && self.alpha.contains_bracket(&self.folded)
            && self.determinant.abs().is_one()
    }
}

/// Builds the [`TailCheck`] for `α = [0; quotients…]` at tail index `n ≥ 2`,
/// enclosing `α` with the first `depth` quotients and `α_n` with all of them.
pub fn check_tail_interval(quotients: &[u64], n: usize, depth: usize) -> Result<TailCheck> {
    if n < 2 {
        return Err(Error::OutOfBounds { start: n, end: n, len: 2 });
    }
    if !(n < depth && depth < quotients.len()) {
        return Err(Error::Precondition(format!(
            "need n < depth < number of quotients, got n={n}, depth={depth}, {} quotients",
            quotients.len()
        )));
    }
    let alpha_pairs = convergents(quotients[..depth].iter().copied(), depth)?;
    let alpha = alpha_pairs.last().expect("depth ≥ 1").bracket();
    let (t, s) = tail_transform(&alpha_pairs[n - 2])?;

    // α_n = [a_n; a_{n+1}, …] with a_n at slice position n − 1.
    let mut tail_stream = ConvergentStream::with_integer_part(BigInt::from(quotients[n - 1]));
    for &a in &quotients[n..] {
        tail_stream.push(a)?;
    }
    let tail = tail_stream.current().bracket();

    let mapped = s
        .apply_bracket(&alpha)
        .ok_or_else(|| Error::Domain("α's enclosure straddles the pole of S".into()))?;
    let folded = t
        .apply_bracket(&tail)
        .ok_or_else(|| Error::Domain("α_n's enclosure straddles the pole of T".into()))?;
    Ok(TailCheck {
        n,
        alpha,
        mapped,
        tail,
        folded,
        determinant: t.determinant(),
    })
}
