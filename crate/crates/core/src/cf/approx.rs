use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{Bracket, ConvergentStream};
use crate::{Error, Result};

/// One convergent's approximation quality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationRow {
    pub n: usize,
    pub p: BigInt,
    pub q: BigInt,
    /// `1/(q_n q_{n+1})`, an upper bound for `|α − p_n/q_n|`.
    pub error_bound: BigRational,
    /// `1/q_n²`.
    pub dirichlet_bound: BigRational,
    /// Enclosure of `q_n²·|α − p_n/q_n|`.
    pub scaled_error: Bracket,
    /// `|α − p_n/q_n| ≤ 1/(q_n q_{n+1}) < 1/q_n²`, checked against the
    /// enclosure of `α`.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationReport {
    pub rows: Vec<ApproximationRow>,
    /// Largest partial quotient among `a_1..=a_{N+1}`.
    pub max_quotient: u64,
    /// Lower end of `min_n q_n²·|α − p_n/q_n|`. Positive throughout for a
    /// bounded-quotient stream, which is the finite-scale picture of a
    /// badly approximable number.
    pub min_scaled_error: BigRational,
    /// The enclosure of `α` all rows were measured against.
    pub alpha: Bracket,
}

impl ApproximationReport {
    pub fn all_certified(&self) -> bool {
        self.rows.iter().all(|r| r.certified)
    }
}

/// Rows `1..=n` for `α = [0; a_1, a_2, …]`.
///
/// `α` itself is enclosed by convergents `2n + 20` and `2n + 21`, far
/// tighter than any row's error.
pub fn approximation_report(quotients: impl IntoIterator<Item = u64>, n: usize) -> Result<ApproximationReport> {
    if n < 2 {
        return Err(Error::Precondition("an approximation table needs N ≥ 2".into()));
    }
    let depth = 2 * n + 21;
    let mut stream = ConvergentStream::new();
    let mut pairs = Vec::with_capacity(depth);
    let mut max_quotient = 0;
    for a in quotients.into_iter().take(depth) {
        if pairs.len() <= n {
            max_quotient = max_quotient.max(a);
        }
        pairs.push(stream.push(a)?.clone());
    }
    if pairs.len() < depth {
        return Err(Error::Precondition(format!(
            "the stream ended after {} quotients, {depth} are needed",
            pairs.len()
        )));
    }
    let alpha = pairs.last().expect("depth > 0").bracket();

    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let (c, next) = (&pairs[i], &pairs[i + 1]);
        let value = c.value();
        let q2 = BigRational::from(&c.q * &c.q);
        let error_bound = BigRational::new(BigInt::one(), &c.q * &next.q);
        let dirichlet_bound = BigRational::new(BigInt::one(), &c.q * &c.q);
        // α's enclosure lies entirely on one side of p_n/q_n.
        let d_lo = (&alpha.lo - &value).abs();
        let d_hi = (&alpha.hi - &value).abs();
        let distance = Bracket::new(d_lo, d_hi);
        let certified = distance.hi <= error_bound && error_bound < dirichlet_bound;
        rows.push(ApproximationRow {
            n: c.index,
            p: c.p.clone(),
            q: c.q.clone(),
            error_bound,
            dirichlet_bound,
            scaled_error: Bracket::new(&distance.lo * &q2, &distance.hi * &q2),
            certified,
        });
    }
    let min_scaled_error = rows
        .iter()
        .map(|r| r.scaled_error.lo.clone())
        .min()
        .expect("n ≥ 2 rows");
    Ok(ApproximationReport {
        rows,
        max_quotient,
        min_scaled_error,
        alpha,
    })
}
