//! Oracles that share no code path with the library: direct digit loops,
//! brute-force factor sets and exact rational folding.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `(sum of base-m digits of n) mod m`, written out longhand.
pub fn digit_sum_term(n: u64, m: u64) -> u32 {
    let mut digits = Vec::new();
    let mut x = n;
    while x > 0 {
        digits.push(x % m);
        x /= m;
    }
    (digits.iter().sum::<u64>() % m) as u32
}

pub fn digit_sum_prefix(len: usize, m: u64) -> Vec<u32> {
    (0..len as u64).map(|n| digit_sum_term(n, m)).collect()
}

/// Number of distinct length-`n` factors, by hashing every window.
pub fn naive_complexity(word: &[u32], n: usize) -> u64 {
    word.windows(n).collect::<HashSet<_>>().len() as u64
}

/// `[0; a_1, …, a_k]` folded from the innermost quotient outwards.
pub fn fold_continued_fraction(quotients: &[u64]) -> BigRational {
    let mut x = BigRational::zero();
    for &a in quotients.iter().rev() {
        x = (BigRational::from(BigInt::from(a)) + x).recip();
    }
    x
}

pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// First `digits` decimals of `(√5 − 1)/2`, from an integer square root.
pub fn golden_conjugate_digits(digits: usize) -> String {
    let guard = digits + 6;
    let scale = BigUint::from(10u32).pow(guard as u32);
    let root = (BigUint::from(5u32) * &scale * &scale).sqrt();
    let value = (root - &scale) / 2u32;
    let truncated = value / BigUint::from(10u32).pow((guard - digits) as u32);
    format!("0.{:0>width$}", truncated.to_string(), width = digits)
}
