use serde::Serialize;

use crate::words::{FiniteWord, Symbol};

/// The indices `n` with `x_k = x_{n−k}` for all `0 ≤ k ≤ n`, i.e. the ends of
/// palindromic prefixes `x_0 … x_n`, in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PalindromeLadder {
    pub indices: Vec<usize>,
}

impl PalindromeLadder {
    /// Re-checks every reported index with a direct two-pointer scan.
    pub fn recheck(&self, prefix: &[Symbol]) -> bool {
        self.indices
            .iter()
            .all(|&n| n < prefix.len() && is_palindrome(&prefix[..=n]))
    }

    pub fn contains(&self, n: usize) -> bool {
        self.indices.binary_search(&n).is_ok()
    }
}

fn is_palindrome(s: &[Symbol]) -> bool {
    let (mut i, mut j) = (0, s.len().saturating_sub(1));
    while i < j {
        if s[i] != s[j] {
            return false;
        }
        i += 1;
        j -= 1;
    }
    true
}

/// All palindromic prefix ends of `word`, in linear time.
///
/// `x_0 … x_n` is a palindrome exactly when it equals the suffix of length
/// `n + 1` of the reversed word, which the Z-array of
/// `x · # · reverse(x)` answers for all `n` at once.
pub fn palindromic_prefixes(word: &FiniteWord) -> PalindromeLadder {
    let x = word.symbols();
    let len = x.len();
    if len == 0 {
        return PalindromeLadder::default();
    }
    // Symbols are < m ≤ u32::MAX, so u32::MAX is a free separator.
    let mut text = Vec::with_capacity(2 * len + 1);
    text.extend_from_slice(x);
    text.push(Symbol::MAX);
    text.extend(x.iter().rev());
    let z = z_array(&text);
    let indices = (0..len)
        .filter(|&n| z[len + 1 + (len - 1 - n)] > n)
        .collect();
    PalindromeLadder { indices }
}

/// `z[i]` = length of the longest common prefix of `s` and `s[i..]`.
fn z_array(s: &[Symbol]) -> Vec<usize> {
    let n = s.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && s[z[i]] == s[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}
