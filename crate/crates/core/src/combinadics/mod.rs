//! Combinatorial number system machinery.
//!
//! Every integer `x` in `[0, C(n, k))` has a unique representation
//! `x = C(c_k, k) + ... + C(c_2, 2) + C(c_1, 1)` with
//! `n > c_k > ... > c_1 >= 0`. Reading the `c_i` as active subcarrier
//! indices gives the index selector of an OFDM-IM mapper. The order induced
//! on k-subsets is colexicographic.
//!
//! Three selectors are provided, all producing the same patterns:
//!
//! * [`unrank_baseline`] evaluates each binomial from scratch with the
//!   multiplicative formula, `O(k^2)` arithmetic steps per call;
//! * [`unrank_pt`] reads every binomial from a [`PascalTable`], `O(n + k)`
//!   table queries per call;
//! * [`FullLut`] stores all `2^p1` patterns and answers with one read.

mod lut;
mod pascal;
mod selector;

pub use lut::{FullLut, DEFAULT_LUT_CAP};
pub use pascal::{unrank_pt, unrank_pt_counted, PascalTable, DEFAULT_TABLE_BUDGET_BYTES};
pub use selector::{Backend, IndexSelector, SelectorCaps};

use crate::error::{Error, Result};
use crate::BigNat;
use num_traits::{One, Zero};
use std::fmt;

/// `C(c, i)` by the running product `prod_{j=1..i} (c - j + 1) / j`.
///
/// Each partial product is itself a binomial coefficient, so multiplying
/// before dividing keeps every intermediate value an exact integer.
pub fn binomial_multiplicative(c: usize, i: usize) -> BigNat {
    if c < i {
        return BigNat::zero();
    }
    let mut acc: u128 = 1;
    for j in 1..=i {
        match acc.checked_mul((c - j + 1) as u128) {
            Some(p) => acc = p / j as u128,
            None => return binomial_tail(BigNat::from(acc), c, j, i),
        }
    }
    BigNat::from(acc)
}

fn binomial_tail(mut acc: BigNat, c: usize, from: usize, to: usize) -> BigNat {
    for j in from..=to {
        acc *= (c - j + 1) as u64;
        acc /= j as u64;
    }
    acc
}

/// `floor(log2 C(n, k))`, or `None` when `C(n, k) = 0`.
pub fn index_bits(n: usize, k: usize) -> Option<u64> {
    let count = binomial_multiplicative(n, k);
    (!count.is_zero()).then(|| count.bits() - 1)
}

/// Active subcarrier indices in production order `[c_k, ..., c_1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexPattern(Vec<usize>);

impl IndexPattern {
    /// Validates that `coefficients` is strictly decreasing.
    pub fn new(coefficients: Vec<usize>) -> Result<Self> {
        if let Some(w) = coefficients.windows(2).find(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPattern(format!(
                "coefficients must be strictly decreasing, found {} before {}",
                w[0], w[1]
            )));
        }
        Ok(IndexPattern(coefficients))
    }

    pub(crate) fn from_decreasing(coefficients: Vec<usize>) -> Self {
        debug_assert!(coefficients.windows(2).all(|w| w[0] > w[1]));
        IndexPattern(coefficients)
    }

    /// Pattern from an arbitrary set of distinct indices.
    pub fn from_unordered(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(indices)
    }

    pub fn coefficients(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest index `c_k`, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Checks the pattern against an `n`-subcarrier, `k`-active layout.
    pub fn check_fits(&self, n: usize, k: usize) -> Result<()> {
        if self.0.len() != k {
            return Err(Error::LengthMismatch {
                what: "index pattern",
                expected: k,
                actual: self.0.len(),
            });
        }
        match self.max_index() {
            Some(top) if top >= n => Err(Error::InvalidPattern(format!(
                "index {top} is outside 0..{n}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IndexPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (pos, c) in self.0.iter().enumerate() {
            if pos > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// `x = sum_i C(c_i, i)`, the inverse of every selector.
pub fn rank(pattern: &IndexPattern, k: usize) -> Result<BigNat> {
    if pattern.len() != k {
        return Err(Error::LengthMismatch {
            what: "index pattern",
            expected: k,
            actual: pattern.len(),
        });
    }
    Ok(pattern
        .iter()
        .zip((1..=k).rev())
        .map(|(c, i)| binomial_multiplicative(c, i))
        .sum())
}

/// The online index selector: every `C(c, i)` is computed from scratch.
pub fn unrank_baseline(x: &BigNat, n: usize, k: usize) -> Result<IndexPattern> {
    unrank_with(x, n, k, binomial_multiplicative)
}

/// Index selector loop with a caller-supplied binomial source.
///
/// The candidate for `c_i` starts one below `c_{i+1}` (at `n - 1` for
/// `c_k`) and is decremented while `C(candidate, i) > x`; the accepted
/// coefficient is then subtracted from `x`. `binomial` is only ever asked
/// for `(c, i)` with `c < n` and `1 <= i <= k`.
pub fn unrank_with<F>(x: &BigNat, n: usize, k: usize, mut binomial: F) -> Result<IndexPattern>
where
    F: FnMut(usize, usize) -> BigNat,
{
    check_dims(n, k)?;
    let limit = binomial_multiplicative(n, k);
    if *x >= limit {
        return Err(Error::RankOutOfRange {
            x: x.clone(),
            limit,
        });
    }
    let mut rest = x.clone();
    let mut out = Vec::with_capacity(k);
    let mut largest = n.wrapping_sub(1);
    for i in (1..=k).rev() {
        let mut c = largest;
        let mut coeff = binomial(c, i);
        while coeff > rest {
            c -= 1;
            coeff = binomial(c, i);
        }
        rest -= coeff;
        out.push(c);
        largest = c.wrapping_sub(1);
    }
    if !rest.is_zero() {
        return Err(Error::Internal(format!("selector left residue {rest}")));
    }
    Ok(IndexPattern::from_decreasing(out))
}

/// Selectors accept any `k <= n`; `k = 0` has the single empty pattern.
pub(crate) fn check_dims(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::dims(format!("k={k} exceeds n={n}")));
    }
    Ok(())
}

/// `2^bits` as a big integer.
pub fn pow2(bits: u64) -> BigNat {
    BigNat::one() << bits
}
