use super::{check_dims, index_bits, pow2, IndexPattern};
use crate::error::{Error, Result};
use crate::BigNat;
use num_traits::ToPrimitive;

/// Default entry cap for [`FullLut::build`]: `2^24` patterns.
pub const DEFAULT_LUT_CAP: u64 = 1 << 24;

/// Direct look-up table from every `p1`-bit index word to its pattern.
///
/// Holds `2^p1` patterns of `k` indices each, which under `k = n/2` grows
/// like `2^n / sqrt(n)`; construction fails loudly once that passes the cap.
#[derive(Debug, Clone)]
pub struct FullLut {
    n: usize,
    k: usize,
    index_bits: u32,
    entries: usize,
    /// Pattern `x` occupies `flat[x * k..(x + 1) * k]`, decreasing.
    flat: Vec<u32>,
}

impl FullLut {
    pub fn build(n: usize, k: usize) -> Result<Self> {
        Self::build_with_cap(n, k, DEFAULT_LUT_CAP)
    }

    pub fn build_with_cap(n: usize, k: usize, cap_entries: u64) -> Result<Self> {
        check_dims(n, k)?;
        if n > u32::MAX as usize {
            return Err(Error::dims(format!("n={n} does not fit a u32 index")));
        }
        let bits = index_bits(n, k).expect("k <= n");
        let entries = match Self::required_entries(n, k).to_u64() {
            Some(e) if e <= cap_entries => e as usize,
            _ => {
                return Err(Error::Capacity {
                    what: "full look-up table",
                    unit: "entries",
                    required: Self::required_entries(n, k),
                    cap: BigNat::from(cap_entries),
                })
            }
        };

        // Entry x + 1 is the colex successor of entry x, so the table is
        // filled by stepping through combinations rather than by unranking.
        let mut flat = Vec::with_capacity(entries * k);
        let mut current: Vec<u32> = (0..k as u32).rev().collect();
        for x in 0..entries {
            flat.extend_from_slice(&current);
            if x + 1 < entries {
                colex_successor(&mut current);
            }
        }
        Ok(FullLut {
            n,
            k,
            index_bits: bits as u32,
            entries,
            flat,
        })
    }

    /// `2^p1`, the number of patterns a full table for `(n, k)` stores.
    pub fn required_entries(n: usize, k: usize) -> BigNat {
        index_bits(n, k).map(pow2).unwrap_or_default()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn index_bits(&self) -> u32 {
        self.index_bits
    }

    pub fn entry_count(&self) -> usize {
        self.entries
    }

    /// Stored pattern for index word `x`, as a raw decreasing slice.
    pub fn get(&self, x: usize) -> Option<&[u32]> {
        if x >= self.entries {
            return None;
        }
        self.flat.get(x * self.k..(x + 1) * self.k)
    }

    pub fn lookup(&self, x: &BigNat) -> Result<IndexPattern> {
        let out_of_range = || Error::RankOutOfRange {
            x: x.clone(),
            limit: BigNat::from(self.entry_count()),
        };
        let idx = x.to_usize().ok_or_else(out_of_range)?;
        let slot = self.get(idx).ok_or_else(out_of_range)?;
        Ok(IndexPattern::from_decreasing(
            slot.iter().map(|&c| c as usize).collect(),
        ))
    }
}

/// Next k-subset in colex order, stored decreasing. Indices only grow, so
/// the caller bounds the walk by the entry count.
fn colex_successor(pattern: &mut [u32]) {
    let k = pattern.len();
    // Ascending position j is pattern[k - 1 - j].
    for j in 0..k {
        let pos = k - 1 - j;
        let next_up = if pos == 0 { u32::MAX } else { pattern[pos - 1] };
        if pattern[pos] + 1 < next_up {
            pattern[pos] += 1;
            for (low, slot) in pattern[pos + 1..].iter_mut().rev().enumerate() {
                *slot = low as u32;
            }
            return;
        }
    }
}
