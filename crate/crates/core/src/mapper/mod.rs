//! The OFDM-IM mapper and its noiseless inverse.
//!
//! An `m = p1 + p2` bit word is split into `p1` index bits, which select
//! the `k` active subcarriers, and `p2 = k log2 M` constellation bits, which
//! fill them. Inactive subcarriers carry exact zeros.
//!
//! Conventions:
//! * index bits come first, both fields are big-endian;
//! * the j-th constellation point goes to the j-th pattern entry, so points
//!   fill the active positions from the highest index down.

mod constellation;
mod serial;

pub use constellation::{Constellation, MATCH_DECIMALS};
pub use serial::{format_sample, parse_sample};

use crate::combinadics::{binomial_multiplicative, rank, IndexPattern, IndexSelector};
use crate::error::{Error, Result};
use crate::BigNat;
use num_complex::Complex64;
use std::fmt;
use std::str::FromStr;

/// Layout of one OFDM-IM symbol and its bit budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OfdmImConfig {
    n: usize,
    k: usize,
    m_ary: usize,
    index_bits: usize,
    symbol_bits: usize,
}

impl OfdmImConfig {
    pub fn new(n: usize, k: usize, m_ary: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::dims(format!("need 1 <= k <= n, got n={n}, k={k}")));
        }
        if m_ary < 2 || !m_ary.is_power_of_two() {
            return Err(Error::UnsupportedOrder(m_ary));
        }
        let count = binomial_multiplicative(n, k);
        let index_bits = (count.bits() - 1) as usize;
        let symbol_bits = k * m_ary.trailing_zeros() as usize;
        Ok(OfdmImConfig {
            n,
            k,
            m_ary,
            index_bits,
            symbol_bits,
        })
    }

    /// `k = n/2`, BPSK.
    pub fn ideal(n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::dims(format!("ideal setup needs an even n, got {n}")));
        }
        Self::new(n, n / 2, 2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m_ary(&self) -> usize {
        self.m_ary
    }

    /// `p1 = floor(log2 C(n, k))`.
    pub fn index_bits(&self) -> usize {
        self.index_bits
    }

    /// `p2 = k log2 M`.
    pub fn symbol_bits(&self) -> usize {
        self.symbol_bits
    }

    /// `m = p1 + p2`.
    pub fn total_bits(&self) -> usize {
        self.index_bits + self.symbol_bits
    }

    pub fn bits_per_point(&self) -> usize {
        self.m_ary.trailing_zeros() as usize
    }

    pub fn is_ideal(&self) -> bool {
        self.n % 2 == 0 && self.k == self.n / 2 && self.m_ary == 2
    }

    /// `C(n, k)`, the number of distinct activation patterns.
    pub fn pattern_count(&self) -> BigNat {
        binomial_multiplicative(self.n, self.k)
    }

    pub fn constellation(&self) -> Constellation {
        Constellation::new(self.m_ary).expect("order validated in new")
    }
}

/// An input bit word, most significant bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitWord(Vec<bool>);

impl BitWord {
    pub fn new(bits: Vec<bool>) -> Self {
        BitWord(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BitWord(vec![false; len])
    }

    /// The low `len` bits of `value`, MSB first.
    pub fn from_u64(value: u64, len: usize) -> Self {
        BitWord((0..len).rev().map(|b| b < 64 && value >> b & 1 == 1).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("bit string contains {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitWord)
    }
}

/// `n` complex baseband samples, exact zeros on inactive subcarriers.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedSymbol(Vec<Complex64>);

impl MappedSymbol {
    pub fn new(samples: Vec<Complex64>) -> Self {
        MappedSymbol(samples)
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Positions of the nonzero samples, ascending.
    pub fn active_indices(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, z)| constellation::sample_key(**z) != (0, 0))
            .map(|(pos, _)| pos)
            .collect()
    }

    /// One line of comma-separated `re±imj` values, `0` for inactive
    /// subcarriers.
    pub fn to_line(&self) -> String {
        self.0.iter().map(|&z| format_sample(z)).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for MappedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

impl FromStr for MappedSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .split(',')
            .map(parse_sample)
            .collect::<Result<Vec<_>>>()
            .map(MappedSymbol)
    }
}

/// Splits a word into the index value `x` (first `p1` bits) and the
/// constellation bits.
pub fn split_bits(word: &BitWord, cfg: &OfdmImConfig) -> Result<(BigNat, Vec<bool>)> {
    if word.len() != cfg.total_bits() {
        return Err(Error::LengthMismatch {
            what: "bit word",
            expected: cfg.total_bits(),
            actual: word.len(),
        });
    }
    let (index, symbol) = word.bits().split_at(cfg.index_bits());
    Ok((bits_to_nat(index), symbol.to_vec()))
}

/// Big-endian bits to a number, packed without branching on bit values.
fn bits_to_nat(bits: &[bool]) -> BigNat {
    let digits: Vec<u32> = bits
        .rchunks(32)
        .map(|chunk| chunk.iter().fold(0u32, |acc, &b| acc << 1 | b as u32))
        .collect();
    BigNat::new(digits)
}

/// Constellation points for `p2` symbol bits.
pub fn modulate(sym_bits: &[bool], cfg: &OfdmImConfig) -> Result<Vec<Complex64>> {
    if sym_bits.len() != cfg.symbol_bits() {
        return Err(Error::LengthMismatch {
            what: "constellation bits",
            expected: cfg.symbol_bits(),
            actual: sym_bits.len(),
        });
    }
    cfg.constellation().modulate(sym_bits)
}

/// Maps one word to a symbol. The result depends on `(word, cfg)` only;
/// `selector` changes the cost, not the output.
pub fn map_symbol(word: &BitWord, cfg: &OfdmImConfig, selector: &IndexSelector) -> Result<MappedSymbol> {
    let (x, sym_bits) = split_bits(word, cfg)?;
    let pattern = selector.select(&x, cfg.n(), cfg.k())?;
    let points = modulate(&sym_bits, cfg)?;
    let mut samples = vec![Complex64::new(0.0, 0.0); cfg.n()];
    for (c, point) in pattern.iter().zip(points) {
        samples[c] = point;
    }
    Ok(MappedSymbol(samples))
}

/// Recovers the word that [`map_symbol`] turned into `sym`.
pub fn demap_symbol(sym: &MappedSymbol, cfg: &OfdmImConfig) -> Result<BitWord> {
    if sym.len() != cfg.n() {
        return Err(Error::LengthMismatch {
            what: "symbol",
            expected: cfg.n(),
            actual: sym.len(),
        });
    }
    let active = sym.active_indices();
    if active.len() != cfg.k() {
        return Err(Error::ActiveCount {
            expected: cfg.k(),
            found: active.len(),
        });
    }
    let pattern = IndexPattern::from_unordered(active)?;
    let x = rank(&pattern, cfg.k())?;
    if x.bits() > cfg.index_bits() as u64 {
        return Err(Error::RankOutOfRange {
            x,
            limit: crate::combinadics::pow2(cfg.index_bits() as u64),
        });
    }

    let mut bits = Vec::with_capacity(cfg.total_bits());
    for b in (0..cfg.index_bits() as u64).rev() {
        bits.push(x.bit(b));
    }
    let constellation = cfg.constellation();
    for c in pattern.iter() {
        let z = sym.samples()[c];
        let label = constellation.label_of(z).ok_or_else(|| Error::UnknownPoint {
            position: c,
            value: format_sample(z),
        })?;
        constellation.push_label_bits(label, &mut bits);
    }
    Ok(BitWord(bits))
}
