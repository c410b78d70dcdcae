//! OFDM with index modulation, with the index selector assisted by a
//! Pascal's-triangle table.
//!
//! The mapper turns `m = p1 + p2` bits into an `n`-subcarrier symbol: `p1`
//! bits choose which `k` subcarriers are active, `p2 = k log2 M` bits pick
//! their constellation points. Choosing the active set is an unranking in
//! the combinatorial number system. This crate offers three selectors for
//! it that agree on every input but differ in cost:
//!
//! | backend    | time per symbol     | table entries          |
//! |------------|---------------------|------------------------|
//! | `baseline` | `O(k^2)` arithmetic | none                   |
//! | `pt`       | `O(n)` queries      | `n * k`                |
//! | `lut`      | one read            | `2^p1 ~ 2^n / sqrt(n)` |
//!
//! ```
//! use ofdm_im::{map_symbol, demap_symbol, Backend, BitWord, IndexSelector, OfdmImConfig, SelectorCaps};
//!
//! let cfg = OfdmImConfig::new(8, 4, 2).unwrap();
//! let selector = IndexSelector::prepare(Backend::Pt, 8, 4, SelectorCaps::default()).unwrap();
//! let word: BitWord = "0001011011".parse().unwrap();
//! let symbol = map_symbol(&word, &cfg, &selector).unwrap();
//! assert_eq!(symbol.active_indices(), vec![0, 1, 2, 5]);
//! assert_eq!(demap_symbol(&symbol, &cfg).unwrap(), word);
//! ```

pub mod bench;
pub mod cli;
pub mod combinadics;
pub mod error;
pub mod mapper;

/// Unbounded nonnegative integer used for ranks and binomial coefficients.
pub type BigNat = num_bigint::BigUint;

pub use combinadics::{
    binomial_multiplicative, rank, unrank_baseline, unrank_pt, Backend, FullLut, IndexPattern,
    IndexSelector, PascalTable, SelectorCaps,
};
pub use error::{Error, Result};
pub use mapper::{demap_symbol, map_symbol, split_bits, BitWord, MappedSymbol, OfdmImConfig};
