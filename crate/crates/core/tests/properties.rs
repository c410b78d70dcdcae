//! Randomized properties of the selectors and the mapper.

use num_traits::One;
use ofdm_im::combinadics::{index_bits, pow2};
use ofdm_im::{
    binomial_multiplicative, demap_symbol, map_symbol, rank, unrank_baseline, unrank_pt, Backend, BigNat,
    BitWord, IndexPattern, IndexSelector, OfdmImConfig, PascalTable, SelectorCaps,
};
use proptest::prelude::*;

/// `(n, k, x)` with `x < C(n, k)`, built from random bytes so `x` can be
/// far wider than 64 bits.
fn dims_and_rank(max_n: usize) -> impl Strategy<Value = (usize, usize, BigNat)> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(move |(n, k)| (Just(n), Just(k), prop::collection::vec(any::<u8>(), 0..=max_n / 8 + 1)))
        .prop_map(|(n, k, bytes)| {
            let x = BigNat::from_bytes_le(&bytes) % binomial_multiplicative(n, k);
            (n, k, x)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unrank_then_rank_is_identity((n, k, x) in dims_and_rank(200)) {
        let pattern = unrank_baseline(&x, n, k).unwrap();
        prop_assert_eq!(pattern.len(), k);
        prop_assert!(pattern.max_index().map_or(true, |m| m < n));
        prop_assert_eq!(rank(&pattern, k).unwrap(), x);
    }

    #[test]
    fn pascal_selector_matches_baseline((n, k, x) in dims_and_rank(200)) {
        let table = PascalTable::build(n, k).unwrap();
        prop_assert_eq!(unrank_pt(&x, &table, n, k).unwrap(), unrank_baseline(&x, n, k).unwrap());
    }

    #[test]
    fn rank_preserves_colex_order(
        (n, k, a) in dims_and_rank(64),
        seed in any::<u64>(),
    ) {
        let count = binomial_multiplicative(n, k);
        let b = (BigNat::from(seed) * BigNat::from(0x9e37_79b9_7f4a_7c15u64)) % &count;
        let (pa, pb) = (unrank_baseline(&a, n, k).unwrap(), unrank_baseline(&b, n, k).unwrap());
        // Colex compares the largest differing index first.
        let colex = pa.coefficients().cmp(pb.coefficients());
        prop_assert_eq!(colex, a.cmp(&b));
    }

    #[test]
    fn table_rows_sum_to_powers_of_two(n in 1usize..120) {
        let table = PascalTable::build(n, n).unwrap();
        for c in 0..n {
            let sum: BigNat = table.row(c).unwrap().into_iter().sum::<BigNat>() + BigNat::one();
            prop_assert_eq!(sum, pow2(c as u64));
        }
    }

    #[test]
    fn unordered_indices_rank_consistently(mut indices in prop::collection::btree_set(0usize..100, 1..20)) {
        let k = indices.len();
        let pattern = IndexPattern::from_unordered(std::mem::take(&mut indices).into_iter().collect()).unwrap();
        let x = rank(&pattern, k).unwrap();
        prop_assert_eq!(unrank_baseline(&x, 100, k).unwrap(), pattern);
    }

    #[test]
    fn mapper_is_a_bijection_on_words(
        n in (1usize..=48).prop_map(|h| 2 * h),
        m_pow in 1u32..=3,
        seed in any::<u64>(),
    ) {
        let k = n / 2;
        let cfg = OfdmImConfig::new(n, k, 1 << m_pow).unwrap();
        let selector = IndexSelector::prepare(Backend::Pt, n, k, SelectorCaps::default()).unwrap();
        prop_assert_eq!(cfg.index_bits() as u64, index_bits(n, k).unwrap());
        let mut state = seed;
        let bits: Vec<bool> = (0..cfg.total_bits())
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                state >> 63 == 1
            })
            .collect();
        let word = BitWord::new(bits);
        let symbol = map_symbol(&word, &cfg, &selector).unwrap();
        prop_assert_eq!(symbol.active_indices().len(), k);
        prop_assert_eq!(demap_symbol(&symbol, &cfg).unwrap(), word);
    }
}
