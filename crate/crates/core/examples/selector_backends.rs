//! Runs the three index selectors on the same ranks and shows that they
//! agree, along with the table-query count of the Pascal selector.
//!
//! cargo run --example selector_backends

use ofdm_im::combinadics::{index_bits, pow2, unrank_pt_counted};
use ofdm_im::{rank, Backend, BigNat, IndexSelector, PascalTable, SelectorCaps};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> ofdm_im::Result<()> {
    let (n, k) = (20, 10);
    let p1 = index_bits(n, k).unwrap();
    let selectors: Vec<IndexSelector> = Backend::ALL
        .iter()
        .map(|&b| IndexSelector::prepare(b, n, k, SelectorCaps::default()))
        .collect::<Result<_, _>>()?;
    let table = PascalTable::build(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let limit = pow2(p1);
    println!("n={n} k={k} p1={p1}");
    for _ in 0..5 {
        let x = BigNat::from(rng.gen_range(0..1u64 << p1)) % &limit;
        let patterns: Vec<_> = selectors.iter().map(|s| s.select(&x, n, k)).collect::<Result<_, _>>()?;
        assert!(patterns.windows(2).all(|w| w[0] == w[1]));
        let (_, queries) = unrank_pt_counted(&x, &table, n, k)?;
        assert_eq!(rank(&patterns[0], k)?, x);
        println!("x={x:7} -> {:?} ({queries} table queries)", patterns[0].coefficients());
    }
    Ok(())
}
