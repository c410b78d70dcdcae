//! Maps a handful of bit words to OFDM-IM symbols and back.
//!
//! cargo run --example map_demap

use ofdm_im::{demap_symbol, map_symbol, Backend, BitWord, IndexSelector, OfdmImConfig, SelectorCaps};

fn main() -> ofdm_im::Result<()> {
    let cfg = OfdmImConfig::new(8, 4, 4)?;
    println!(
        "n={} k={} M={}: {} index bits + {} symbol bits = {} bits per symbol",
        cfg.n(),
        cfg.k(),
        cfg.m_ary(),
        cfg.index_bits(),
        cfg.symbol_bits(),
        cfg.total_bits()
    );
    let selector = IndexSelector::prepare(Backend::Pt, cfg.n(), cfg.k(), SelectorCaps::default())?;
    for value in [0u64, 1, 0x155, 0x2aaa, (1 << cfg.total_bits()) - 1] {
        let word = BitWord::from_u64(value, cfg.total_bits());
        let symbol = map_symbol(&word, &cfg, &selector)?;
        let back = demap_symbol(&symbol, &cfg)?;
        assert_eq!(back, word);
        println!("{word} -> active {:?}", symbol.active_indices());
        println!("    {symbol}");
    }
    Ok(())
}
