//! Shows how quickly a full look-up table outgrows any cap.
//!
//! cargo run --example full_lut

use ofdm_im::combinadics::DEFAULT_LUT_CAP;
use ofdm_im::{BigNat, FullLut};

fn main() -> ofdm_im::Result<()> {
    let lut = FullLut::build(8, 4)?;
    println!("n=8 k=4: {} entries, p1={}", lut.entry_count(), lut.index_bits());
    for x in 0..4 {
        println!("  {x} -> {:?}", lut.get(x).unwrap());
    }
    println!("  x=64 is out of range: {}", lut.lookup(&BigNat::from(64u32)).unwrap_err());

    println!("\nn, entries needed (cap {DEFAULT_LUT_CAP})");
    for n in [16usize, 24, 32, 64, 128] {
        let need = FullLut::required_entries(n, n / 2);
        let status = match FullLut::build(n, n / 2) {
            Ok(_) => "built".to_string(),
            Err(e) => e.to_string(),
        };
        println!("{n:4} {need:>40}  {status}");
    }
    Ok(())
}
