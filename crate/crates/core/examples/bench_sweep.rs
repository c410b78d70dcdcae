//! A small timing sweep over all backends, printed as CSV, followed by the
//! fitted power-law exponent of each backend's map time.
//!
//! cargo run --release --example bench_sweep

use ofdm_im::bench::{fit_scaling_exponent, sweep, write_csv, BenchSettings};
use ofdm_im::Backend;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let settings = BenchSettings {
        trials: 50,
        warmup: 5,
        seed: 1,
        ..BenchSettings::default()
    };
    let n_list = [16, 32, 64, 128, 256];
    let records = sweep(&n_list, &[2, 4], &Backend::ALL, &settings)?;
    write_csv(std::io::stdout().lock(), &records)?;

    println!();
    for backend in Backend::ALL {
        let own: Vec<_> = records
            .iter()
            .filter(|r| r.backend == backend && r.m_ary == 2 && !r.is_capped())
            .cloned()
            .collect();
        match fit_scaling_exponent(&own) {
            Ok(slope) => println!("{:8} slope {slope:.2} over {} points", backend.as_str(), own.len()),
            Err(e) => println!("{:8} no fit: {e}", backend.as_str()),
        }
    }
    Ok(())
}
