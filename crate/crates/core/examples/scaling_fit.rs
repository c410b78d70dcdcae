//! Least-squares slope of log(time) against log(n) on made-up data.
//!
//! cargo run --example scaling_fit

use ofdm_im::bench::fit_power_law;

fn main() -> ofdm_im::Result<()> {
    for exponent in [1.0, 2.0, 2.5] {
        let points: Vec<(f64, f64)> = (8..14)
            .map(|e| {
                let n = (1u64 << e) as f64;
                (n, 3e-9 * n.powf(exponent) * (1.0 + 0.05 * (e as f64).sin()))
            })
            .collect();
        println!("generated with exponent {exponent}: fitted {:.3}", fit_power_law(&points)?);
    }
    Ok(())
}
