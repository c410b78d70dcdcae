//! Compares the exact index-bit count for k = n/2 with n - log2 sqrt(n).
//!
//! cargo run --example asymptotics

use ofdm_im::bench::{asymptotics_report, write_asymptotics_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = asymptotics_report(&[4, 16, 64, 256, 1024, 4096, 16384])?;
    write_asymptotics_csv(std::io::stdout().lock(), &rows)?;
    Ok(())
}
