//! Text form of baseband samples: `+1.000000000000-0.707106781187j`, or a
//! bare `0` for an inactive subcarrier.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub fn format_sample(z: Complex64) -> String {
    if z.re == 0.0 && z.im == 0.0 {
        return "0".to_string();
    }
    // Adding +0.0 turns -0.0 into +0.0 so the sign never depends on how a
    // zero component was produced.
    format!("{:+.12}{:+.12}j", z.re + 0.0, z.im + 0.0)
}

pub fn parse_sample(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed complex sample {s:?}"));
    if s == "0" {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let body = s.strip_suffix('j').ok_or_else(bad)?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| matches!(bytes[p], b'+' | b'-') && !matches!(bytes[p - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re = body[..split].parse::<f64>().map_err(|_| bad())?;
    let im = body[split..].parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}
