//! Gray-labelled PSK alphabets for the active subcarriers.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Decimal places used when matching received samples to points.
pub const MATCH_DECIMALS: i32 = 12;

/// Rounded `(re, im)` key at [`MATCH_DECIMALS`] places.
pub(crate) fn sample_key(z: Complex64) -> (i64, i64) {
    let scale = 10f64.powi(MATCH_DECIMALS);
    ((z.re * scale).round() as i64, (z.im * scale).round() as i64)
}

/// Unit-energy M-ary alphabet indexed by bit label (MSB first).
///
/// * M = 2: `0 -> +1`, `1 -> -1`.
/// * M = 4: `00 -> (1+j)/sqrt2`, `01 -> (-1+j)/sqrt2`, `11 -> (-1-j)/sqrt2`,
///   `10 -> (1-j)/sqrt2`.
/// * M >= 8: Gray-labelled M-PSK at angles `(2p + 1) * pi / M`.
#[derive(Debug, Clone)]
pub struct Constellation {
    bits_per_point: usize,
    points: Vec<Complex64>,
    labels: HashMap<(i64, i64), usize>,
}

impl Constellation {
    pub fn new(order: usize) -> Result<Self> {
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::UnsupportedOrder(order));
        }
        let points: Vec<Complex64> = match order {
            2 => vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            4 => {
                let a = FRAC_1_SQRT_2;
                vec![
                    Complex64::new(a, a),
                    Complex64::new(-a, a),
                    Complex64::new(a, -a),
                    Complex64::new(-a, -a),
                ]
            }
            m => (0..m)
                .map(|label| {
                    let pos = gray_decode(label);
                    Complex64::from_polar(1.0, (2 * pos + 1) as f64 * PI / m as f64)
                })
                .collect(),
        };
        let labels = points
            .iter()
            .enumerate()
            .map(|(label, &p)| (sample_key(p), label))
            .collect();
        Ok(Constellation {
            bits_per_point: order.trailing_zeros() as usize,
            points,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn bits_per_point(&self) -> usize {
        self.bits_per_point
    }

    pub fn point(&self, label: usize) -> Complex64 {
        self.points[label]
    }

    /// Label of the point equal to `z` after rounding to 12 decimals.
    pub fn label_of(&self, z: Complex64) -> Option<usize> {
        self.labels.get(&sample_key(z)).copied()
    }

    /// Maps consecutive `log2 M`-bit groups to points.
    pub fn modulate(&self, bits: &[bool]) -> Result<Vec<Complex64>> {
        if bits.len() % self.bits_per_point != 0 {
            return Err(Error::LengthMismatch {
                what: "constellation bits",
                expected: bits.len().next_multiple_of(self.bits_per_point),
                actual: bits.len(),
            });
        }
        Ok(bits
            .chunks(self.bits_per_point)
            .map(|group| self.points[bits_to_label(group)])
            .collect())
    }

    /// Appends the `log2 M` label bits of `label`, MSB first.
    pub fn push_label_bits(&self, label: usize, out: &mut Vec<bool>) {
        for b in (0..self.bits_per_point).rev() {
            out.push(label >> b & 1 == 1);
        }
    }
}

fn bits_to_label(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

fn gray_decode(mut g: usize) -> usize {
    let mut b = g;
    while g > 0 {
        g >>= 1;
        b ^= g;
    }
    b
}
