//! Runtime, throughput and table-size measurements for the three selectors.
//!
//! Timing follows a steady-state view: table construction is excluded,
//! warmup calls are discarded, and the reported time is the mean over many
//! mapping calls on seeded uniform random words.

use crate::combinadics::{index_bits, pow2, Backend, IndexSelector, SelectorCaps};
use crate::error::{Error, Result};
use crate::mapper::{map_symbol, BitWord, OfdmImConfig};
use crate::BigNat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;
use std::io::{self, Write};
use std::time::Instant;

pub const CSV_HEADER: &str =
    "n,k,m_ary,backend,trials,mean_map_time_s,throughput_bits_per_s,pt_entries,lut_entries";

/// One `(n, M, backend)` cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    pub k: usize,
    pub m_ary: usize,
    pub backend: Backend,
    pub trials: usize,
    pub total_bits: usize,
    /// Mean seconds per mapped symbol; `None` when the backend's table did
    /// not fit its cap.
    pub mean_map_time: Option<f64>,
    /// `total_bits / mean_map_time`.
    pub throughput: Option<f64>,
    /// Pascal table entries, `n * k`.
    pub pt_entries: u64,
    /// Full look-up table entries, `2^p1`.
    pub lut_entries: BigNat,
}

impl BenchRecord {
    pub fn is_capped(&self) -> bool {
        self.mean_map_time.is_none()
    }

    pub fn csv_row(&self) -> String {
        let na = || "NA".to_string();
        let lut = if self.backend == Backend::Lut && self.is_capped() {
            na()
        } else {
            self.lut_entries.to_string()
        };
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.m_ary,
            self.backend,
            self.trials,
            self.mean_map_time.map_or_else(na, |t| format!("{t:.9e}")),
            self.throughput.map_or_else(na, |t| format!("{t:.6e}")),
            self.pt_entries,
            lut
        )
    }
}

pub fn write_csv<W: Write>(mut out: W, records: &[BenchRecord]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(out, "{}", r.csv_row())?;
    }
    Ok(())
}

/// Seeded stream of uniform random words for one config.
#[derive(Debug, Clone)]
pub struct WordSource {
    rng: ChaCha8Rng,
    len: usize,
}

impl WordSource {
    pub fn new(cfg: &OfdmImConfig, seed: u64) -> Self {
        WordSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            len: cfg.total_bits(),
        }
    }
}

impl Iterator for WordSource {
    type Item = BitWord;

    fn next(&mut self) -> Option<BitWord> {
        let mut bits = Vec::with_capacity(self.len);
        while bits.len() < self.len {
            let chunk: u64 = self.rng.gen();
            let take = (self.len - bits.len()).min(64);
            bits.extend((0..take).map(|b| chunk >> b & 1 == 1));
        }
        Some(BitWord::new(bits))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchSettings {
    pub trials: usize,
    pub warmup: usize,
    pub seed: u64,
    pub caps: SelectorCaps,
}

impl Default for BenchSettings {
    fn default() -> Self {
        BenchSettings {
            trials: 100,
            warmup: 10,
            seed: 0,
            caps: SelectorCaps::default(),
        }
    }
}

/// Mean seconds per [`map_symbol`] call with a prepared selector.
pub fn measure_map_time(
    cfg: &OfdmImConfig,
    selector: &IndexSelector,
    trials: usize,
    warmup: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::dims("trials must be at least 1"));
    }
    let words: Vec<BitWord> = WordSource::new(cfg, seed).take(warmup + trials).collect();
    let (warm, timed) = words.split_at(warmup);
    for w in warm {
        black_box(map_symbol(w, cfg, selector)?);
    }
    let start = Instant::now();
    for w in timed {
        black_box(map_symbol(black_box(w), cfg, selector)?);
    }
    Ok(start.elapsed().as_secs_f64() / trials as f64)
}

/// Measures every `(n, M, backend)` combination with `k = n/2`.
///
/// Tables are built once per `(n, backend)` and shared across `M`. A
/// backend whose table exceeds its cap yields a record without timings.
pub fn sweep(
    n_values: &[usize],
    m_ary_values: &[usize],
    backends: &[Backend],
    settings: &BenchSettings,
) -> Result<Vec<BenchRecord>> {
    for &n in n_values {
        if n == 0 || n % 2 != 0 {
            return Err(Error::dims(format!("sweep needs even positive n, got {n}")));
        }
    }
    for &m in m_ary_values {
        OfdmImConfig::new(2, 1, m)?;
    }

    let mut records = Vec::new();
    for &n in n_values {
        let k = n / 2;
        let selectors: Vec<(Backend, Option<IndexSelector>)> = backends
            .iter()
            .map(|&b| match IndexSelector::prepare(b, n, k, settings.caps) {
                Ok(sel) => Ok((b, Some(sel))),
                Err(Error::Capacity { .. }) => Ok((b, None)),
                Err(e) => Err(e),
            })
            .collect::<Result<_>>()?;
        let lut_entries = pow2(index_bits(n, k).expect("k <= n"));
        for &m_ary in m_ary_values {
            let cfg = OfdmImConfig::new(n, k, m_ary)?;
            for (backend, selector) in &selectors {
                let mean = selector
                    .as_ref()
                    .map(|sel| {
                        measure_map_time(&cfg, sel, settings.trials, settings.warmup, settings.seed)
                    })
                    .transpose()?;
                records.push(BenchRecord {
                    n,
                    k,
                    m_ary,
                    backend: *backend,
                    trials: settings.trials,
                    total_bits: cfg.total_bits(),
                    mean_map_time: mean,
                    throughput: mean.map(|t| cfg.total_bits() as f64 / t),
                    pt_entries: (n * k) as u64,
                    lut_entries: lut_entries.clone(),
                });
            }
        }
    }
    Ok(records)
}

/// Least-squares slope of `ln(time)` against `ln(n)`.
pub fn fit_scaling_exponent(records: &[BenchRecord]) -> Result<f64> {
    let mut points = Vec::with_capacity(records.len());
    for r in records {
        let t = r.mean_map_time.ok_or_else(|| Error::MissingMeasurement {
            n: r.n,
            backend: r.backend.to_string(),
        })?;
        points.push((r.n as f64, t));
    }
    if let Some(first) = records.first() {
        if records.iter().any(|r| r.backend != first.backend) {
            return Err(Error::dims("scaling fit mixes backends"));
        }
    }
    fit_power_law(&points)
}

/// Slope of the log-log least-squares line through `(n, time)` points.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<f64> {
    const NEEDED: usize = 4;
    let mut ns: Vec<f64> = points.iter().map(|p| p.0).collect();
    ns.sort_by(f64::total_cmp);
    ns.dedup();
    if points.len() < NEEDED || ns.len() != points.len() {
        return Err(Error::NotEnoughPoints {
            needed: NEEDED,
            got: ns.len(),
        });
    }
    if points.iter().any(|&(n, t)| n <= 0.0 || t <= 0.0 || !t.is_finite()) {
        return Err(Error::dims("power-law fit needs positive finite n and time"));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(n, t)| (n.ln(), t.ln())).collect();
    let len = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Exact index-bit count against its large-n approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticsRow {
    pub n: usize,
    /// `floor(log2 C(n, n/2))`.
    pub index_bits: u64,
    /// `n - log2 sqrt(n)`.
    pub approx: f64,
    pub ratio: f64,
}

pub fn asymptotics_report(n_values: &[usize]) -> Result<Vec<AsymptoticsRow>> {
    n_values
        .iter()
        .map(|&n| {
            if n == 0 || n % 2 != 0 {
                return Err(Error::dims(format!("asymptotics need even positive n, got {n}")));
            }
            let index_bits = index_bits(n, n / 2).expect("k <= n");
            let approx = n as f64 - 0.5 * (n as f64).log2();
            Ok(AsymptoticsRow {
                n,
                index_bits,
                approx,
                ratio: index_bits as f64 / approx,
            })
        })
        .collect()
}

pub fn write_asymptotics_csv<W: Write>(mut out: W, rows: &[AsymptoticsRow]) -> io::Result<()> {
    writeln!(out, "n,p1,approx,ratio")?;
    for r in rows {
        writeln!(out, "{},{},{:.6},{:.6}", r.n, r.index_bits, r.approx, r.ratio)?;
    }
    Ok(())
}
