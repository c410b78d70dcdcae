//! End-to-end acceptance checks. Each test prints one
//! `[criterion N] PASS|FAIL ...` line; run with `--nocapture` to see them.

use num_traits::{ToPrimitive, Zero};
use ofdm_im::bench::{asymptotics_report, fit_power_law, fit_scaling_exponent, measure_map_time, BenchRecord};
use ofdm_im::combinadics::{index_bits, pow2};
use ofdm_im::{
    binomial_multiplicative, demap_symbol, map_symbol, rank, unrank_baseline, Backend, BigNat, BitWord,
    Error, IndexSelector, OfdmImConfig, PascalTable, SelectorCaps,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::sync::{Mutex, OnceLock};

/// Keeps the timing sweep from sharing the core with other checks.
static SERIAL: Mutex<()> = Mutex::new(());

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

fn report(id: u32, ok: bool, detail: &str) {
    println!("[criterion {id}] {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id}: {detail}");
}

/// Every k-subset of `0..n` in colex order, as decreasing index lists.
/// Colex order on subsets is numeric order on their bitmasks.
fn colex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).rev().filter(|&b| m >> b & 1 == 1).collect())
        .collect()
}

/// Pascal's rule over machine integers, independent of the library.
fn pascal_rows(n: usize) -> Vec<Vec<u64>> {
    let mut rows = vec![vec![1u64]];
    for c in 1..=n {
        let prev = &rows[c - 1];
        let row = (0..=c)
            .map(|i| {
                let left = if i > 0 { prev[i - 1] } else { 0 };
                left + prev.get(i).copied().unwrap_or(0)
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn selectors(n: usize, k: usize) -> Vec<IndexSelector> {
    Backend::ALL
        .iter()
        .map(|&b| IndexSelector::prepare(b, n, k, SelectorCaps::default()).unwrap())
        .collect()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let _g = serial();
    let mut checked = 0u64;
    let mut bad = Vec::new();
    for n in 0..=12 {
        for k in 0..=n {
            for (x, subset) in colex_subsets(n, k).into_iter().enumerate() {
                let x = BigNat::from(x);
                let got = unrank_baseline(&x, n, k).unwrap();
                if got.coefficients() != subset.as_slice() || rank(&got, k).unwrap() != x {
                    bad.push((n, k, x));
                }
                checked += 1;
            }
            let limit = binomial_multiplicative(n, k);
            if unrank_baseline(&limit, n, k).is_ok() {
                bad.push((n, k, limit));
            }
        }
    }
    report(1, bad.is_empty(), &format!("{checked} ranks checked, mismatches {bad:?}"));
}

#[test]
fn criterion_2_backend_agreement() {
    let _g = serial();
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    let mut compare = |sels: &[IndexSelector], x: &BigNat, n: usize, k: usize| {
        let want = unrank_baseline(x, n, k).unwrap();
        for s in sels {
            match s.select(x, n, k) {
                Ok(p) if p == want => {}
                // The full table only spans the 2^p1 ranks the mapper can emit.
                Err(Error::RankOutOfRange { .. })
                    if s.backend() == Backend::Lut && *x >= pow2(index_bits(n, k).unwrap()) => {}
                _ => mismatches += 1,
            }
        }
        checked += 1;
    };
    for n in 0..=12 {
        for k in 0..=n {
            let sels = selectors(n, k);
            let count = binomial_multiplicative(n, k).to_u64().unwrap();
            for x in 0..count {
                compare(&sels, &BigNat::from(x), n, k);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in [32, 64, 128] {
        let k = n / 2;
        let caps = SelectorCaps::default();
        let mut sels = vec![
            IndexSelector::Baseline,
            IndexSelector::prepare(Backend::Pt, n, k, caps).unwrap(),
        ];
        // 2^p1 exceeds any buildable full table past n = 32.
        if let Ok(lut) = IndexSelector::prepare(Backend::Lut, n, k, caps) {
            sels.push(lut);
        }
        let bits = index_bits(n, k).unwrap() as u64;
        let limit = binomial_multiplicative(n, k);
        for draw in 0..10_000 {
            // Half the draws cover the mapper's 2^p1 range, half all of C(n, k).
            let x = loop {
                let wide = draw % 2 == 1;
                let width = if wide { limit.bits() } else { bits };
                let words: Vec<u32> = (0..width.div_ceil(32)).map(|_| rng.gen()).collect();
                let x = BigNat::from_slice(&words) % pow2(width);
                if x < limit {
                    break x;
                }
            };
            compare(&sels, &x, n, k);
        }
    }
    report(2, mismatches == 0, &format!("{checked} ranks checked, {mismatches} mismatches"));
}

#[test]
fn criterion_3_table_correctness() {
    let _g = serial();
    let oracle = pascal_rows(64);
    let mut wrong = Vec::new();
    for n in (2..=64).step_by(2) {
        let k = n / 2;
        let t = PascalTable::build(n, k).unwrap();
        if t.entry_count() != n * k {
            wrong.push(format!("n={n}: {} entries", t.entry_count()));
        }
        for c in 0..n {
            for i in 1..=k {
                let want = binomial_multiplicative(c, i);
                let got = t.entry(c, i).unwrap();
                let rule = oracle[c].get(i).copied().unwrap_or(0);
                if got != want || got != BigNat::from(rule) {
                    wrong.push(format!("C({c},{i}) in n={n}: {got}"));
                }
            }
        }
    }
    report(3, wrong.is_empty(), &format!("tables n=2..64 step 2, errors {wrong:?}"));
}

#[test]
fn criterion_4_mapper_bijectivity() {
    let _g = serial();
    let cfg = OfdmImConfig::new(8, 4, 2).unwrap();
    let layout_ok = cfg.index_bits() == 6 && cfg.total_bits() == 10;
    let mut ok = layout_ok;
    for sel in selectors(8, 4) {
        let mut seen = HashSet::new();
        for v in 0..1u64 << 10 {
            let word = BitWord::from_u64(v, 10);
            let sym = map_symbol(&word, &cfg, &sel).unwrap();
            ok &= seen.insert(sym.to_line());
            ok &= demap_symbol(&sym, &cfg).unwrap() == word;
        }
        ok &= seen.len() == 1024;
    }
    report(4, ok, "cfg(8,4,2): 1024 words, distinct symbols, exact demap, all backends");
}

#[test]
fn criterion_5_index_bit_asymptotics() {
    let _g = serial();
    let rows = asymptotics_report(&[64, 128, 256, 512, 1024]).unwrap();
    // Exact bit length from an independent product of machine words.
    let exact_p1 = |n: usize| {
        let mut c = BigNat::from(1u32);
        for j in 1..=n / 2 {
            c = c * BigNat::from(n - n / 2 + j) / BigNat::from(j);
        }
        c.bits() - 1
    };
    let exact = rows.iter().all(|r| r.index_bits == exact_p1(r.n));
    let nondecreasing = rows.windows(2).all(|w| w[1].ratio >= w[0].ratio);
    let first = rows[0].index_bits == 60 && rows[0].ratio > 0.98;
    let ratios: Vec<String> = rows.iter().map(|r| format!("{}:{:.6}", r.n, r.ratio)).collect();
    report(
        5,
        exact && nondecreasing && first,
        &format!("p1(64)={}, ratios {}", rows[0].index_bits, ratios.join(" ")),
    );
}

const SWEEP_N: [usize; 6] = [256, 512, 1024, 2048, 4096, 8192];

struct Sweep {
    pt: Vec<BenchRecord>,
    baseline: Vec<BenchRecord>,
}

/// One measurement per `(n, backend)` at `M = 2`, `k = n/2`, shared by
/// criteria 6 and 7. Trial counts shrink with `n` to bound the runtime.
fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut pt = Vec::new();
        let mut baseline = Vec::new();
        for (step, &n) in SWEEP_N.iter().enumerate() {
            let cfg = OfdmImConfig::ideal(n).unwrap();
            for backend in [Backend::Pt, Backend::Baseline] {
                let (trials, warmup) = match backend {
                    Backend::Baseline => ((64usize >> step).max(1), 1),
                    _ if n <= 1024 => (2000, 50),
                    _ => (400, 20),
                };
                let mean = match IndexSelector::prepare(backend, n, n / 2, SelectorCaps::default()) {
                    Ok(sel) => Some(measure_map_time(&cfg, &sel, trials, warmup, 11).unwrap()),
                    Err(Error::Capacity { .. }) => None,
                    Err(e) => panic!("preparing {backend} at n={n}: {e}"),
                };
                let rec = BenchRecord {
                    n,
                    k: n / 2,
                    m_ary: 2,
                    backend,
                    trials,
                    total_bits: cfg.total_bits(),
                    mean_map_time: mean,
                    throughput: mean.map(|t| cfg.total_bits() as f64 / t),
                    pt_entries: (n * n / 2) as u64,
                    lut_entries: pow2(cfg.index_bits() as u64),
                };
                println!("  sweep n={n} {backend}: {:?} s over {trials} trials", rec.mean_map_time);
                match backend {
                    Backend::Pt => pt.push(rec),
                    _ => baseline.push(rec),
                }
            }
        }
        Sweep { pt, baseline }
    })
}

fn measured(records: &[BenchRecord]) -> Vec<BenchRecord> {
    records.iter().filter(|r| !r.is_capped()).cloned().collect()
}

fn throughput_at(records: &[BenchRecord], n: usize) -> Option<f64> {
    records.iter().find(|r| r.n == n).and_then(|r| r.throughput)
}

#[test]
fn criterion_6_scaling_slopes() {
    let _g = serial();
    let s = sweep();
    let base = fit_scaling_exponent(&s.baseline);
    let pt = fit_scaling_exponent(&s.pt);
    let pt_partial = fit_scaling_exponent(&measured(&s.pt)).ok();
    let detail = format!(
        "baseline slope {:?}, pt slope {:?} (pt over measured n only: {:?})",
        base.as_ref().ok(),
        pt.as_ref().map_err(ToString::to_string),
        pt_partial
    );
    let ok = match (base, pt) {
        (Ok(b), Ok(p)) => p <= 1.3 && b >= 1.6 && b >= p + 0.5,
        _ => false,
    };
    report(6, ok, &detail);
}

#[test]
fn criterion_7_throughput_trend() {
    let _g = serial();
    let s = sweep();
    let pt = throughput_at(&s.pt, 256).zip(throughput_at(&s.pt, 8192));
    let base = throughput_at(&s.baseline, 256).zip(throughput_at(&s.baseline, 8192));
    let pt_ok = pt.is_some_and(|(lo, hi)| hi >= 0.5 * lo);
    let base_ok = base.is_some_and(|(lo, hi)| hi <= 0.5 * lo);
    let pt_largest = measured(&s.pt).last().map(|r| (r.n, r.throughput.unwrap() / throughput_at(&s.pt, 256).unwrap()));
    let detail = format!(
        "pt (256, 8192) bits/s {pt:?}; baseline {base:?}; pt largest measured (n, ratio to 256) {pt_largest:?}"
    );
    report(7, pt_ok && base_ok, &detail);
}

#[test]
fn criterion_8_table_size_divergence() {
    let _g = serial();
    let ratio = |n: usize| {
        let k = n / 2;
        let lut = pow2(index_bits(n, k).unwrap());
        let pt = PascalTable::build(n, k).unwrap().entry_count();
        assert_eq!(pt, n * n / 2);
        (lut.clone() / BigNat::from(pt), lut % BigNat::from(pt))
    };
    let (q16, r16) = ratio(16);
    let exact16 = q16 == BigNat::from(64u32) && r16.is_zero();
    // Compare lut_a / pt_a < lut_b / pt_b by cross-multiplying.
    let ns = [8usize, 12, 16, 20, 24];
    let increasing = ns.windows(2).all(|w| {
        let (a, b) = (w[0], w[1]);
        pow2(index_bits(a, a / 2).unwrap()) * BigNat::from(b * b / 2)
            < pow2(index_bits(b, b / 2).unwrap()) * BigNat::from(a * a / 2)
    });
    report(8, exact16 && increasing, &format!("ratio(16) = {q16} rem {r16}, increasing over {ns:?}: {increasing}"));
}

#[test]
fn criterion_9_synthetic_slopes() {
    let _g = serial();
    let mut worst = 0f64;
    for exponent in [1.0, 2.0] {
        let points: Vec<(f64, f64)> = SWEEP_N.iter().map(|&n| (n as f64, 3e-7 * (n as f64).powf(exponent))).collect();
        worst = worst.max((fit_power_law(&points).unwrap() - exponent).abs());
        let records: Vec<BenchRecord> = points
            .iter()
            .map(|&(n, t)| BenchRecord {
                n: n as usize,
                k: n as usize / 2,
                m_ary: 2,
                backend: Backend::Pt,
                trials: 1,
                total_bits: 1,
                mean_map_time: Some(t),
                throughput: Some(1.0 / t),
                pt_entries: 0,
                lut_entries: BigNat::zero(),
            })
            .collect();
        worst = worst.max((fit_scaling_exponent(&records).unwrap() - exponent).abs());
    }
    report(9, worst < 1e-9, &format!("largest exponent error {worst:e}"));
}
