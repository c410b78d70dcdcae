//! Pascal's-triangle table and the table-assisted index selector.
//!
//! The table holds `C(c, i)` for `0 <= c < n` and `1 <= i <= k`, row by
//! row, as little-endian `u64` limbs in one arena. Every selector step moves
//! from row `c` to row `c - 1` and shifts the column by at most one, so the
//! walk is a steady descent through memory that can be prefetched ahead.

use super::{check_dims, IndexPattern};
use crate::error::{Error, Result};
use crate::BigNat;
use std::cmp::Ordering;
use std::collections::VecDeque;

/// Default memory budget for [`PascalTable::build`]: 4 GiB.
pub const DEFAULT_TABLE_BUDGET_BYTES: u64 = 4 << 30;

/// Immutable `n x k` table of binomial coefficients, built by the additive
/// Pascal recurrence.
#[derive(Clone)]
pub struct PascalTable {
    rows: usize,
    cols: usize,
    /// One slot per entry, at `c * cols + i - 1`.
    slots: Vec<Slot>,
    /// `row_base[c]..row_base[c + 1]` holds the limbs of row `c`.
    row_base: Vec<usize>,
    limbs: Vec<u64>,
}

/// Head of an entry: bit length and top 128 bits, left-aligned, plus where
/// its limbs start inside the row. The selector decides from heads alone
/// and touches limbs only to subtract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Slot {
    hi: u64,
    lo: u64,
    bits: u32,
    offset: u32,
}

impl Slot {
    fn of(limbs: &[u64], offset: u32) -> Slot {
        let len = limbs.len();
        let limb = |back: usize| len.checked_sub(back).map_or(0, |p| limbs[p]);
        let lz = limb(1).leading_zeros();
        let top = (limb(1) as u128) << 64 | limb(2) as u128;
        let head = match (len, lz) {
            (0, _) => 0,
            (_, 0) => top,
            _ => top << lz | (limb(3) >> (64 - lz)) as u128,
        };
        Slot {
            hi: (head >> 64) as u64,
            lo: head as u64,
            bits: (len as u64 * 64 - if len == 0 { 0 } else { lz as u64 }) as u32,
            offset,
        }
    }

    #[inline]
    fn head(self) -> u128 {
        (self.hi as u128) << 64 | self.lo as u128
    }
}

/// The selector's running remainder seen through a two-limb window.
///
/// The remainder equals `value * 2^(64 pos) + low`, where `low` is only
/// known to lie in `(-slack * 2^(64 pos), 2^(64 pos))`: every entry taken
/// since the window was last synced may borrow one unit from it.
#[derive(Debug, Clone, Copy)]
struct Window {
    pos: usize,
    value: u128,
    slack: u128,
}

impl Window {
    fn of(exact: &[u64]) -> Window {
        let pos = exact.len().saturating_sub(2);
        let value = exact[pos..]
            .iter()
            .rev()
            .fold(0u128, |acc, &l| acc << 64 | l as u128);
        Window {
            pos,
            value,
            slack: 0,
        }
    }

    /// `entry >> 64 pos`, or `None` when that needs more than 128 bits.
    #[inline]
    fn high_part(&self, entry: Slot) -> Option<u128> {
        let base = self.pos * 64 + 128;
        let shift = base.checked_sub(entry.bits as usize)?;
        Some(entry.head().checked_shr(shift as u32).unwrap_or(0))
    }

    /// Whether `entry <= remainder`, or `None` when the window cannot tell.
    #[inline]
    fn fits(&self, entry: Slot) -> Option<bool> {
        let Some(high) = self.high_part(entry) else {
            return Some(false);
        };
        if self.pos == 0 {
            Some(high <= self.value)
        } else if high > self.value {
            Some(false)
        } else if high + self.slack < self.value {
            Some(true)
        } else {
            None
        }
    }

    /// Accounts for subtracting `entry`, which must fit.
    #[inline]
    fn take(&mut self, entry: Slot) {
        self.value -= self.high_part(entry).expect("entry fits the window");
        if self.pos > 0 {
            self.slack += 1;
        }
    }

    /// True once too few significant bits remain above the unknown part.
    #[inline]
    fn is_worn(&self) -> bool {
        self.pos > 0 && self.value >> 64 == 0
    }
}

impl PascalTable {
    pub fn build(n: usize, k: usize) -> Result<Self> {
        Self::build_with_budget(n, k, DEFAULT_TABLE_BUDGET_BYTES)
    }

    /// Builds the table, refusing before any allocation if the estimated
    /// footprint exceeds `budget_bytes`.
    pub fn build_with_budget(n: usize, k: usize, budget_bytes: u64) -> Result<Self> {
        check_dims(n, k)?;
        let entries = n
            .checked_mul(k)
            .ok_or_else(|| Error::dims(format!("{n}x{k} table overflows usize")))?;
        if n > u32::MAX as usize / 64 {
            return Err(Error::dims(format!("n={n} is too large for 32-bit bit lengths")));
        }
        let required = Self::estimated_bytes(n, k);
        if required > budget_bytes as u128 {
            return Err(Error::Capacity {
                what: "pascal table",
                unit: "bytes",
                required: BigNat::from(required),
                cap: BigNat::from(budget_bytes),
            });
        }

        let mut slots: Vec<Slot> = Vec::with_capacity(entries);
        let mut limbs: Vec<u64> = Vec::with_capacity(estimate_limbs(n, k) as usize);
        advise_huge_pages(&slots);
        advise_huge_pages(&limbs);
        let mut row_base = Vec::with_capacity(n + 1);

        let mut scratch = Vec::new();
        for c in 0..n {
            let base = limbs.len();
            row_base.push(base);
            for i in 1..=k {
                scratch.clear();
                match (c, i) {
                    (0, _) => {}
                    (_, 1) => scratch.push(c as u64),
                    _ => {
                        // C(c - 1, i - 1) and C(c - 1, i) sit side by side.
                        let prev = (c - 1) * k + i - 2;
                        let from = row_base[c - 1] + slots[prev].offset as usize;
                        let mid = row_base[c - 1] + slots[prev + 1].offset as usize;
                        let to = if i < k {
                            row_base[c - 1] + slots[prev + 2].offset as usize
                        } else {
                            base
                        };
                        add_limbs(&limbs[from..mid], &limbs[mid..to], &mut scratch);
                    }
                }
                let offset = u32::try_from(limbs.len() - base)
                    .map_err(|_| Error::dims(format!("row {c} of an n={n} table is too large")))?;
                slots.push(Slot::of(&scratch, offset));
                limbs.extend_from_slice(&scratch);
            }
        }
        row_base.push(limbs.len());
        debug_assert_eq!(slots.len(), entries);

        Ok(PascalTable {
            rows: n,
            cols: k,
            slots,
            row_base,
            limbs,
        })
    }

    /// Upper bound on the memory [`build_with_budget`](Self::build_with_budget)
    /// will allocate for an `n x k` table.
    pub fn estimated_bytes(n: usize, k: usize) -> u128 {
        let entries = n as u128 * k as u128;
        entries * std::mem::size_of::<Slot>() as u128
            + (n as u128 + 1) * 8
            + estimate_limbs(n, k) as u128 * 8
    }

    /// Number of rows, `n`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns, `k`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Stored entries, always `rows * cols`.
    pub fn entry_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Bytes held by the slot and limb arenas.
    pub fn memory_bytes(&self) -> usize {
        self.limbs.len() * 8
            + self.row_base.len() * 8
            + self.slots.len() * std::mem::size_of::<Slot>()
    }

    /// `C(c, i)`, or `None` outside `0 <= c < rows`, `1 <= i <= cols`.
    pub fn entry(&self, c: usize, i: usize) -> Option<BigNat> {
        self.in_bounds(c, i).then(|| limbs_to_nat(self.limbs(c, i)))
    }

    /// Row `c` as `[C(c, 1), ..., C(c, k)]`.
    pub fn row(&self, c: usize) -> Option<Vec<BigNat>> {
        (c < self.rows).then(|| {
            (1..=self.cols)
                .map(|i| limbs_to_nat(self.limbs(c, i)))
                .collect()
        })
    }

    fn in_bounds(&self, c: usize, i: usize) -> bool {
        c < self.rows && (1..=self.cols).contains(&i)
    }

    #[inline]
    fn index(&self, c: usize, i: usize) -> usize {
        c * self.cols + i - 1
    }

    #[inline]
    fn limb_start(&self, c: usize, i: usize) -> usize {
        self.row_base[c] + self.slots[self.index(c, i)].offset as usize
    }

    #[inline]
    fn limbs(&self, c: usize, i: usize) -> &[u64] {
        let end = if i < self.cols {
            self.limb_start(c, i + 1)
        } else {
            self.row_base[c + 1]
        };
        &self.limbs[self.limb_start(c, i)..end]
    }

    #[inline]
    fn slot(&self, c: usize, i: usize) -> Slot {
        self.slots[self.index(c, i)]
    }

    /// Cache hints for the slots the walk can reach `SLOT_LEAD` rows below
    /// `(c, i)`: columns `i - SLOT_LEAD..=i`, adjacent in memory.
    #[inline]
    fn prefetch_slots(&self, c: usize, i: usize) {
        const SLOT_LEAD: usize = 6;
        if c >= SLOT_LEAD {
            let row = (c - SLOT_LEAD) * self.cols;
            let first = self.slots.as_ptr().wrapping_add(row + i.saturating_sub(SLOT_LEAD + 1));
            let last = self.slots.as_ptr().wrapping_add(row + i - 1);
            let mut line = first as usize & !63;
            while line <= last as usize {
                prefetch(line as *const u8);
                line += 64;
            }
        }
    }

    /// Cache hints for every line of `C(c, i)`'s limbs.
    #[inline]
    fn prefetch_limbs(&self, c: usize, i: usize) {
        let span = self.limbs(c, i);
        for line in span.chunks(8) {
            prefetch(line.as_ptr());
        }
    }

    fn covers(&self, n: usize, k: usize) -> Result<()> {
        check_dims(n, k)?;
        if n > self.rows || k > self.cols {
            return Err(Error::TableMismatch {
                rows: self.rows,
                cols: self.cols,
                n,
                k,
            });
        }
        Ok(())
    }

    /// `C(n, k)` from row `n - 1` via one recurrence step.
    fn waveform_limbs(&self, n: usize, k: usize) -> Vec<u64> {
        let mut out = Vec::new();
        if k == 0 {
            return vec![1];
        }
        let left: &[u64] = if k == 1 { &[1] } else { self.limbs(n - 1, k - 1) };
        add_limbs(left, self.limbs(n - 1, k), &mut out);
        out
    }
}

impl std::fmt::Debug for PascalTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PascalTable")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("memory_bytes", &self.memory_bytes())
            .finish()
    }
}

/// Table-assisted index selector. Produces exactly the patterns of
/// [`unrank_baseline`](super::unrank_baseline); every binomial is one table
/// query.
pub fn unrank_pt(x: &BigNat, table: &PascalTable, n: usize, k: usize) -> Result<IndexPattern> {
    let mut queries = 0;
    select(x, table, n, k, &mut queries)
}

/// [`unrank_pt`] that also reports how many table queries it made.
pub fn unrank_pt_counted(
    x: &BigNat,
    table: &PascalTable,
    n: usize,
    k: usize,
) -> Result<(IndexPattern, usize)> {
    let mut queries = 0;
    let pattern = select(x, table, n, k, &mut queries)?;
    Ok((pattern, queries))
}

/// Entries taken but not yet subtracted from the exact remainder.
const SUBTRACT_LAG: usize = 16;

/// Walks the table from `(n - 1, k)` down one row per query. Decisions come
/// from the [`Window`]; exact subtractions trail by [`SUBTRACT_LAG`] taken
/// entries so their limbs can arrive in cache first. When the window cannot
/// decide, or runs low on precision, the pending subtractions are applied
/// and the window is rebuilt from the exact remainder.
fn select(
    x: &BigNat,
    table: &PascalTable,
    n: usize,
    k: usize,
    queries: &mut usize,
) -> Result<IndexPattern> {
    table.covers(n, k)?;
    let mut exact = x.to_u64_digits();
    let limit = table.waveform_limbs(n, k);
    if cmp_limbs(&exact, &limit) != Ordering::Less {
        return Err(Error::RankOutOfRange {
            x: x.clone(),
            limit: limbs_to_nat(&limit),
        });
    }

    let mut pending: VecDeque<(usize, usize)> = VecDeque::with_capacity(SUBTRACT_LAG);
    let settle = |exact: &mut Vec<u64>, pending: &mut VecDeque<(usize, usize)>| {
        for (c, i) in pending.drain(..) {
            sub_assign_limbs(exact, table.limbs(c, i));
        }
        Window::of(exact)
    };

    let mut window = Window::of(&exact);
    let mut out = Vec::with_capacity(k);
    let mut c = n.wrapping_sub(1);
    let mut i = k;
    while i > 0 {
        table.prefetch_slots(c, i);
        *queries += 1;
        let entry = table.slot(c, i);
        let take = match window.fits(entry) {
            Some(take) => take,
            None => {
                window = settle(&mut exact, &mut pending);
                cmp_limbs(table.limbs(c, i), &exact) != Ordering::Greater
            }
        };
        if take {
            window.take(entry);
            table.prefetch_limbs(c, i);
            if pending.len() == SUBTRACT_LAG {
                let (pc, pi) = pending.pop_front().expect("queue is full");
                sub_assign_limbs(&mut exact, table.limbs(pc, pi));
            }
            pending.push_back((c, i));
            if window.is_worn() {
                window = settle(&mut exact, &mut pending);
            }
            out.push(c);
            i -= 1;
        }
        c = c.wrapping_sub(1);
    }
    settle(&mut exact, &mut pending);
    if !exact.is_empty() {
        return Err(Error::Internal("table selector left a residue".into()));
    }
    Ok(IndexPattern::from_decreasing(out))
}

/// Asks the kernel to back a large, still untouched buffer with huge pages.
/// The selector strides through a multi-gigabyte table, so TLB reach
/// matters as much as cache misses.
#[cfg(target_os = "linux")]
fn advise_huge_pages<T>(buf: &Vec<T>) {
    const HUGE: usize = 2 << 20;
    let bytes = buf.capacity() * std::mem::size_of::<T>();
    if bytes < 4 * HUGE {
        return;
    }
    let start = buf.as_ptr() as usize;
    let aligned = start.next_multiple_of(HUGE);
    let len = (start + bytes - aligned) / HUGE * HUGE;
    // SAFETY: the range lies inside the vector's own allocation and
    // MADV_HUGEPAGE only changes how its pages are backed. A failure just
    // leaves normal pages in place.
    unsafe {
        libc::madvise(aligned as *mut libc::c_void, len, libc::MADV_HUGEPAGE);
    }
}

#[cfg(not(target_os = "linux"))]
fn advise_huge_pages<T>(_buf: &Vec<T>) {}

/// Cache hint for the line holding `ptr`. The address is never
/// dereferenced, so it may lie past the end of a buffer.
#[inline(always)]
fn prefetch<T>(ptr: *const T) {
    #[cfg(target_arch = "x86_64")]
    // SAFETY: prefetching is only a cache hint and cannot fault; SSE is
    // baseline on x86_64.
    #[allow(unused_unsafe)]
    unsafe {
        use std::arch::x86_64::{_mm_prefetch, _MM_HINT_T0};
        _mm_prefetch::<_MM_HINT_T0>(ptr as *const i8);
    }
    #[cfg(not(target_arch = "x86_64"))]
    let _ = ptr;
}

/// Upper bound on the limbs of all `n x k` entries, from `log2 C(c, i)`
/// with a small guard so float error can only overestimate.
fn estimate_limbs(n: usize, k: usize) -> u64 {
    let mut log_fact = Vec::with_capacity(n);
    log_fact.push(0.0f64);
    for j in 1..n {
        log_fact.push(log_fact[j - 1] + (j as f64).log2());
    }
    let mut total = 0u64;
    for c in 0..n {
        for i in 1..=k.min(c) {
            let bits = log_fact[c] - log_fact[i] - log_fact[c - i];
            total += ((bits + 1e-6) / 64.0).floor() as u64 + 1;
        }
    }
    total
}

fn limbs_to_nat(limbs: &[u64]) -> BigNat {
    let digits: Vec<u32> = limbs
        .iter()
        .flat_map(|&l| [l as u32, (l >> 32) as u32])
        .collect();
    BigNat::new(digits)
}

/// Compares two normalized (no high zero limbs) little-endian numbers.
#[inline]
fn cmp_limbs(a: &[u64], b: &[u64]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

fn add_limbs(a: &[u64], b: &[u64], out: &mut Vec<u64>) {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    out.clear();
    let mut carry = false;
    for (pos, &l) in long.iter().enumerate() {
        let s = short.get(pos).copied().unwrap_or(0);
        let (v, c1) = l.overflowing_add(s);
        let (v, c2) = v.overflowing_add(carry as u64);
        out.push(v);
        carry = c1 || c2;
    }
    if carry {
        out.push(1);
    }
}

/// `a -= b` for normalized limbs; requires `a >= b`.
#[inline]
fn sub_assign_limbs(a: &mut Vec<u64>, b: &[u64]) {
    debug_assert!(b.len() <= a.len());
    let (low, high) = a.split_at_mut(b.len());
    let mut borrow = sub_limbs_in_place(low, b);
    for x in high {
        if !borrow {
            break;
        }
        let (v, under) = x.overflowing_sub(1);
        *x = v;
        borrow = under;
    }
    debug_assert!(!borrow, "subtrahend exceeds minuend");
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// `low -= b` over equal lengths, returning the final borrow.
#[cfg(target_arch = "x86_64")]
#[inline]
fn sub_limbs_in_place(low: &mut [u64], b: &[u64]) -> bool {
    use std::arch::x86_64::_subborrow_u64;
    let mut borrow = 0u8;
    for (x, &y) in low.iter_mut().zip(b) {
        borrow = _subborrow_u64(borrow, *x, y, x);
    }
    borrow != 0
}

#[cfg(not(target_arch = "x86_64"))]
#[inline]
fn sub_limbs_in_place(low: &mut [u64], b: &[u64]) -> bool {
    let mut borrow = false;
    for (x, &y) in low.iter_mut().zip(b) {
        let (v, b1) = x.overflowing_sub(y);
        let (v, b2) = v.overflowing_sub(borrow as u64);
        *x = v;
        borrow = b1 | b2;
    }
    borrow
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinadics::{binomial_multiplicative, unrank_baseline};
    use num_traits::{One, ToPrimitive, Zero};

    #[test]
    fn small_table_matches_rows() {
        let t = PascalTable::build(5, 2).unwrap();
        assert_eq!(t.entry(4, 2).unwrap(), BigNat::from(6u32));
        assert_eq!(t.entry(3, 2).unwrap(), BigNat::from(3u32));
        assert_eq!(t.entry(2, 2).unwrap(), BigNat::one());
        assert_eq!(t.entry(1, 2).unwrap(), BigNat::zero());
        assert_eq!(t.entry_count(), 10);
        assert!(t.entry(5, 1).is_none());
        assert!(t.entry(0, 0).is_none());
        assert!(t.entry(0, 3).is_none());
    }

    #[test]
    fn single_entry_table() {
        let t = PascalTable::build(1, 1).unwrap();
        assert_eq!(t.entry_count(), 1);
        assert_eq!(t.entry(0, 1).unwrap(), BigNat::zero());
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(PascalTable::build(3, 4).is_err());
    }

    #[test]
    fn zero_columns() {
        let t = PascalTable::build(4, 0).unwrap();
        assert_eq!(t.entry_count(), 0);
        assert!(unrank_pt(&BigNat::zero(), &t, 4, 0).unwrap().is_empty());
        assert!(unrank_pt(&BigNat::one(), &t, 4, 0).is_err());
        let t = PascalTable::build(0, 0).unwrap();
        assert!(unrank_pt(&BigNat::zero(), &t, 0, 0).unwrap().is_empty());
    }

    #[test]
    fn budget_is_enforced_before_building() {
        let err = PascalTable::build_with_budget(256, 128, 1024).unwrap_err();
        assert!(matches!(err, Error::Capacity { .. }), "{err}");
    }

    #[test]
    fn estimate_bounds_actual_footprint() {
        for (n, k) in [(1, 1), (8, 4), (64, 32), (300, 150), (513, 40)] {
            let t = PascalTable::build(n, k).unwrap();
            assert!(t.limbs.len() as u64 <= estimate_limbs(n, k));
            assert!(t.memory_bytes() as u128 <= PascalTable::estimated_bytes(n, k));
        }
    }

    #[test]
    fn wide_entries_cross_limb_boundaries() {
        let t = PascalTable::build(200, 100).unwrap();
        for (c, i) in [(199, 100), (150, 70), (130, 2), (67, 33), (199, 1)] {
            assert_eq!(t.entry(c, i).unwrap(), binomial_multiplicative(c, i));
        }
    }

    #[test]
    fn examples_against_baseline() {
        let t = PascalTable::build(8, 4).unwrap();
        for x in 0u32..70 {
            let x = BigNat::from(x);
            assert_eq!(
                unrank_pt(&x, &t, 8, 4).unwrap(),
                unrank_baseline(&x, 8, 4).unwrap()
            );
        }
        let err = unrank_pt(&BigNat::from(70u32), &t, 8, 4).unwrap_err();
        assert!(matches!(err, Error::RankOutOfRange { .. }));
    }

    #[test]
    fn larger_table_serves_smaller_layouts() {
        let t = PascalTable::build(12, 6).unwrap();
        for (n, k) in [(8, 4), (12, 1), (5, 5)] {
            let total = binomial_multiplicative(n, k);
            let mut x = BigNat::zero();
            while x < total {
                assert_eq!(unrank_pt(&x, &t, n, k).unwrap(), unrank_baseline(&x, n, k).unwrap());
                x += 1u32;
            }
        }
        let err = unrank_pt(&BigNat::zero(), &t, 13, 4).unwrap_err();
        assert!(matches!(err, Error::TableMismatch { .. }));
        let err = unrank_pt(&BigNat::zero(), &t, 12, 7).unwrap_err();
        assert!(matches!(err, Error::TableMismatch { .. }));
    }

    #[test]
    fn query_count_is_bounded() {
        let t = PascalTable::build(16, 8).unwrap();
        let total = binomial_multiplicative(16, 8);
        let mut x = BigNat::zero();
        while x < total {
            let (_, q) = unrank_pt_counted(&x, &t, 16, 8).unwrap();
            assert!(q <= 15 + 8, "{q} queries at x={x}");
            x += 1u32;
        }
    }

    #[test]
    fn limb_helpers() {
        let mut out = Vec::new();
        add_limbs(&[u64::MAX, u64::MAX], &[1], &mut out);
        assert_eq!(out, vec![0, 0, 1]);
        let mut a = vec![0, 0, 1];
        sub_assign_limbs(&mut a, &[1]);
        assert_eq!(a, vec![u64::MAX, u64::MAX]);
        sub_assign_limbs(&mut a, &[u64::MAX, u64::MAX]);
        assert!(a.is_empty());
        assert_eq!(cmp_limbs(&[5], &[0, 1]), Ordering::Less);
        assert_eq!(cmp_limbs(&[7, 1], &[5, 1]), Ordering::Greater);
        assert_eq!(limbs_to_nat(&[0, 1]), BigNat::one() << 64u32);
    }

    #[test]
    fn heads_are_left_aligned() {
        let head = |l: &[u64]| {
            let s = Slot::of(l, 0);
            (s.bits, s.head())
        };
        assert_eq!(head(&[]), (0, 0));
        assert_eq!(head(&[1]), (1, 1 << 127));
        assert_eq!(head(&[0, 1]), (65, 1 << 127));
        assert_eq!(head(&[u64::MAX, 1]), (65, 1 << 127 | (u64::MAX as u128) << 63));
        assert_eq!(head(&[0b11 << 62, 0, 1]), (129, 1 << 127 | 0b11 << 61));
    }

    #[test]
    fn window_high_part_is_exact() {
        let values: [&[u64]; 6] = [&[], &[9], &[3, 1], &[5, 7, 2], &[0, 0, 0, 1], &[1, 2, 3, u64::MAX]];
        for v in values {
            for pos in 0..4 {
                let w = Window {
                    pos,
                    value: 0,
                    slack: 0,
                };
                let shifted = limbs_to_nat(v) >> (64 * pos);
                let want = (shifted.bits() <= 128).then(|| shifted.to_u128().unwrap());
                assert_eq!(w.high_part(Slot::of(v, 0)), want, "{v:?} at {pos}");
            }
        }
    }

    #[test]
    fn window_defers_near_ties() {
        let w = Window {
            pos: 1,
            value: 100,
            slack: 3,
        };
        let entry = |high: u64| Slot::of(&[u64::MAX, high], 0);
        assert_eq!(w.fits(entry(101)), Some(false));
        assert_eq!(w.fits(entry(96)), Some(true));
        for high in 97..=100 {
            assert_eq!(w.fits(entry(high)), None);
        }
    }

    #[test]
    fn ranks_of_structured_patterns_round_trip() {
        use crate::combinadics::rank;
        let (n, k) = (300, 150);
        let t = PascalTable::build(n, k).unwrap();
        let mut patterns = vec![
            (0..k).rev().collect::<Vec<_>>(),
            (n - k..n).rev().collect(),
            (0..k).map(|j| n - 1 - 2 * j).collect(),
        ];
        // Ties between an entry and the remainder: the tail is all minimal.
        for split in [1, 2, 75, 149] {
            let mut p: Vec<usize> = (0..split).map(|j| n - 1 - 2 * j).collect();
            p.extend((0..k - split).rev());
            patterns.push(p);
        }
        for p in patterns {
            let pattern = IndexPattern::new(p).unwrap();
            let x = rank(&pattern, k).unwrap();
            assert_eq!(unrank_pt(&x, &t, n, k).unwrap(), pattern);
        }
    }

    #[test]
    fn random_wide_ranks_match_baseline() {
        use rand::{Rng, SeedableRng};
        let (n, k) = (600, 300);
        let t = PascalTable::build(n, k).unwrap();
        let limit = binomial_multiplicative(n, k);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let words: Vec<u32> = (0..limit.bits().div_ceil(32)).map(|_| rng.gen()).collect();
            let x = BigNat::from_slice(&words) % &limit;
            assert_eq!(unrank_pt(&x, &t, n, k).unwrap(), unrank_baseline(&x, n, k).unwrap());
        }
    }
}
