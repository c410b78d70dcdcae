use super::{unrank_baseline, unrank_pt, FullLut, IndexPattern, PascalTable};
use super::{DEFAULT_LUT_CAP, DEFAULT_TABLE_BUDGET_BYTES};
use crate::error::{Error, Result};
use crate::BigNat;
use std::fmt;
use std::str::FromStr;

/// Which index selector implementation to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    /// Online selector, binomials from the multiplicative formula.
    Baseline,
    /// Online selector, binomials read from a Pascal's-triangle table.
    Pt,
    /// One read from a `2^p1`-entry look-up table.
    Lut,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Baseline, Backend::Pt, Backend::Lut];

    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Baseline => "baseline",
            Backend::Pt => "pt",
            Backend::Lut => "lut",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "baseline" => Ok(Backend::Baseline),
            "pt" => Ok(Backend::Pt),
            "lut" => Ok(Backend::Lut),
            other => Err(Error::Parse(format!(
                "unknown backend {other:?} (expected baseline, pt or lut)"
            ))),
        }
    }
}

/// Size limits applied when a selector needs a precomputed table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectorCaps {
    pub lut_entries: u64,
    pub table_bytes: u64,
}

impl Default for SelectorCaps {
    fn default() -> Self {
        SelectorCaps {
            lut_entries: DEFAULT_LUT_CAP,
            table_bytes: DEFAULT_TABLE_BUDGET_BYTES,
        }
    }
}

/// A ready-to-use index selector with any tables it needs already built.
#[derive(Debug, Clone)]
pub enum IndexSelector {
    Baseline,
    Pt(PascalTable),
    Lut(FullLut),
}

impl IndexSelector {
    /// Prepares `backend` for an `n`-subcarrier, `k`-active layout.
    pub fn prepare(backend: Backend, n: usize, k: usize, caps: SelectorCaps) -> Result<Self> {
        Ok(match backend {
            Backend::Baseline => {
                super::check_dims(n, k)?;
                IndexSelector::Baseline
            }
            Backend::Pt => IndexSelector::Pt(PascalTable::build_with_budget(n, k, caps.table_bytes)?),
            Backend::Lut => IndexSelector::Lut(FullLut::build_with_cap(n, k, caps.lut_entries)?),
        })
    }

    pub fn backend(&self) -> Backend {
        match self {
            IndexSelector::Baseline => Backend::Baseline,
            IndexSelector::Pt(_) => Backend::Pt,
            IndexSelector::Lut(_) => Backend::Lut,
        }
    }

    pub fn select(&self, x: &BigNat, n: usize, k: usize) -> Result<IndexPattern> {
        match self {
            IndexSelector::Baseline => unrank_baseline(x, n, k),
            IndexSelector::Pt(table) => unrank_pt(x, table, n, k),
            IndexSelector::Lut(lut) => {
                if (lut.n(), lut.k()) != (n, k) {
                    return Err(Error::dims(format!(
                        "look-up table built for n={}, k={}, asked for n={n}, k={k}",
                        lut.n(),
                        lut.k()
                    )));
                }
                lut.lookup(x)
            }
        }
    }
}
