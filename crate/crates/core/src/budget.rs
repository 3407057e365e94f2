//! Caps on the size of exhaustive searches.

use crate::error::{Error, Result};

/// Environment variable overriding the default limit.
pub const BUDGET_ENV: &str = "WORKBENCH_BUDGET";

/// Default cap on candidate spaces and collection counts.
pub const DEFAULT_LIMIT: u64 = 2_000_000;

/// A limit on how many objects an enumeration may touch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: DEFAULT_LIMIT }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    /// Reads `WORKBENCH_BUDGET`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).map(Budget::new).unwrap_or_default()
    }

    pub fn check(&self, what: &'static str, needed: u64) -> Result<()> {
        if needed > self.limit {
            Err(Error::Budget { what, needed, limit: self.limit })
        } else {
            Ok(())
        }
    }
}

/// `n choose k`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
