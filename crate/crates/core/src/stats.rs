//! Peak stored-term counter used by the benchmark harness.

use std::sync::atomic::{AtomicUsize, Ordering};

static PEAK_TERMS: AtomicUsize = AtomicUsize::new(0);

pub fn reset_peak_terms() {
    PEAK_TERMS.store(0, Ordering::Relaxed);
}

/// Largest term count of any series produced by a product since the last reset.
pub fn peak_terms() -> usize {
    PEAK_TERMS.load(Ordering::Relaxed)
}

pub(crate) fn record_terms(n: usize) {
    PEAK_TERMS.fetch_max(n, Ordering::Relaxed);
}
