//! Runtime switch for data-parallel kernels.
//!
//! With the `parallel` feature the heavy loops (series products, Poisson
//! brackets, triangle rows, operator-word sums) fan out over rayon. Without it,
//! or after [`set_enabled(false)`](set_enabled), everything runs on the calling
//! thread. Coefficients are exact, so both paths produce identical results.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(true);

/// Pair count below which a product is always evaluated sequentially.
#[cfg(feature = "parallel")]
pub(crate) const MIN_PARALLEL_WORK: usize = 1 << 12;

pub fn set_enabled(on: bool) {
    ENABLED.store(on, Ordering::Relaxed);
}

/// True when the crate was built with `parallel` and the switch is on.
pub fn enabled() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::Relaxed)
}

/// Maps `f` over `items`, in parallel when enabled. Output order follows input order.
pub(crate) fn map_collect<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if enabled() && items.len() > 1 {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}
