//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper takes a `parallel` switch so the same binary can run and
//! benchmark both strategies. Without the `parallel` feature the switch is
//! ignored and everything runs on the calling thread.

/// Default strategy: parallel when the feature is compiled in.
pub const DEFAULT_PARALLEL: bool = cfg!(feature = "parallel");

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn any<T: Sync, F: Fn(&T) -> bool + Sync + Send>(items: &[T], parallel: bool, f: F) -> bool {
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        return items.par_iter().any(f);
    }
    let _ = parallel;
    items.iter().any(f)
}

pub fn all<T: Sync, F: Fn(&T) -> bool + Sync + Send>(items: &[T], parallel: bool, f: F) -> bool {
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        return items.par_iter().all(f);
    }
    let _ = parallel;
    items.iter().all(f)
}

/// Order-preserving map.
pub fn map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], parallel: bool, f: F) -> Vec<R> {
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        return items.par_iter().map(f).collect();
    }
    let _ = parallel;
    items.iter().map(f).collect()
}

/// First item (in slice order) for which `f` returns `Some`.
pub fn find_map_first<T: Sync, R: Send, F: Fn(&T) -> Option<R> + Sync + Send>(items: &[T], parallel: bool, f: F) -> Option<R> {
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        return items.par_iter().find_map_first(f);
    }
    let _ = parallel;
    items.iter().find_map(f)
}
