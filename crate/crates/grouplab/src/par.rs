//! Execution kernels for the data-parallel inner loops.
//!
//! With the `parallel` feature (default) the `par_*` functions fan out over
//! rayon; without it they alias the sequential versions. Both preserve input
//! order in their results, and `par_find_first` returns the match with the
//! lowest index, so callers see identical answers in either mode. The `seq_*`
//! functions are always sequential; benches use them as the baseline.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn seq_map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

pub fn par_map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq_map(items, f)
    }
}

pub fn seq_filter_map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    items.iter().filter_map(f).collect()
}

pub fn par_filter_map<T: Sync, U: Send, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().filter_map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq_filter_map(items, f)
    }
}

pub fn seq_find_first<T: Sync, U: Send, F>(items: &[T], f: F) -> Option<U>
where
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    items.iter().find_map(f)
}

/// First `Some` in slice order, even when evaluated out of order.
pub fn par_find_first<T: Sync, U: Send, F>(items: &[T], f: F) -> Option<U>
where
    F: Fn(&T) -> Option<U> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq_find_first(items, f)
    }
}

pub fn seq_all<T: Sync, F>(items: &[T], f: F) -> bool
where
    F: Fn(&T) -> bool + Sync + Send,
{
    items.iter().all(f)
}

pub fn par_all<T: Sync, F>(items: &[T], f: F) -> bool
where
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        seq_all(items, f)
    }
}
