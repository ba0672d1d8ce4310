//! Order-preserving map helpers with an optional rayon backend.
//!
//! The `parallel` feature switches the implementation; results are identical
//! either way because collection preserves input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map over a slice, collecting results in input order.
#[cfg(feature = "parallel")]
pub fn map_collect<T: Sync, U: Send, F: Fn(&T) -> U + Sync + Send>(items: &[T], f: F) -> Vec<U> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F: Fn(&T) -> U>(items: &[T], f: F) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Sequential reference implementation, always available for comparison.
pub fn map_collect_seq<T, U, F: Fn(&T) -> U>(items: &[T], f: F) -> Vec<U> {
    items.iter().map(f).collect()
}

/// Map over index pairs `(i, j)` from two ranges, row-major order.
#[cfg(feature = "parallel")]
pub fn map_product<U: Send, F: Fn(usize, usize) -> U + Sync + Send>(n: usize, m: usize, f: F) -> Vec<U> {
    (0..n * m)
        .into_par_iter()
        .map(|k| f(k / m, k % m))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_product<U, F: Fn(usize, usize) -> U>(n: usize, m: usize, f: F) -> Vec<U> {
    (0..n * m).map(|k| f(k / m, k % m)).collect()
}
