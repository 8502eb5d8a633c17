//! Data-parallel helpers. With the `parallel` feature these run on the rayon
//! pool; without it they are plain sequential loops with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn filter_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Option<R> + Sync + Send) -> Vec<R> {
    items.par_iter().filter_map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn filter_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Option<R> + Sync + Send) -> Vec<R> {
    items.iter().filter_map(f).collect()
}

/// First hit in input order.
#[cfg(feature = "parallel")]
pub fn find_map_first<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Option<R> + Sync + Send) -> Option<R> {
    items.par_iter().find_map_first(f)
}

#[cfg(not(feature = "parallel"))]
pub fn find_map_first<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Option<R> + Sync + Send) -> Option<R> {
    items.iter().find_map(f)
}

#[cfg(feature = "parallel")]
pub fn all<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    items.par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub fn all<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    items.iter().all(f)
}
