//! Data-parallel mapping over independent instances.
//!
//! With the `parallel` feature (default) [`map`] shards work across the
//! rayon pool; without it, it degrades to the sequential loop. The
//! sequential path is always available as [`map_sequential`] so benchmarks
//! can compare both. Results come back in input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, O, F>(items: Vec<T>, f: F) -> Vec<O>
where
    T: Send + Sync,
    O: Send,
    F: Fn(&T) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(&f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, O, F>(items: Vec<T>, f: F) -> Vec<O>
where
    F: Fn(&T) -> O,
{
    items.iter().map(&f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_and_sequential_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let f = |x: &u64| x * x + 1;
        assert_eq!(map(items.clone(), f), map_sequential(items, f));
    }
}
