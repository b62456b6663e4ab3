//! Data-parallel map over a universe of terms. With the `parallel` feature
//! it runs on rayon; without it, or in `Mode::Sequential`, it is a plain
//! loop. Results always come back in input order.

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Mode {
    #[default]
    Parallel,
    Sequential,
}

pub fn map<T, R, F>(items: &[T], mode: Mode, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == Mode::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Sizes the global worker pool. Only the first call has an effect.
pub fn set_jobs(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_kept() {
        let xs: Vec<u32> = (0..1000).collect();
        let a = map(&xs, Mode::Parallel, |x| x * 2);
        let b = map(&xs, Mode::Sequential, |x| x * 2);
        assert_eq!(a, b);
    }
}
