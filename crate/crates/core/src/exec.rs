//! Execution mode for the data-parallel kernels.
//!
//! With the `parallel` feature, [`Exec::Parallel`] dispatches to rayon. Without it,
//! every mode runs sequentially, so callers never need their own `cfg` gates.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Fill `out[i] = f(i)`.
    pub(crate) fn fill<T, F>(self, out: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            out.par_iter_mut().enumerate().for_each(|(i, x)| *x = f(i));
            return;
        }
        out.iter_mut().enumerate().for_each(|(i, x)| *x = f(i));
    }

    /// Apply `f(i, &mut x)` to every element.
    pub(crate) fn for_each_mut<T, F>(self, data: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            data.par_iter_mut().enumerate().for_each(|(i, x)| f(i, x));
            return;
        }
        data.iter_mut().enumerate().for_each(|(i, x)| f(i, x));
    }

    /// Apply `f` to every chunk of `size` elements.
    pub(crate) fn for_each_chunk<T, F>(self, data: &mut [T], size: usize, f: F)
    where
        T: Send,
        F: Fn(&mut [T]) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && data.len() / size > 1 {
            use rayon::prelude::*;
            data.par_chunks_mut(size).for_each(f);
            return;
        }
        data.chunks_mut(size).for_each(f);
    }

    /// Apply `f(start, chunk)` to every chunk of `size` elements, `start` being the
    /// index of the chunk's first element.
    pub(crate) fn for_each_chunk_at<T, F>(self, data: &mut [T], size: usize, f: F)
    where
        T: Send,
        F: Fn(usize, &mut [T]) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && data.len() / size > 1 {
            use rayon::prelude::*;
            data.par_chunks_mut(size).enumerate().for_each(|(c, chunk)| f(c * size, chunk));
            return;
        }
        data.chunks_mut(size).enumerate().for_each(|(c, chunk)| f(c * size, chunk));
    }

    /// Apply `f` to every pair `(lo[i], hi[i])`.
    pub(crate) fn zip_mut<T, F>(self, lo: &mut [T], hi: &mut [T], f: F)
    where
        T: Send,
        F: Fn(&mut T, &mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && lo.len() >= PAR_MIN {
            use rayon::prelude::*;
            lo.par_iter_mut().zip(hi.par_iter_mut()).for_each(|(a, b)| f(a, b));
            return;
        }
        lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| f(a, b));
    }

    /// Map-reduce over `0..n` in blocks; `fold` builds a per-block accumulator and
    /// `merge` combines accumulators. Block order is preserved in the merge.
    pub(crate) fn map_reduce<A, Fo, Me>(self, n: usize, block: usize, fold: Fo, merge: Me) -> Option<A>
    where
        A: Send,
        Fo: Fn(std::ops::Range<usize>) -> A + Sync + Send,
        Me: Fn(A, A) -> A + Sync + Send,
    {
        let block = block.max(1);
        let blocks = n.div_ceil(block);
        let range = move |b: usize| b * block..((b + 1) * block).min(n);
        #[cfg(feature = "parallel")]
        if self.is_parallel() && blocks > 1 {
            use rayon::prelude::*;
            return (0..blocks).into_par_iter().map(range).map(&fold).reduce_with(&merge);
        }
        (0..blocks).map(range).map(fold).reduce(merge)
    }

    /// Sum of `f(i)` for `i in 0..n`.
    pub(crate) fn sum<F>(self, n: usize, f: F) -> f64
    where
        F: Fn(usize) -> f64 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && n >= PAR_MIN {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).sum();
        }
        (0..n).map(f).sum()
    }
}

/// Below this length the rayon overhead outweighs the gain.
pub(crate) const PAR_MIN: usize = 1 << 12;

/// Downgrade to sequential for short inputs.
pub(crate) fn for_len(exec: Exec, len: usize) -> Exec {
    if len < PAR_MIN {
        Exec::Sequential
    } else {
        exec
    }
}
