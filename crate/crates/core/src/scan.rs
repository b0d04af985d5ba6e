//! Exhaustive scans over cube-shaped index spaces.
//!
//! Every axiom check in this crate reduces to "find the lexicographically
//! first tuple in `{0..n}^K` violating a law". The sequential kernel is the
//! reference; with the `parallel` feature (default) the scan is split over the
//! leading coordinate with `rayon` and `find_map_first` keeps the result
//! identical to the sequential one.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// First tuple, in lexicographic order, for which `law` returns `false`.
/// Dispatches to the parallel kernel when the `parallel` feature is enabled.
pub fn first_failure<const K: usize, F>(n: usize, law: F) -> Option<[usize; K]>
where
    F: Fn(&[usize; K]) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        first_failure_par(n, law)
    }
    #[cfg(not(feature = "parallel"))]
    {
        first_failure_seq(n, law)
    }
}

/// Sequential reference kernel.
pub fn first_failure_seq<const K: usize, F>(n: usize, law: F) -> Option<[usize; K]>
where
    F: Fn(&[usize; K]) -> bool,
{
    assert!(K >= 1, "scan arity must be positive");
    let mut tuple = [0usize; K];
    loop {
        if !law(&tuple) {
            return Some(tuple);
        }
        if !advance(&mut tuple, n) {
            return None;
        }
    }
}

/// Parallel kernel: split on the leading coordinate, scan each slab
/// sequentially. `find_map_first` preserves the lexicographic answer.
#[cfg(feature = "parallel")]
pub fn first_failure_par<const K: usize, F>(n: usize, law: F) -> Option<[usize; K]>
where
    F: Fn(&[usize; K]) -> bool + Sync,
{
    assert!(K >= 1, "scan arity must be positive");
    (0..n).into_par_iter().find_map_first(|lead| {
        let mut tuple = [0usize; K];
        tuple[0] = lead;
        loop {
            if !law(&tuple) {
                return Some(tuple);
            }
            if !advance_suffix(&mut tuple, n) {
                return None;
            }
        }
    })
}

/// Whether `law` holds on all of `{0..n}^K`.
pub fn holds_on_all<const K: usize, F>(n: usize, law: F) -> bool
where
    F: Fn(&[usize; K]) -> bool + Sync,
{
    first_failure::<K, F>(n, law).is_none()
}

fn advance<const K: usize>(tuple: &mut [usize; K], n: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Advance all coordinates except the leading one.
#[cfg(feature = "parallel")]
fn advance_suffix<const K: usize>(tuple: &mut [usize; K], n: usize) -> bool {
    for slot in tuple.iter_mut().skip(1).rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Whether `pred(i, j)` holds on all of `{0..k}^2`. Short-circuits; the
/// parallel version splits on `i`.
pub fn pairs_hold<F>(k: usize, pred: F) -> bool
where
    F: Fn(usize, usize) -> bool + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..k)
            .into_par_iter()
            .all(|i| (0..k).all(|j| pred(i, j)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..k).all(|i| (0..k).all(|j| pred(i, j)))
    }
}

/// Deterministic stream of pseudo-random values for sampled (non-exhaustive)
/// checks. SplitMix64; the sequence depends only on the seed.
#[derive(Debug, Clone)]
pub struct SampleStream {
    state: u64,
}

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        SampleStream { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..bound` (`bound` must be positive).
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}
