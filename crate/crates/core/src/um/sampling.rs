//! Triplet selection shared by the triangle and rank-based measures.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// The triplets a measure will examine, fixed before any classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripletPlan {
    pub triplets: Vec<[usize; 3]>,
    pub exhaustive: bool,
}

pub(crate) fn choose3(n: u128) -> u128 {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

fn choose2(n: u128) -> u128 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Every triplet when `C(n,3) <= max_triplets`, otherwise `max_triplets`
/// distinct triplets drawn uniformly without replacement.
///
/// The draw is sequential from one seeded stream, so the plan depends only on
/// `(n, max_triplets, seed)`.
pub fn plan_triplets(n: usize, max_triplets: usize, seed: u64) -> Result<TripletPlan> {
    if n < 3 {
        return Err(Error::invalid(format!("n < 3 (got {n}); triangles need three points")));
    }
    if max_triplets == 0 {
        return Err(Error::invalid("maximum triplet count must be at least 1"));
    }
    let total = choose3(n as u128);
    if total <= max_triplets as u128 {
        let mut triplets = Vec::with_capacity(total as usize);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    triplets.push([i, j, k]);
                }
            }
        }
        return Ok(TripletPlan {
            triplets,
            exhaustive: true,
        });
    }
    let total = usize::try_from(total)
        .map_err(|_| Error::invalid(format!("too many points to index triplets: {n}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rand::seq::index::sample(&mut rng, total, max_triplets);
    let triplets = picks
        .into_iter()
        .map(|r| unrank_triplet(n, r as u128))
        .collect();
    Ok(TripletPlan {
        triplets,
        exhaustive: false,
    })
}

/// Maps a lexicographic rank in `[0, C(n,3))` to the triplet `i < j < k`.
pub(crate) fn unrank_triplet(n: usize, rank: u128) -> [usize; 3] {
    let nn = n as u128;
    let total = choose3(nn);
    // Triplets whose first index is below `i`: total - C(n - i, 3).
    let (mut lo, mut hi) = (0u128, nn - 3);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if total - choose3(nn - mid) <= rank {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let i = lo;
    let mut r = rank - (total - choose3(nn - i));
    // Pairs drawn from the m elements after i.
    let m = nn - 1 - i;
    let pairs = choose2(m);
    let (mut lo, mut hi) = (0u128, m - 2);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if pairs - choose2(m - mid) <= r {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    r -= pairs - choose2(m - lo);
    let j = i + 1 + lo;
    let k = j + 1 + r;
    [i as usize, j as usize, k as usize]
}
