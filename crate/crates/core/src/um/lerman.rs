//! Rank-based H-classifiability.
//!
//! In an ultrametric every triplet has its two largest pair values equal, so
//! no pair value can rank strictly between the triplet's median and maximum.
//! The defect of a triplet is the number of distinct ranks in that open
//! interval, normalised by the largest possible count.

use super::sampling::plan_triplets;
use crate::error::Result;
use crate::matrix::DistanceMatrix;

/// Mean rank defect over the examined triplets; `0` for exact ultrametrics.
///
/// Ties share the minimum rank of their block, so distinct rank values are in
/// one-to-one correspondence with distinct pair values. With `P` distinct
/// values the defect is divided by `P - 2`, which keeps the result in `[0, 1]`.
/// Triplet selection follows the same contract as
/// [`ultrametricity_triangle`](super::ultrametricity_triangle).
pub fn lerman_h(dist: &DistanceMatrix, max_triplets: usize, seed: u64) -> Result<f64> {
    let plan = plan_triplets(dist.n(), max_triplets, seed)?;

    let mut distinct: Vec<f64> = dist.upper_pairs().map(|(_, _, v)| v).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    let p = distinct.len();
    if p <= 2 {
        return Ok(0.0);
    }
    let dense_rank = |v: f64| -> usize {
        distinct
            .binary_search_by(|x| x.total_cmp(&v))
            .expect("pair value present in rank table")
    };

    let norm = (p - 2) as f64;
    let total: f64 = plan
        .triplets
        .iter()
        .map(|&[i, j, k]| {
            let mut r = [
                dense_rank(dist.get(i, j)),
                dense_rank(dist.get(j, k)),
                dense_rank(dist.get(i, k)),
            ];
            r.sort_unstable();
            r[2].saturating_sub(r[1] + 1) as f64 / norm
        })
        .sum();
    Ok(total / plan.triplets.len() as f64)
}
