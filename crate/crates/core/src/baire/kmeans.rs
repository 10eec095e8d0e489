use rayon::prelude::*;
use serde::Serialize;

use super::{BairePartition, NormalizedMatrix};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct LloydOutcome {
    pub centers: Matrix,
    pub assignments: Vec<usize>,
    /// Within-cluster sum of squares: initial state first, then after each
    /// assignment/update step.
    pub sse_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Lloyd iterations from an initial labelling of the rows of `data`.
///
/// Centers start at the means of the initial clusters. Ties in the
/// assignment step go to the lowest center index. A center whose cluster
/// empties keeps its previous position.
pub fn lloyd(data: &Matrix, initial: &[usize], k: usize, max_iters: usize) -> Result<LloydOutcome> {
    let (n, dim) = (data.rows(), data.cols());
    if initial.len() != n {
        return Err(Error::invalid(format!(
            "{} initial labels for {n} rows",
            initial.len()
        )));
    }
    if k == 0 || initial.iter().any(|&l| l >= k) {
        return Err(Error::invalid(format!("labels must lie in 0..{k}")));
    }
    if max_iters == 0 {
        return Err(Error::invalid("at least one iteration is required"));
    }

    let mut centers = vec![0.0; k * dim];
    update_centers(data, initial, &mut centers, k);
    let mut assignments = initial.to_vec();
    let mut sse_history = vec![sse(data, &assignments, &centers)];
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iters {
        let next: Vec<usize> = (0..n)
            .into_par_iter()
            .map(|i| nearest(data.row(i), &centers, dim))
            .collect();
        iterations += 1;
        if next == assignments {
            converged = true;
            break;
        }
        assignments = next;
        update_centers(data, &assignments, &mut centers, k);
        sse_history.push(sse(data, &assignments, &centers));
    }

    Ok(LloydOutcome {
        centers: Matrix::from_raw(k, dim, centers),
        assignments,
        sse_history,
        iterations,
        converged,
    })
}

fn nearest(row: &[f64], centers: &[f64], dim: usize) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, center) in centers.chunks_exact(dim.max(1)).enumerate() {
        let d: f64 = row.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
        if d < best_d {
            best = c;
            best_d = d;
        }
    }
    best
}

fn update_centers(data: &Matrix, labels: &[usize], centers: &mut [f64], k: usize) {
    let dim = data.cols();
    let mut sums = vec![0.0; k * dim];
    let mut counts = vec![0usize; k];
    for (row, &l) in data.row_iter().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums[l * dim..(l + 1) * dim].iter_mut().zip(row) {
            *s += v;
        }
    }
    for c in 0..k {
        // empty: keep
        if counts[c] > 0 {
            for j in 0..dim {
                centers[c * dim + j] = sums[c * dim + j] / counts[c] as f64;
            }
        }
    }
}

fn sse(data: &Matrix, labels: &[usize], centers: &[f64]) -> f64 {
    let dim = data.cols();
    data.row_iter()
        .zip(labels)
        .map(|(row, &l)| {
            row.iter()
                .zip(&centers[l * dim..(l + 1) * dim])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RefinementReport {
    pub cluster_count: usize,
    pub largest_cluster_size: usize,
    /// Rows whose final center differs from their Baire cluster.
    pub discrepancy_count: usize,
    /// Baire clusters containing at least one discrepant row.
    pub discrepant_cluster_count: usize,
    pub iterations: usize,
    pub converged: bool,
    pub sse_history: Vec<f64>,
}

/// Runs k-means seeded with the Baire cluster means and counts the rows that
/// k-means moves out of their Baire cluster.
pub fn kmeans_refine(
    matrix: &NormalizedMatrix,
    partition: &BairePartition,
    max_iters: usize,
) -> Result<RefinementReport> {
    if partition.clusters.is_empty() {
        return Err(Error::invalid("partition has no clusters"));
    }
    if partition.rows() != matrix.rows() {
        return Err(Error::invalid(format!(
            "partition covers {} rows, matrix has {}",
            partition.rows(),
            matrix.rows()
        )));
    }
    let labels = partition.labels();
    let k = partition.cluster_count();
    let outcome = lloyd(matrix.values(), &labels, k, max_iters)?;

    let mut flagged = vec![false; k];
    let mut discrepancy_count = 0;
    for (&before, &after) in labels.iter().zip(&outcome.assignments) {
        if before != after {
            discrepancy_count += 1;
            flagged[before] = true;
        }
    }
    Ok(RefinementReport {
        cluster_count: k,
        largest_cluster_size: partition.largest_cluster_size(),
        discrepancy_count,
        discrepant_cluster_count: flagged.iter().filter(|&&f| f).count(),
        iterations: outcome.iterations,
        converged: outcome.converged,
        sse_history: outcome.sse_history,
    })
}
