#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ultrametric_core::{DistanceMatrix, Matrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cophenetic distances of a random binary dendrogram on `n` leaves with
/// strictly positive, increasing merge heights.
pub fn random_ultrametric(n: usize, seed: u64) -> DistanceMatrix {
    let mut r = rng(seed);
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut values = vec![0.0; n * n];
    let mut height = 0.0;
    while clusters.len() > 1 {
        let a = r.random_range(0..clusters.len());
        let mut b = r.random_range(0..clusters.len() - 1);
        if b >= a {
            b += 1;
        }
        // quantised heights produce ties, which exercise equilateral triangles
        height += f64::from(r.random_range(1..4u8)) * 0.25;
        let (lo, hi) = (a.min(b), a.max(b));
        let merged = clusters.swap_remove(hi);
        for &x in &clusters[lo] {
            for &y in &merged {
                values[x * n + y] = height;
                values[y * n + x] = height;
            }
        }
        clusters[lo].extend(merged);
    }
    DistanceMatrix::new(n, values).unwrap()
}

/// Random dissimilarities in `[lo, hi)`.
pub fn random_dissimilarity(n: usize, lo: f64, hi: f64, seed: u64) -> DistanceMatrix {
    let mut r = rng(seed);
    DistanceMatrix::from_fn(n, |_, _| r.random_range(lo..hi)).unwrap()
}

pub fn random_cloud(n: usize, d: usize, seed: u64) -> Matrix {
    let mut r = rng(seed);
    let data = (0..n * d).map(|_| r.random_range(-1.0..1.0)).collect();
    Matrix::new(n, d, data).unwrap()
}

/// Random count table with every row and column total positive.
pub fn random_counts(n: usize, p: usize, seed: u64) -> Matrix {
    let mut r = rng(seed);
    loop {
        let data: Vec<f64> = (0..n * p)
            .map(|_| {
                if r.random_bool(0.3) {
                    0.0
                } else {
                    f64::from(r.random_range(1..40u32))
                }
            })
            .collect();
        let m = Matrix::new(n, p, data).unwrap();
        let rows_ok = m.row_iter().all(|row| row.iter().sum::<f64>() > 0.0);
        let cols_ok = (0..p).all(|j| m.column(j).sum::<f64>() > 0.0);
        if rows_ok && cols_ok {
            return m;
        }
    }
}

/// Chi-squared distance straight from the textbook formula on frequencies.
pub fn chi2_oracle(counts: &Matrix, a: usize, b: usize) -> f64 {
    let (n, p) = (counts.rows(), counts.cols());
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..p {
            total += counts.get(i, j);
        }
    }
    let mut fa = 0.0;
    let mut fb = 0.0;
    for j in 0..p {
        fa += counts.get(a, j) / total;
        fb += counts.get(b, j) / total;
    }
    let mut s = 0.0;
    for j in 0..p {
        let mut fj = 0.0;
        for i in 0..n {
            fj += counts.get(i, j) / total;
        }
        let diff = counts.get(a, j) / total / fa - counts.get(b, j) / total / fb;
        s += diff * diff / fj;
    }
    s.sqrt()
}

/// Exhaustive strong-triangle check over all ordered triples.
pub fn is_ultrametric(d: &DistanceMatrix) -> bool {
    let n = d.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if d.get(i, k) > d.get(i, j).max(d.get(j, k)) {
                    return false;
                }
            }
        }
    }
    true
}
