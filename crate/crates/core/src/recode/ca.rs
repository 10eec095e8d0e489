//! Chi-squared distance and correspondence-analysis row embedding.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Axes whose singular value is at or below this are treated as zero.
const RANK_EPS: f64 = 1e-11;

/// Non-negative contingency table with cached margins.
#[derive(Debug, Clone, PartialEq)]
pub struct CountTable {
    counts: Matrix,
    row_totals: Vec<f64>,
    col_totals: Vec<f64>,
    grand_total: f64,
}

impl CountTable {
    /// Validates non-negativity and rejects all-zero rows and columns.
    pub fn new(counts: Matrix) -> Result<Self> {
        let (n, p) = (counts.rows(), counts.cols());
        if n == 0 || p == 0 {
            return Err(Error::invalid("count table is empty"));
        }
        if let Some(pos) = counts.as_slice().iter().position(|&v| v < 0.0) {
            return Err(Error::invalid(format!(
                "negative count at row {}, column {}",
                pos / p,
                pos % p
            )));
        }
        let row_totals: Vec<f64> = counts.row_iter().map(|r| r.iter().sum()).collect();
        let col_totals: Vec<f64> = (0..p).map(|j| counts.column(j).sum()).collect();
        if let Some(i) = row_totals.iter().position(|&t| t == 0.0) {
            return Err(Error::invalid(format!("row {i} has zero total")));
        }
        if let Some(j) = col_totals.iter().position(|&t| t == 0.0) {
            return Err(Error::invalid(format!("column {j} has zero total")));
        }
        let grand_total = row_totals.iter().sum();
        Ok(CountTable {
            counts,
            row_totals,
            col_totals,
            grand_total,
        })
    }

    pub fn counts(&self) -> &Matrix {
        &self.counts
    }

    pub fn row_totals(&self) -> &[f64] {
        &self.row_totals
    }

    pub fn col_totals(&self) -> &[f64] {
        &self.col_totals
    }

    pub fn grand_total(&self) -> f64 {
        self.grand_total
    }

    pub fn rows(&self) -> usize {
        self.counts.rows()
    }

    pub fn cols(&self) -> usize {
        self.counts.cols()
    }

    fn row_masses(&self) -> Vec<f64> {
        self.row_totals.iter().map(|t| t / self.grand_total).collect()
    }

    fn col_masses(&self) -> Vec<f64> {
        self.col_totals.iter().map(|t| t / self.grand_total).collect()
    }
}

/// Chi-squared distance between the profiles of rows `i` and `i2`, on
/// frequencies: `sqrt( sum_j (1/f_j) (f_ij/f_i - f_i2j/f_i2)^2 )`.
pub fn chi2_distance(table: &CountTable, i: usize, i2: usize) -> Result<f64> {
    let n = table.rows();
    if i >= n || i2 >= n {
        return Err(Error::invalid(format!("row index out of range for {n} rows")));
    }
    let k = table.grand_total;
    let (fi, fi2) = (table.row_totals[i] / k, table.row_totals[i2] / k);
    let a = table.counts.row(i);
    let b = table.counts.row(i2);
    let s: f64 = (0..table.cols())
        .map(|j| {
            let fj = table.col_totals[j] / k;
            let diff = (a[j] / k) / fi - (b[j] / k) / fi2;
            diff * diff / fj
        })
        .sum();
    Ok(s.sqrt())
}

/// Row principal coordinates of a correspondence analysis.
///
/// Euclidean distances between rows of `row_coords` equal chi-squared
/// distances between the corresponding row profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorEmbedding {
    /// `n x r` factor coordinates.
    pub row_coords: Matrix,
    /// Principal inertias (squared singular values), descending.
    pub eigenvalues: Vec<f64>,
    pub row_masses: Vec<f64>,
}

impl FactorEmbedding {
    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn total_inertia(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

/// Matrix of standardized residuals `(f_ij - f_i f_j) / sqrt(f_i f_j)`.
pub fn standardized_residuals(table: &CountTable) -> Matrix {
    let (n, p) = (table.rows(), table.cols());
    let r = table.row_masses();
    let c = table.col_masses();
    let k = table.grand_total;
    let mut s = Vec::with_capacity(n * p);
    for i in 0..n {
        for j in 0..p {
            let f = table.counts.get(i, j) / k;
            let e = r[i] * c[j];
            s.push((f - e) / e.sqrt());
        }
    }
    Matrix::from_raw(n, p, s)
}

/// Correspondence analysis of the row profiles.
///
/// Row `i`, axis `a` gets `(S v_a)_i / sqrt(f_i)` where `S` holds the
/// standardized residuals and `v_a` is the `a`-th principal axis, which
/// equals `sigma_a u_ia / sqrt(f_i)`. Axes come from the symmetric
/// eigendecomposition of the smaller Gram matrix; the orthogonal axis basis
/// keeps chi-squared distances intact to rounding.
///
/// A table whose residuals vanish (all profiles equal) yields rank 0.
pub fn ca_embed(table: &CountTable) -> Result<FactorEmbedding> {
    let (n, p) = (table.rows(), table.cols());
    if n < 2 || p < 2 {
        return Err(Error::invalid(format!(
            "correspondence analysis needs at least 2 x 2, got {n} x {p}"
        )));
    }
    let masses = table.row_masses();
    let mut s = DMatrix::from_row_slice(n, p, standardized_residuals(table).as_slice());
    if p > n {
        // S = R^T Q^T, and rows of R^T have the same inner products as rows of S
        let qr = s.transpose().qr();
        s = qr.r().transpose();
    }
    let axes = (s.transpose() * &s).symmetric_eigen().eigenvectors;
    let proj = &s * axes;

    let inertia: Vec<f64> = proj.column_iter().map(|c| c.norm_squared()).collect();
    let mut order: Vec<usize> = (0..inertia.len()).collect();
    order.sort_by(|&a, &b| inertia[b].total_cmp(&inertia[a]));
    let keep: Vec<usize> = order
        .into_iter()
        .filter(|&a| inertia[a] > RANK_EPS * RANK_EPS)
        .take(n.min(p) - 1)
        .collect();

    let r = keep.len();
    let mut coords = Vec::with_capacity(n * r);
    for i in 0..n {
        let scale = masses[i].sqrt();
        coords.extend(keep.iter().map(|&a| proj[(i, a)] / scale));
    }
    Ok(FactorEmbedding {
        row_coords: Matrix::from_raw(n, r, coords),
        eigenvalues: keep.iter().map(|&a| inertia[a]).collect(),
        row_masses: masses,
    })
}
