//! Dense row-major matrices and pairwise dissimilarities.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense `rows x cols` real matrix stored row-major.
///
/// Used both as a point cloud (one point per row) and as a generic data
/// table for the recoding operations.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

/// A set of `n` points in `d` dimensions, one per row.
pub type PointCloud = Matrix;

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::invalid(format!(
                "matrix data has {} entries, expected {rows} x {cols}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "non-finite value at row {}, column {}",
                pos / cols.max(1),
                pos % cols.max(1)
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::invalid(format!(
                    "row {i} has {} columns, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Matrix::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of points when the matrix is read as a point cloud.
    pub fn n(&self) -> usize {
        self.rows
    }

    /// Ambient dimensionality when the matrix is read as a point cloud.
    pub fn d(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[f64]> {
        // chunks_exact panics on a zero chunk size
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.rows).map(move |i| self.get(i, j))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.row_iter().map(<[f64]>::to_vec).collect()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }
}

/// Symmetric, non-negative, zero-diagonal dissimilarity matrix.
///
/// The triangle inequality is not required here; operations that need it
/// check it themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    /// Builds from a full `n x n` row-major array, validating every invariant.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::invalid(format!(
                "distance matrix has {} entries, expected {n} x {n}",
                values.len()
            )));
        }
        for i in 0..n {
            if values[i * n + i] != 0.0 {
                return Err(Error::invalid(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                let a = values[i * n + j];
                let b = values[j * n + i];
                if !a.is_finite() || a < 0.0 {
                    return Err(Error::invalid(format!(
                        "entry ({i}, {j}) = {a} is not a finite non-negative value"
                    )));
                }
                if a != b {
                    return Err(Error::invalid(format!(
                        "asymmetric entries ({i}, {j}) = {a} and ({j}, {i}) = {b}"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, values })
    }

    /// Builds from a function evaluated once per unordered pair `i > j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                let v = f(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        DistanceMatrix::new(n, values)
    }

    /// Builds from row `i` holding entries `(i, 0..=i)`, diagonal included.
    pub fn from_lower_triangle<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.as_ref().len() != i + 1 {
                return Err(Error::invalid(format!(
                    "lower-triangle row {i} has {} entries, expected {}",
                    r.as_ref().len(),
                    i + 1
                )));
            }
        }
        DistanceMatrix::from_fn(n, |i, j| rows[i].as_ref()[j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Off-diagonal values `(i, j)` with `i < j`, in row order.
    pub fn upper_pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn max_entry(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Exact Euclidean distances between all rows of `cloud`.
pub fn pairwise_euclidean(cloud: &PointCloud) -> Result<DistanceMatrix> {
    let n = cloud.n();
    if n < 2 {
        return Err(Error::invalid(format!("need at least 2 points, got {n}")));
    }
    if cloud.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("point cloud contains non-finite values"));
    }
    // Lower triangle rows computed in parallel, mirrored afterwards.
    let lower: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = cloud.row(i);
            (0..i)
                .map(|j| {
                    a.iter()
                        .zip(cloud.row(j))
                        .map(|(x, y)| (x - y) * (x - y))
                        .sum::<f64>()
                        .sqrt()
                })
                .collect()
        })
        .collect();
    let mut values = vec![0.0; n * n];
    for (i, row) in lower.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            values[i * n + j] = v;
            values[j * n + i] = v;
        }
    }
    Ok(DistanceMatrix { n, values })
}

/// Adds `c` to every off-diagonal entry.
///
/// A large enough constant turns any dissimilarity into a metric, and a
/// larger one pushes every triangle towards equilateral.
pub fn additive_shift(dist: &DistanceMatrix, c: f64) -> Result<DistanceMatrix> {
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::invalid(format!("shift must be finite and >= 0, got {c}")));
    }
    let n = dist.n();
    let mut values = dist.values.clone();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                values[i * n + j] += c;
            }
        }
    }
    Ok(DistanceMatrix { n, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pythagorean_pair() {
        let c = Matrix::from_rows(&[[0.0, 0.0], [3.0, 4.0]]).unwrap();
        let d = pairwise_euclidean(&c).unwrap();
        assert_eq!(d.get(0, 1), 5.0);
        assert_eq!(d.get(1, 0), 5.0);
        assert_eq!(d.get(0, 0), 0.0);
    }

    #[test]
    fn identical_points_are_at_zero() {
        let c = Matrix::from_rows(&[[1.5, -2.0, 7.0], [1.5, -2.0, 7.0]]).unwrap();
        assert_eq!(pairwise_euclidean(&c).unwrap().get(0, 1), 0.0);
    }

    #[test]
    fn euclidean_matches_scalar_loop() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let rows: Vec<Vec<f64>> = (0..5)
            .map(|_| (0..7).map(|_| rng.random_range(-3.0..3.0)).collect())
            .collect();
        let d = pairwise_euclidean(&Matrix::from_rows(&rows).unwrap()).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let mut s = 0.0;
                for k in 0..7 {
                    let t = rows[i][k] - rows[j][k];
                    s += t * t;
                }
                assert!((d.get(i, j) - s.sqrt()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_finite_and_short_clouds() {
        assert!(Matrix::from_rows(&[[0.0, f64::NAN]]).is_err());
        let one = Matrix::from_rows(&[[0.0, 1.0]]).unwrap();
        assert!(pairwise_euclidean(&one).is_err());
    }

    #[test]
    fn distance_matrix_validation() {
        assert!(DistanceMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0.0, 1.0, 1.0, 0.0]).is_ok());
        let lt = DistanceMatrix::from_lower_triangle(&[vec![0.0], vec![1.0, 0.0], vec![2.0, 3.0, 0.0]])
            .unwrap();
        assert_eq!(lt.get(0, 2), 2.0);
        assert_eq!(lt.get(2, 1), 3.0);
    }

    #[test]
    fn shift_touches_only_off_diagonal() {
        let d = DistanceMatrix::from_lower_triangle(&[vec![0.0], vec![1.0, 0.0], vec![3.0, 2.0, 0.0]])
            .unwrap();
        assert_eq!(additive_shift(&d, 0.0).unwrap(), d);
        let s = additive_shift(&d, 1000.0).unwrap();
        assert_eq!(s.get(0, 1), 1001.0);
        assert_eq!(s.get(1, 2), 1002.0);
        assert_eq!(s.get(0, 2), 1003.0);
        assert_eq!(s.get(1, 1), 0.0);
        assert!(additive_shift(&d, -1.0).is_err());
    }
}
