//! Data recodings in the correspondence-analysis tradition.

mod ca;

pub use ca::{ca_embed, chi2_distance, standardized_residuals, CountTable, FactorEmbedding};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Doubling: each column `x` is paired with `max - x`.
///
/// Output columns `0..p` carry the original values and `p..2p` their
/// complements, so every output row sums to `p * max`.
pub fn double(table: &Matrix, max: f64) -> Result<Matrix> {
    if !max.is_finite() {
        return Err(Error::invalid(format!("doubling bound must be finite, got {max}")));
    }
    let (n, p) = (table.rows(), table.cols());
    let mut out = Vec::with_capacity(n * 2 * p);
    for (i, row) in table.row_iter().enumerate() {
        if let Some(j) = row.iter().position(|&x| !(0.0..=max).contains(&x)) {
            return Err(Error::invalid(format!(
                "value {} at row {i}, column {j} is outside [0, {max}]",
                row[j]
            )));
        }
        out.extend_from_slice(row);
        out.extend(row.iter().map(|&x| max - x));
    }
    Ok(Matrix::from_raw(n, 2 * p, out))
}

/// Source of one indicator column: the variable it came from and the rank of
/// the value it flags (rank 1 is the largest value).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnOrigin {
    pub variable: usize,
    pub rank: usize,
}

impl ColumnOrigin {
    pub fn label(&self) -> String {
        format!("var{}_rank{}", self.variable, self.rank)
    }
}

/// Complete disjunctive (one-hot) coding of ranked variables.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorTable {
    pub values: Matrix,
    pub column_origin: Vec<ColumnOrigin>,
}

impl IndicatorTable {
    pub fn labels(&self) -> Vec<String> {
        self.column_origin.iter().map(ColumnOrigin::label).collect()
    }
}

/// Replaces each value by its rank within its variable, then boolean-codes
/// the rank.
///
/// Equal values share a rank. Only ranks that occur get a column, so a
/// variable's block is as wide as its number of distinct values. Within a
/// block the top rank (largest value) comes first.
pub fn rank_booleanize(matrix: &Matrix) -> Result<IndicatorTable> {
    let (n, p) = (matrix.rows(), matrix.cols());
    if n == 0 || p == 0 {
        return Err(Error::invalid("rank coding needs at least one row and one column"));
    }
    if matrix.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("rank coding needs finite values"));
    }

    let mut origin = Vec::new();
    let mut row_columns = vec![Vec::with_capacity(p); n];
    for var in 0..p {
        let mut levels: Vec<f64> = matrix.column(var).collect();
        levels.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        levels.dedup();
        let offset = origin.len();
        origin.extend((0..levels.len()).map(|r| ColumnOrigin {
            variable: var,
            rank: r + 1,
        }));
        for (i, cols) in row_columns.iter_mut().enumerate() {
            let v = matrix.get(i, var);
            let r = levels
                .binary_search_by(|x| v.partial_cmp(x).expect("finite"))
                .expect("value present among its own levels");
            cols.push(offset + r);
        }
    }

    let q = origin.len();
    let mut values = vec![0.0; n * q];
    for (i, cols) in row_columns.iter().enumerate() {
        for &c in cols {
            values[i * q + c] = 1.0;
        }
    }
    Ok(IndicatorTable {
        values: Matrix::from_raw(n, q, values),
        column_origin: origin,
    })
}

/// Divides each column by its sum so that every column sums to one.
pub fn column_normalize(matrix: &Matrix) -> Result<Matrix> {
    let (n, p) = (matrix.rows(), matrix.cols());
    if let Some(pos) = matrix.as_slice().iter().position(|&v| v < 0.0) {
        return Err(Error::invalid(format!(
            "negative value at row {}, column {}",
            pos / p,
            pos % p
        )));
    }
    let sums: Vec<f64> = (0..p).map(|j| matrix.column(j).sum()).collect();
    if let Some(j) = sums.iter().position(|&s| s <= 0.0) {
        return Err(Error::invalid(format!("column {j} has zero sum")));
    }
    let mut out = matrix.as_slice().to_vec();
    for i in 0..n {
        for j in 0..p {
            out[i * p + j] /= sums[j];
        }
    }
    Ok(Matrix::from_raw(n, p, out))
}

/// Subtracts each column's minimum so that every column starts at zero.
pub fn shift_nonnegative(matrix: &Matrix) -> Matrix {
    let (n, p) = (matrix.rows(), matrix.cols());
    let mins: Vec<f64> = (0..p)
        .map(|j| matrix.column(j).fold(f64::INFINITY, f64::min))
        .collect();
    let mut out = matrix.as_slice().to_vec();
    for i in 0..n {
        for j in 0..p {
            out[i * p + j] -= mins[j];
        }
    }
    Matrix::from_raw(n, p, out)
}
