//! Bundled reference data.

use crate::io::parse_matrix_csv;
use crate::matrix::Matrix;

const IRIS_CSV: &str = include_str!("../data/iris.csv");

/// Fisher's iris measurements: 150 rows, columns sepal length, sepal width,
/// petal length, petal width (cm). The species column is dropped.
pub fn iris() -> Matrix {
    parse_matrix_csv(IRIS_CSV.as_bytes())
        .expect("bundled iris CSV parses")
        .matrix
}

pub fn iris_csv() -> &'static str {
    IRIS_CSV
}
