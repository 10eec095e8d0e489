//! Python bindings. Matrices cross the boundary as lists of rows.

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use ultrametric_core::baire::{self, NormalizedMatrix};
use ultrametric_core::recode::{self, CountTable};
use ultrametric_core::synth::{self, GeneratorSpec};
use ultrametric_core::tsfp::{self, TimeSeries};
use ultrametric_core::um::{self, DEFAULT_MAX_TRIANGLES, DEFAULT_TOLERANCE};
use ultrametric_core::{DistanceMatrix, Error, Matrix};

type Rows = Vec<Vec<f64>>;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for Result<T, Error> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn matrix(rows: &Rows) -> PyResult<Matrix> {
    Matrix::from_rows(rows).py()
}

fn distances(rows: &Rows) -> PyResult<DistanceMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("distance matrix must be square"));
    }
    DistanceMatrix::new(n, rows.concat()).py()
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct UmReport {
    isosc_frac: f64,
    equil_frac: f64,
    um_frac: f64,
    degenerate_count: usize,
    triangles_examined: usize,
    exhaustive: bool,
    seed: u64,
}

#[pymethods]
impl UmReport {
    fn __repr__(&self) -> String {
        format!(
            "UmReport(um_frac={}, isosc_frac={}, equil_frac={}, triangles_examined={})",
            self.um_frac, self.isosc_frac, self.equil_frac, self.triangles_examined
        )
    }
}

impl From<um::UmReport> for UmReport {
    fn from(r: um::UmReport) -> Self {
        UmReport {
            isosc_frac: r.isosc_frac,
            equil_frac: r.equil_frac,
            um_frac: r.um_frac,
            degenerate_count: r.degenerate_count,
            triangles_examined: r.triangles_examined,
            exhaustive: r.exhaustive,
            seed: r.seed,
        }
    }
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct Fingerprint {
    m: usize,
    s: usize,
    aggregate: f64,
    per_window: Vec<f64>,
}

#[pymethods]
impl Fingerprint {
    fn __repr__(&self) -> String {
        format!("Fingerprint(m={}, s={}, aggregate={})", self.m, self.s, self.aggregate)
    }
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct FactorEmbedding {
    row_coords: Rows,
    eigenvalues: Vec<f64>,
    row_masses: Vec<f64>,
}

#[pymethods]
impl FactorEmbedding {
    fn total_inertia(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

#[pyclass(frozen, get_all, skip_from_py_object)]
#[derive(Clone)]
struct RefinementReport {
    cluster_count: usize,
    largest_cluster_size: usize,
    discrepancy_count: usize,
    discrepant_cluster_count: usize,
    iterations: usize,
    converged: bool,
    sse_history: Vec<f64>,
}

#[pyfunction]
fn pairwise_euclidean(points: Rows) -> PyResult<Rows> {
    Ok(ultrametric_core::pairwise_euclidean(&matrix(&points)?).py()?.to_rows())
}

#[pyfunction]
fn additive_shift(distances_: Rows, c: f64) -> PyResult<Rows> {
    Ok(ultrametric_core::additive_shift(&distances(&distances_)?, c).py()?.to_rows())
}

#[pyfunction]
#[pyo3(signature = (a, b, c, tol = DEFAULT_TOLERANCE))]
fn triangle_classify(a: f64, b: f64, c: f64, tol: f64) -> PyResult<&'static str> {
    Ok(um::triangle_classify(a, b, c, tol).py()?.as_str())
}

/// Triangle ultrametricity of a point cloud under Euclidean distance.
#[pyfunction]
#[pyo3(signature = (points, max_triangles = DEFAULT_MAX_TRIANGLES, tol = DEFAULT_TOLERANCE, seed = 0))]
fn ultrametricity(points: Rows, max_triangles: usize, tol: f64, seed: u64) -> PyResult<UmReport> {
    let d = ultrametric_core::pairwise_euclidean(&matrix(&points)?).py()?;
    Ok(um::ultrametricity_triangle(&d, max_triangles, tol, seed).py()?.into())
}

#[pyfunction]
#[pyo3(signature = (distances_, max_triangles = DEFAULT_MAX_TRIANGLES, tol = DEFAULT_TOLERANCE, seed = 0))]
fn ultrametricity_distance(distances_: Rows, max_triangles: usize, tol: f64, seed: u64) -> PyResult<UmReport> {
    Ok(um::ultrametricity_triangle(&distances(&distances_)?, max_triangles, tol, seed)
        .py()?
        .into())
}

#[pyfunction]
#[pyo3(signature = (distances_, max_triplets = DEFAULT_MAX_TRIANGLES, seed = 0))]
fn lerman_h(distances_: Rows, max_triplets: usize, seed: u64) -> PyResult<f64> {
    um::lerman_h(&distances(&distances_)?, max_triplets, seed).py()
}

#[pyfunction]
fn rammal_degree(distances_: Rows) -> PyResult<f64> {
    um::rammal_degree(&distances(&distances_)?).py()
}

#[pyfunction]
fn subdominant_ultrametric(distances_: Rows) -> PyResult<Rows> {
    Ok(um::subdominant_ultrametric(&distances(&distances_)?).to_rows())
}

#[pyfunction]
fn double(table: Rows, max: f64) -> PyResult<Rows> {
    Ok(recode::double(&matrix(&table)?, max).py()?.to_rows())
}

/// Returns the indicator rows and their column labels.
#[pyfunction]
fn rank_booleanize(table: Rows) -> PyResult<(Rows, Vec<String>)> {
    let ind = recode::rank_booleanize(&matrix(&table)?).py()?;
    Ok((ind.values.to_rows(), ind.labels()))
}

#[pyfunction]
fn column_normalize(table: Rows) -> PyResult<Rows> {
    Ok(recode::column_normalize(&matrix(&table)?).py()?.to_rows())
}

#[pyfunction]
fn chi2_distance(counts: Rows, i: usize, j: usize) -> PyResult<f64> {
    recode::chi2_distance(&CountTable::new(matrix(&counts)?).py()?, i, j).py()
}

#[pyfunction]
fn ca_embed(counts: Rows) -> PyResult<FactorEmbedding> {
    let e = recode::ca_embed(&CountTable::new(matrix(&counts)?).py()?).py()?;
    Ok(FactorEmbedding {
        row_coords: e.row_coords.to_rows(),
        eigenvalues: e.eigenvalues,
        row_masses: e.row_masses,
    })
}

#[pyfunction]
fn series_fingerprint(series: Vec<f64>, m: usize) -> PyResult<Fingerprint> {
    let f = tsfp::series_fingerprint(&TimeSeries::new(series).py()?, m).py()?;
    Ok(Fingerprint {
        m: f.m,
        s: f.s,
        aggregate: f.aggregate,
        per_window: f.per_window,
    })
}

#[pyfunction]
fn logistic_map(x0: f64, n: usize) -> Vec<f64> {
    tsfp::logistic_map(x0, n)
}

#[pyfunction]
fn digit_prefix(value: f64, k: usize) -> PyResult<String> {
    baire::digit_prefix(value, k).py()
}

#[pyfunction]
fn baire_distance(x: f64, y: f64, precision: usize) -> PyResult<f64> {
    baire::baire_distance(x, y, precision).py()
}

/// Clusters at digit level `k` as `(key, members)` pairs, ordered by key.
#[pyfunction]
#[pyo3(signature = (values, k, precision = 4))]
fn baire_partition(values: Rows, k: usize, precision: usize) -> PyResult<Vec<(String, Vec<usize>)>> {
    let m = NormalizedMatrix::new(matrix(&values)?, precision).py()?;
    let p = baire::baire_partition(&m, k).py()?;
    Ok(p.clusters.into_iter().map(|c| (c.key.0, c.members)).collect())
}

/// `(k, cluster_count, largest_cluster_size)` for k = 1..=kmax.
#[pyfunction]
#[pyo3(signature = (values, kmax, precision = 4))]
fn hierarchy_summary(values: Rows, kmax: usize, precision: usize) -> PyResult<Vec<(usize, usize, usize)>> {
    let m = NormalizedMatrix::new(matrix(&values)?, precision).py()?;
    let levels = baire::partition_hierarchy(&m, kmax).py()?;
    Ok(baire::hierarchy_summary(&levels)
        .into_iter()
        .map(|l| (l.k, l.cluster_count, l.largest_cluster_size))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (values, k = 1, precision = 4, max_iters = 100))]
fn kmeans_refine(values: Rows, k: usize, precision: usize, max_iters: usize) -> PyResult<RefinementReport> {
    let m = NormalizedMatrix::new(matrix(&values)?, precision).py()?;
    let p = baire::baire_partition(&m, k).py()?;
    let r = baire::kmeans_refine(&m, &p, max_iters).py()?;
    Ok(RefinementReport {
        cluster_count: r.cluster_count,
        largest_cluster_size: r.largest_cluster_size,
        discrepancy_count: r.discrepancy_count,
        discrepant_cluster_count: r.discrepant_cluster_count,
        iterations: r.iterations,
        converged: r.converged,
        sse_history: r.sse_history,
    })
}

/// Synthetic cloud; labels are returned for `"mixture3"` only.
#[pyfunction]
#[pyo3(signature = (family, n, d, seed = 0, separation = 10.0))]
fn generate(family: &str, n: usize, d: usize, seed: u64, separation: f64) -> PyResult<(Rows, Option<Vec<usize>>)> {
    let family: synth::Family = family.parse().py()?;
    let s = synth::generate(&GeneratorSpec::new(family, n, d, seed).with_separation(separation)).py()?;
    Ok((s.cloud.to_rows(), s.labels))
}

#[pyfunction]
fn iris() -> Rows {
    ultrametric_core::datasets::iris().to_rows()
}

#[pymodule]
fn ultrametric(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_TOLERANCE", DEFAULT_TOLERANCE)?;
    m.add("DEFAULT_MAX_TRIANGLES", DEFAULT_MAX_TRIANGLES)?;
    m.add_class::<UmReport>()?;
    m.add_class::<Fingerprint>()?;
    m.add_class::<FactorEmbedding>()?;
    m.add_class::<RefinementReport>()?;
    m.add_function(wrap_pyfunction!(pairwise_euclidean, m)?)?;
    m.add_function(wrap_pyfunction!(additive_shift, m)?)?;
    m.add_function(wrap_pyfunction!(triangle_classify, m)?)?;
    m.add_function(wrap_pyfunction!(ultrametricity, m)?)?;
    m.add_function(wrap_pyfunction!(ultrametricity_distance, m)?)?;
    m.add_function(wrap_pyfunction!(lerman_h, m)?)?;
    m.add_function(wrap_pyfunction!(rammal_degree, m)?)?;
    m.add_function(wrap_pyfunction!(subdominant_ultrametric, m)?)?;
    m.add_function(wrap_pyfunction!(double, m)?)?;
    m.add_function(wrap_pyfunction!(rank_booleanize, m)?)?;
    m.add_function(wrap_pyfunction!(column_normalize, m)?)?;
    m.add_function(wrap_pyfunction!(chi2_distance, m)?)?;
    m.add_function(wrap_pyfunction!(ca_embed, m)?)?;
    m.add_function(wrap_pyfunction!(series_fingerprint, m)?)?;
    m.add_function(wrap_pyfunction!(logistic_map, m)?)?;
    m.add_function(wrap_pyfunction!(digit_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(baire_distance, m)?)?;
    m.add_function(wrap_pyfunction!(baire_partition, m)?)?;
    m.add_function(wrap_pyfunction!(hierarchy_summary, m)?)?;
    m.add_function(wrap_pyfunction!(kmeans_refine, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(iris, m)?)?;
    Ok(())
}
