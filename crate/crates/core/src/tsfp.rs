//! Ultrametric fingerprints of univariate time series.
//!
//! The series is cut into non-overlapping windows of length `m`. Inside each
//! window every pair of samples is recoded as a small (1) or large (2)
//! transition, and the fraction of sample triplets obeying the strong
//! triangle inequality on the recoded values scores the window. The mean
//! over windows is the series fingerprint.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite sample at index {i}")));
        }
        Ok(TimeSeries { samples })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }
}

/// Change/no-change recoding of one window: `m x m`, zero diagonal,
/// off-diagonal entries in `{1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecodedWindow {
    m: usize,
    values: Vec<u8>,
}

impl RecodedWindow {
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> u8 {
        self.values[j * self.m + k]
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.values.chunks(self.m).map(<[u8]>::to_vec).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Fingerprint {
    pub m: usize,
    pub s: usize,
    pub aggregate: f64,
    pub per_window: Vec<f64>,
}

/// `floor(n / m)` consecutive non-overlapping windows starting at sample 0.
/// Trailing samples that do not fill a window are dropped.
pub fn embed_windows(series: &TimeSeries, m: usize) -> Result<Vec<&[f64]>> {
    if m < 3 {
        return Err(Error::invalid(format!("window length must be at least 3, got {m}")));
    }
    if series.len() < m {
        return Err(Error::invalid(format!(
            "series of length {} is shorter than the window length {m}",
            series.len()
        )));
    }
    Ok(series.samples.chunks_exact(m).collect())
}

/// Thresholds squared differences at the midpoint of this window's range.
pub fn window_recode(window: &[f64]) -> Result<RecodedWindow> {
    let m = window.len();
    if m < 3 {
        return Err(Error::invalid(format!("window length must be at least 3, got {m}")));
    }
    if window.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("window contains non-finite values"));
    }
    let mut sq = vec![0.0; m * m];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for j in 0..m {
        for k in (j + 1)..m {
            let d = (window[j] - window[k]).powi(2);
            sq[j * m + k] = d;
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    let threshold = lo + (hi - lo) / 2.0;
    let mut values = vec![0u8; m * m];
    for j in 0..m {
        for k in (j + 1)..m {
            let code = if hi == lo || sq[j * m + k] <= threshold { 1 } else { 2 };
            values[j * m + k] = code;
            values[k * m + j] = code;
        }
    }
    Ok(RecodedWindow { m, values })
}

/// Fraction of all coordinate triplets whose two largest recoded values are
/// equal.
pub fn window_ultrametricity(rw: &RecodedWindow) -> f64 {
    let m = rw.m;
    let mut conforming = 0usize;
    let mut total = 0usize;
    for i in 0..m {
        for j in (i + 1)..m {
            let ij = rw.get(i, j);
            for k in (j + 1)..m {
                let mut t = [ij, rw.get(j, k), rw.get(i, k)];
                t.sort_unstable();
                if t[1] == t[2] {
                    conforming += 1;
                }
                total += 1;
            }
        }
    }
    conforming as f64 / total as f64
}

pub fn series_fingerprint(series: &TimeSeries, m: usize) -> Result<Fingerprint> {
    let windows = embed_windows(series, m)?;
    let per_window: Vec<f64> = windows
        .par_iter()
        .map(|w| window_recode(w).map(|rw| window_ultrametricity(&rw)))
        .collect::<Result<_>>()?;
    let s = per_window.len();
    let aggregate = per_window.iter().sum::<f64>() / s as f64;
    Ok(Fingerprint {
        m,
        s,
        aggregate,
        per_window,
    })
}

/// Logistic map `x -> 4 x (1 - x)`, a standard chaotic series.
pub fn logistic_map(x0: f64, n: usize) -> Vec<f64> {
    std::iter::successors(Some(x0), |&x| Some(4.0 * x * (1.0 - x)))
        .take(n)
        .collect()
}
