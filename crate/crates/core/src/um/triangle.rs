//! Angle-based ultrametricity coefficient.
//!
//! Every triangle in an ultrametric space is either equilateral or isosceles
//! with a small base. The coefficient is the fraction of examined triangles
//! that satisfy this to within an angular tolerance.

use rayon::prelude::*;
use serde::Serialize;

use super::sampling::plan_triplets;
use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;

/// Two degrees, in radians.
pub const DEFAULT_TOLERANCE: f64 = 0.0349;

/// Triangles examined per measurement unless the caller says otherwise.
pub const DEFAULT_MAX_TRIANGLES: usize = 300;

const COLLINEAR_EPS: f64 = 1e-12;
const METRIC_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TriangleVerdict {
    IsoscelesSmallBase,
    Equilateral,
    NonUltrametric,
    Degenerate,
}

impl TriangleVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TriangleVerdict::IsoscelesSmallBase => "isosceles_small_base",
            TriangleVerdict::Equilateral => "equilateral",
            TriangleVerdict::NonUltrametric => "non_ultrametric",
            TriangleVerdict::Degenerate => "degenerate",
        }
    }
}

/// Classifies the triangle with side lengths `a`, `b`, `c`.
///
/// Angles come from the law of cosines, so only side lengths are needed.
/// Sides must satisfy the triangle inequality up to a relative slack of
/// `1e-9` of the longest side.
pub fn triangle_classify(a: f64, b: f64, c: f64, tol: f64) -> Result<TriangleVerdict> {
    for s in [a, b, c] {
        if !(s.is_finite() && s >= 0.0) {
            return Err(Error::invalid(format!("side length {s} is not finite and >= 0")));
        }
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid(format!("angular tolerance must be > 0, got {tol}")));
    }
    let longest = a.max(b).max(c);
    let slack = METRIC_SLACK * longest;
    if a > b + c + slack || b > a + c + slack || c > a + b + slack {
        return Err(Error::invalid(format!(
            "sides ({a}, {b}, {c}) violate the triangle inequality; shift dissimilarities first"
        )));
    }
    if a == 0.0 || b == 0.0 || c == 0.0 {
        return Ok(TriangleVerdict::Degenerate);
    }

    let cosines = [
        (b * b + c * c - a * a) / (2.0 * b * c),
        (a * a + c * c - b * b) / (2.0 * a * c),
        (a * a + b * b - c * c) / (2.0 * a * b),
    ];
    if cosines.iter().any(|x| x.abs() >= 1.0 - COLLINEAR_EPS) {
        return Ok(TriangleVerdict::Degenerate);
    }
    let mut angles = cosines.map(|x| x.clamp(-1.0, 1.0).acos());
    angles.sort_by(f64::total_cmp);

    if angles[2] - angles[0] <= tol {
        Ok(TriangleVerdict::Equilateral)
    } else if angles[2] - angles[1] <= tol {
        Ok(TriangleVerdict::IsoscelesSmallBase)
    } else {
        Ok(TriangleVerdict::NonUltrametric)
    }
}

/// Fractions of ultrametric-respecting triangles.
///
/// Fractions are over non-degenerate triangles; degenerate ones are counted
/// separately in `degenerate_count`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UmReport {
    pub isosc_frac: f64,
    pub equil_frac: f64,
    pub um_frac: f64,
    pub degenerate_count: usize,
    pub triangles_examined: usize,
    pub exhaustive: bool,
    pub seed: u64,
}

/// Triangle-based ultrametricity coefficient of `dist`.
///
/// Examines all triplets when there are at most `max_triangles`, otherwise a
/// seeded sample of that many distinct triplets.
pub fn ultrametricity_triangle(
    dist: &DistanceMatrix,
    max_triangles: usize,
    tol: f64,
    seed: u64,
) -> Result<UmReport> {
    let plan = plan_triplets(dist.n(), max_triangles, seed)?;
    let verdicts: Vec<TriangleVerdict> = plan
        .triplets
        .par_iter()
        .map(|&[i, j, k]| {
            triangle_classify(dist.get(i, j), dist.get(j, k), dist.get(i, k), tol).map_err(|e| match e {
                Error::InvalidInput(msg) => {
                    Error::InvalidInput(format!("triplet ({i}, {j}, {k}): {msg}"))
                }
                other => other,
            })
        })
        .collect::<Result<_>>()?;

    let (mut isosc, mut equil, mut degenerate) = (0usize, 0usize, 0usize);
    for v in &verdicts {
        match v {
            TriangleVerdict::IsoscelesSmallBase => isosc += 1,
            TriangleVerdict::Equilateral => equil += 1,
            TriangleVerdict::Degenerate => degenerate += 1,
            TriangleVerdict::NonUltrametric => {}
        }
    }
    let examined = verdicts.len();
    let valid = examined - degenerate;
    if valid == 0 {
        return Err(Error::Degenerate(format!(
            "all {examined} examined triangles are degenerate"
        )));
    }
    let denom = valid as f64;
    Ok(UmReport {
        isosc_frac: isosc as f64 / denom,
        equil_frac: equil as f64 / denom,
        um_frac: (isosc + equil) as f64 / denom,
        degenerate_count: degenerate,
        triangles_examined: examined,
        exhaustive: plan.exhaustive,
        seed,
    })
}
