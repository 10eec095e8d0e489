//! Seeded synthetic point clouds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{pairwise_euclidean, PointCloud};
use crate::um::ultrametricity_triangle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// i.i.d. uniform coordinates on `[0, 1)`.
    Uniform01,
    /// i.i.d. fair `{0, 1}` coordinates.
    HypercubeVertex,
    /// i.i.d. standard normal coordinates.
    GaussianStandard,
    /// Three unit-variance isotropic Gaussians whose centers lie on distinct
    /// axes, pairwise `separation` apart.
    Mixture3Gaussian,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Uniform01 => "uniform",
            Family::HypercubeVertex => "hypercube",
            Family::GaussianStandard => "gaussian",
            Family::Mixture3Gaussian => "mixture3",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" | "uniform01" => Ok(Family::Uniform01),
            "hypercube" | "hypercubevertex" => Ok(Family::HypercubeVertex),
            "gaussian" | "gaussianstandard" => Ok(Family::GaussianStandard),
            "mixture3" | "mixture3gaussian" => Ok(Family::Mixture3Gaussian),
            other => Err(Error::invalid(format!("unknown generator family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    /// Inter-center distance for [`Family::Mixture3Gaussian`], in units of
    /// the component standard deviation. Ignored by the other families.
    pub separation: f64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, d: usize, seed: u64) -> Self {
        GeneratorSpec {
            family,
            n,
            d,
            seed,
            separation: 10.0,
        }
    }

    pub fn with_separation(mut self, separation: f64) -> Self {
        self.separation = separation;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Synthetic {
    pub cloud: PointCloud,
    /// Component index per row, for mixtures only.
    pub labels: Option<Vec<usize>>,
}

pub fn generate(spec: &GeneratorSpec) -> Result<Synthetic> {
    let GeneratorSpec { family, n, d, seed, separation } = *spec;
    if n == 0 || d == 0 {
        return Err(Error::invalid(format!("generator needs n >= 1 and d >= 1, got {n} x {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = n * d;
    let (data, labels) = match family {
        Family::Uniform01 => ((0..len).map(|_| rng.random::<f64>()).collect(), None),
        Family::HypercubeVertex => (
            (0..len).map(|_| f64::from(u8::from(rng.random::<bool>()))).collect(),
            None,
        ),
        Family::GaussianStandard => (
            (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect(),
            None,
        ),
        Family::Mixture3Gaussian => {
            if !(separation.is_finite() && separation > 0.0) {
                return Err(Error::invalid(format!("separation must be > 0, got {separation}")));
            }
            if d < 3 {
                return Err(Error::invalid("three-component mixture needs d >= 3"));
            }
            // centers at (s / sqrt 2) e_c are pairwise s apart
            let offset = separation / std::f64::consts::SQRT_2;
            let labels: Vec<usize> = (0..3).flat_map(|c| std::iter::repeat_n(c, n / 3 + usize::from(c < n % 3))).collect();
            let mut data = Vec::with_capacity(len);
            for &c in &labels {
                for j in 0..d {
                    let z: f64 = rng.sample(StandardNormal);
                    data.push(if j == c { z + offset } else { z });
                }
            }
            (data, Some(labels))
        }
    };
    Ok(Synthetic {
        cloud: PointCloud::new(n, d, data)?,
        labels,
    })
}

/// One row of a dimensionality sweep, averaged over replicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub family: &'static str,
    pub n: usize,
    pub d: usize,
    pub isosc_frac: f64,
    pub equil_frac: f64,
    pub um_frac: f64,
    pub replicates: usize,
}

/// Triangle ultrametricity of i.i.d. clouds across families and dimensions.
///
/// Replicate `r` uses seed `seed + r` for both generation and triplet draws.
pub fn dimensionality_sweep(
    families: &[Family],
    dims: &[usize],
    n: usize,
    replicates: usize,
    seed: u64,
    max_triangles: usize,
    tol: f64,
) -> Result<Vec<SweepRow>> {
    if replicates == 0 {
        return Err(Error::invalid("at least one replicate is required"));
    }
    let mut rows = Vec::new();
    for &family in families {
        for &d in dims {
            let (mut iso, mut eq, mut um) = (0.0, 0.0, 0.0);
            for r in 0..replicates {
                let s = seed.wrapping_add(r as u64);
                let cloud = generate(&GeneratorSpec::new(family, n, d, s))?.cloud;
                let rep = ultrametricity_triangle(&pairwise_euclidean(&cloud)?, max_triangles, tol, s)?;
                iso += rep.isosc_frac;
                eq += rep.equil_frac;
                um += rep.um_frac;
            }
            let k = replicates as f64;
            rows.push(SweepRow {
                family: family.name(),
                n,
                d,
                isosc_frac: iso / k,
                equil_frac: eq / k,
                um_frac: um / k,
                replicates,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_respect_their_ranges() {
        let u = generate(&GeneratorSpec::new(Family::Uniform01, 50, 40, 1)).unwrap();
        assert!(u.cloud.as_slice().iter().all(|v| (0.0..1.0).contains(v)));
        let h = generate(&GeneratorSpec::new(Family::HypercubeVertex, 50, 40, 1)).unwrap();
        assert!(h.cloud.as_slice().iter().all(|&v| v == 0.0 || v == 1.0));
        assert!(h.cloud.as_slice().contains(&0.0) && h.cloud.as_slice().contains(&1.0));
        let g = generate(&GeneratorSpec::new(Family::GaussianStandard, 200, 50, 1)).unwrap();
        let mean = g.cloud.as_slice().iter().sum::<f64>() / 10_000.0;
        let var = g.cloud.as_slice().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 10_000.0;
        assert!(mean.abs() < 0.05 && (var - 1.0).abs() < 0.05, "{mean} {var}");
    }

    #[test]
    fn same_spec_same_bytes() {
        for family in [Family::Uniform01, Family::HypercubeVertex, Family::GaussianStandard, Family::Mixture3Gaussian] {
            let spec = GeneratorSpec::new(family, 30, 8, 99);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
            assert_ne!(
                generate(&spec).unwrap().cloud,
                generate(&GeneratorSpec { seed: 100, ..spec }).unwrap().cloud
            );
        }
    }

    #[test]
    fn mixture_splits_evenly() {
        let s = generate(&GeneratorSpec::new(Family::Mixture3Gaussian, 301, 5, 3)).unwrap();
        let labels = s.labels.unwrap();
        let counts: Vec<usize> = (0..3).map(|c| labels.iter().filter(|&&l| l == c).count()).collect();
        assert_eq!(counts, vec![101, 100, 100]);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GeneratorSpec::new(Family::Uniform01, 0, 3, 0)).is_err());
        assert!(generate(&GeneratorSpec::new(Family::Mixture3Gaussian, 9, 2, 0)).is_err());
        assert!(generate(&GeneratorSpec::new(Family::Mixture3Gaussian, 9, 3, 0).with_separation(0.0)).is_err());
        assert!("cube".parse::<Family>().is_err());
        assert_eq!("Gaussian".parse::<Family>().unwrap(), Family::GaussianStandard);
    }
}
