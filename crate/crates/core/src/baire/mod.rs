//! Baire-space embedding and prefix clustering.
//!
//! Each value in `[0, 1)` is read as its sequence of decimal digits. Two
//! values are close when they share a long digit prefix; rows are grouped by
//! their per-attribute prefixes of length `k`, which yields a hierarchy of
//! nested partitions without computing any pairwise distance.

mod kmeans;

pub use kmeans::{kmeans_refine, lloyd, LloydOutcome, RefinementReport};

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// The first `k` decimal digits of `value`, by truncation.
///
/// Digits are taken from the shortest decimal representation that
/// round-trips to the same `f64` (so `0.478` yields `"478"`), padded with
/// zeros. All prefixes of one value therefore come from a single expansion.
pub fn digit_prefix(value: f64, k: usize) -> Result<String> {
    check_unit(value)?;
    if k == 0 {
        return Err(Error::invalid("digit count must be at least 1"));
    }
    Ok(expand(value, k))
}

fn check_unit(value: f64) -> Result<()> {
    if !(0.0..1.0).contains(&value) {
        return Err(Error::invalid(format!("value {value} is outside [0, 1)")));
    }
    Ok(())
}

fn expand(value: f64, k: usize) -> String {
    let mut out = String::with_capacity(k);
    if value > 0.0 {
        let repr = value.to_string();
        let frac = repr.strip_prefix("0.").expect("value in (0, 1) displays as 0.xxx");
        out.extend(frac.chars().take(k));
    }
    while out.len() < k {
        out.push('0');
    }
    out
}

/// Baire distance over `precision` digits: `1` when the first digits differ,
/// otherwise `2^-l` for a common prefix of length `l`.
pub fn baire_distance(x: f64, y: f64, precision: usize) -> Result<f64> {
    check_unit(x)?;
    check_unit(y)?;
    if precision == 0 {
        return Err(Error::invalid("precision must be at least 1"));
    }
    let l = common_prefix(&expand(x, precision), &expand(y, precision));
    Ok(distance_from_prefix(l))
}

fn common_prefix(a: &str, b: &str) -> usize {
    a.bytes().zip(b.bytes()).take_while(|(p, q)| p == q).count()
}

fn distance_from_prefix(l: usize) -> f64 {
    if l == 0 {
        1.0
    } else {
        0.5f64.powi(l as i32)
    }
}

/// Replaces cells equal to one (as produced by normalizing a column with a
/// single nonzero entry) with `1 - 10^-precision`. Returns the new matrix
/// and the `(row, column)` of every clamped cell.
pub fn clamp_unit(values: &Matrix, precision: usize) -> Result<(Matrix, Vec<(usize, usize)>)> {
    if precision == 0 {
        return Err(Error::invalid("precision must be at least 1"));
    }
    let top = 1.0 - 10f64.powi(-(precision.min(15) as i32));
    let p = values.cols();
    let mut clamped = Vec::new();
    let mut out = values.as_slice().to_vec();
    for (pos, v) in out.iter_mut().enumerate() {
        // column sums can leave the lone entry a rounding step above one
        if (1.0..=1.0 + 1e-12).contains(v) {
            *v = top;
            clamped.push((pos / p, pos % p));
        }
    }
    Ok((Matrix::from_raw(values.rows(), p, out), clamped))
}

/// Values in `[0, 1)` with their digit expansions to `precision` places.
#[derive(Debug, Clone)]
pub struct NormalizedMatrix {
    values: Matrix,
    precision: usize,
    // row-major, `precision` ASCII digits per cell
    digits: Vec<u8>,
}

impl NormalizedMatrix {
    pub fn new(values: Matrix, precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::invalid("precision must be at least 1"));
        }
        let cols = values.cols().max(1);
        if let Some(pos) = values
            .as_slice()
            .iter()
            .position(|v| !(0.0..1.0).contains(v))
        {
            return Err(Error::invalid(format!(
                "value {} at row {}, column {} is outside [0, 1)",
                values.as_slice()[pos],
                pos / cols,
                pos % cols
            )));
        }
        let digits = values
            .as_slice()
            .par_iter()
            .flat_map_iter(|&v| expand(v, precision).into_bytes())
            .collect();
        Ok(NormalizedMatrix {
            values,
            precision,
            digits,
        })
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn rows(&self) -> usize {
        self.values.rows()
    }

    pub fn attributes(&self) -> usize {
        self.values.cols()
    }

    fn cell_digits(&self, i: usize, j: usize) -> &[u8] {
        let start = (i * self.values.cols() + j) * self.precision;
        &self.digits[start..start + self.precision]
    }

    /// Attribute-major concatenation of the first `k` digits of every value
    /// in row `i`.
    pub fn key(&self, i: usize, k: usize) -> BaireKey {
        let mut s = String::with_capacity(self.attributes() * k);
        for j in 0..self.attributes() {
            let d = &self.cell_digits(i, j)[..k];
            s.push_str(std::str::from_utf8(d).expect("ASCII digits"));
        }
        BaireKey(s)
    }

    /// Per-attribute Baire distance between rows `a` and `b` at full precision.
    pub fn attribute_distance(&self, a: usize, b: usize, j: usize) -> f64 {
        let pa = self.cell_digits(a, j);
        let pb = self.cell_digits(b, j);
        let l = pa.iter().zip(pb).take_while(|(p, q)| p == q).count();
        distance_from_prefix(l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BaireKey(pub String);

impl std::fmt::Display for BaireKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaireCluster {
    pub key: BaireKey,
    pub members: Vec<usize>,
}

/// Rows grouped by shared level-`k` key. Clusters are ordered by key and
/// members ascending, so the result does not depend on row order beyond
/// member indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BairePartition {
    pub level: usize,
    pub clusters: Vec<BaireCluster>,
}

impl BairePartition {
    /// Builds from explicit clusters, checking that they partition `0..n`.
    pub fn from_clusters(level: usize, n: usize, clusters: Vec<BaireCluster>) -> Result<Self> {
        let mut seen = vec![false; n];
        for c in &clusters {
            if c.members.is_empty() {
                return Err(Error::invalid(format!("cluster {} is empty", c.key)));
            }
            for &m in &c.members {
                if m >= n {
                    return Err(Error::invalid(format!("member {m} out of range for {n} rows")));
                }
                if std::mem::replace(&mut seen[m], true) {
                    return Err(Error::invalid(format!("row {m} appears in two clusters")));
                }
            }
        }
        if let Some(m) = seen.iter().position(|s| !s) {
            return Err(Error::invalid(format!("row {m} is not in any cluster")));
        }
        Ok(BairePartition { level, clusters })
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }

    pub fn largest_cluster_size(&self) -> usize {
        self.clusters.iter().map(|c| c.members.len()).max().unwrap_or(0)
    }

    pub fn rows(&self) -> usize {
        self.clusters.iter().map(|c| c.members.len()).sum()
    }

    /// Cluster index of every row.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.rows()];
        for (c, cluster) in self.clusters.iter().enumerate() {
            for &m in &cluster.members {
                labels[m] = c;
            }
        }
        labels
    }
}

/// Groups rows sharing the first `k` digits of every attribute.
pub fn baire_partition(matrix: &NormalizedMatrix, k: usize) -> Result<BairePartition> {
    if k == 0 || k > matrix.precision() {
        return Err(Error::invalid(format!(
            "level {k} outside 1..={}",
            matrix.precision()
        )));
    }
    let keys: Vec<BaireKey> = (0..matrix.rows())
        .into_par_iter()
        .map(|i| matrix.key(i, k))
        .collect();
    let mut groups: HashMap<BaireKey, Vec<usize>> = HashMap::new();
    for (i, key) in keys.into_iter().enumerate() {
        groups.entry(key).or_default().push(i);
    }
    let mut clusters: Vec<BaireCluster> = groups
        .into_iter()
        .map(|(key, members)| BaireCluster { key, members })
        .collect();
    clusters.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(BairePartition { level: k, clusters })
}

/// Partitions for `k = 1..=k_max`; each level refines the previous one.
pub fn partition_hierarchy(matrix: &NormalizedMatrix, k_max: usize) -> Result<Vec<BairePartition>> {
    if k_max == 0 {
        return Err(Error::invalid("maximum level must be at least 1"));
    }
    (1..=k_max).map(|k| baire_partition(matrix, k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelSummary {
    pub k: usize,
    pub cluster_count: usize,
    pub largest_cluster_size: usize,
}

pub fn hierarchy_summary(levels: &[BairePartition]) -> Vec<LevelSummary> {
    levels
        .iter()
        .map(|p| LevelSummary {
            k: p.level,
            cluster_count: p.cluster_count(),
            largest_cluster_size: p.largest_cluster_size(),
        })
        .collect()
}

/// True when every cluster of `fine` lies inside one cluster of `coarse`.
pub fn refines(fine: &BairePartition, coarse: &BairePartition) -> bool {
    let coarse_labels = coarse.labels();
    fine.clusters.iter().all(|c| {
        let first = coarse_labels[c.members[0]];
        c.members.iter().all(|&m| coarse_labels[m] == first)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes_truncate() {
        assert_eq!(digit_prefix(0.478, 1).unwrap(), "4");
        assert_eq!(digit_prefix(0.478, 3).unwrap(), "478");
        assert_eq!(digit_prefix(0.5, 3).unwrap(), "500");
        assert_eq!(digit_prefix(0.999, 2).unwrap(), "99");
        assert_eq!(digit_prefix(0.0, 2).unwrap(), "00");
        assert_eq!(digit_prefix(0.00007, 6).unwrap(), "000070");
        assert!(digit_prefix(1.0, 1).is_err());
        assert!(digit_prefix(-0.1, 1).is_err());
        assert!(digit_prefix(0.3, 0).is_err());
    }

    #[test]
    fn distance_conventions() {
        // common prefix "47" of length 2
        assert_eq!(baire_distance(0.478, 0.472, 3).unwrap(), 0.25);
        assert_eq!(baire_distance(0.478, 0.478, 3).unwrap(), 0.125);
        assert_eq!(baire_distance(0.3, 0.9, 3).unwrap(), 1.0);
        assert!(baire_distance(0.3, 1.5, 3).is_err());
    }

    #[test]
    fn lone_entry_column_is_clamped() {
        let c = crate::recode::column_normalize(&Matrix::from_rows(&[[0.0, 1.0], [2.0, 1.0]]).unwrap()).unwrap();
        let (m, cells) = clamp_unit(&c, 3).unwrap();
        assert_eq!(cells, vec![(1, 0)]);
        assert_eq!(m.get(1, 0), 0.999);
        assert_eq!(m.get(0, 1), 0.5);
        assert!(NormalizedMatrix::new(m, 3).is_ok());
    }

    fn nm(rows: &[&[f64]], precision: usize) -> NormalizedMatrix {
        NormalizedMatrix::new(Matrix::from_rows(rows).unwrap(), precision).unwrap()
    }

    #[test]
    fn keys_are_attribute_major() {
        let m = nm(&[&[0.123, 0.456]], 3);
        assert_eq!(m.key(0, 2).0, "1245");
        assert_eq!(m.key(0, 3).0, "123456");
    }

    #[test]
    fn identical_rows_form_one_cluster() {
        let row: &[f64] = &[0.31, 0.72];
        let m = nm(&[row; 5], 3);
        for k in 1..=3 {
            assert_eq!(baire_partition(&m, k).unwrap().cluster_count(), 1);
        }
    }

    #[test]
    fn distinct_first_digits_are_singletons() {
        let m = nm(&[&[0.1, 0.5], &[0.2, 0.5], &[0.3, 0.5], &[0.4, 0.5]], 2);
        assert_eq!(baire_partition(&m, 1).unwrap().cluster_count(), 4);
    }

    #[test]
    fn hierarchy_nests() {
        let m = nm(
            &[&[0.11, 0.5], &[0.12, 0.5], &[0.19, 0.51], &[0.2, 0.5], &[0.21, 0.5]],
            2,
        );
        let h = partition_hierarchy(&m, 2).unwrap();
        assert_eq!(h[0].cluster_count(), 2);
        assert_eq!(h[1].cluster_count(), 5);
        assert!(refines(&h[1], &h[0]));
        assert!(!refines(&h[0], &h[1]));
        assert_eq!(
            hierarchy_summary(&h)[0],
            LevelSummary {
                k: 1,
                cluster_count: 2,
                largest_cluster_size: 3
            }
        );
    }

    #[test]
    fn level_out_of_range() {
        let m = nm(&[&[0.1]], 2);
        assert!(baire_partition(&m, 3).is_err());
        assert!(baire_partition(&m, 0).is_err());
    }

    #[test]
    fn explicit_clusters_must_partition() {
        let c = |key: &str, members: Vec<usize>| BaireCluster {
            key: BaireKey(key.into()),
            members,
        };
        assert!(BairePartition::from_clusters(1, 3, vec![c("1", vec![0, 2]), c("2", vec![1])]).is_ok());
        assert!(BairePartition::from_clusters(1, 3, vec![c("1", vec![0, 2])]).is_err());
        assert!(BairePartition::from_clusters(1, 3, vec![c("1", vec![0, 1]), c("2", vec![1, 2])]).is_err());
    }
}
