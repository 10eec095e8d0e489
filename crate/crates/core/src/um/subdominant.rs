//! Subdominant ultrametric and the discrepancy measure built on it.

use crate::error::{Error, Result};
use crate::matrix::DistanceMatrix;

/// Minimum spanning tree edges `(u, v, weight)` of the complete graph, by Prim.
pub fn minimum_spanning_tree(dist: &DistanceMatrix) -> Vec<(usize, usize, f64)> {
    let n = dist.n();
    if n < 2 {
        return Vec::new();
    }
    let mut in_tree = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut parent = vec![0usize; n];
    let mut edges = Vec::with_capacity(n - 1);

    in_tree[0] = true;
    for v in 1..n {
        best[v] = dist.get(0, v);
    }
    for _ in 1..n {
        let mut next = usize::MAX;
        let mut next_w = f64::INFINITY;
        for v in 0..n {
            if !in_tree[v] && (next == usize::MAX || best[v] < next_w) {
                next = v;
                next_w = best[v];
            }
        }
        in_tree[next] = true;
        edges.push((parent[next], next, next_w));
        let row = dist.row(next);
        for v in 0..n {
            if !in_tree[v] && row[v] < best[v] {
                best[v] = row[v];
                parent[v] = next;
            }
        }
    }
    edges
}

/// The maximal ultrametric lying below `dist` (single-linkage cophenetic
/// distance).
///
/// MST edges are merged in ascending order; every pair joined by a merge
/// receives that edge's weight, which is the largest edge on their tree path.
pub fn subdominant_ultrametric(dist: &DistanceMatrix) -> DistanceMatrix {
    let n = dist.n();
    let mut edges = minimum_spanning_tree(dist);
    edges.sort_by(|a, b| a.2.total_cmp(&b.2));

    let mut values = vec![0.0; n * n];
    let mut owner: Vec<usize> = (0..n).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    for (u, v, w) in edges {
        let (mut a, mut b) = (owner[u], owner[v]);
        if members[a].len() < members[b].len() {
            std::mem::swap(&mut a, &mut b);
        }
        let absorbed = std::mem::take(&mut members[b]);
        for &x in &members[a] {
            for &y in &absorbed {
                values[x * n + y] = w;
                values[y * n + x] = w;
            }
        }
        for &y in &absorbed {
            owner[y] = a;
        }
        members[a].extend(absorbed);
    }
    DistanceMatrix::new(n, values).expect("subdominant of a valid matrix is valid")
}

/// Relative discrepancy between `dist` and its subdominant ultrametric:
/// `sum (d - d_sub) / sum d` over unordered pairs. Zero iff already ultrametric.
pub fn rammal_degree(dist: &DistanceMatrix) -> Result<f64> {
    let total: f64 = dist.upper_pairs().map(|(_, _, v)| v).sum();
    if total <= 0.0 {
        return Err(Error::invalid("all off-diagonal distances are zero"));
    }
    let sub = subdominant_ultrametric(dist);
    let gap: f64 = dist
        .upper_pairs()
        .map(|(i, j, v)| v - sub.get(i, j))
        .sum();
    Ok(gap / total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_on_a_line() -> DistanceMatrix {
        // points at 0, 1, 3
        DistanceMatrix::from_lower_triangle(&[vec![0.0], vec![1.0, 0.0], vec![3.0, 2.0, 0.0]]).unwrap()
    }

    #[test]
    fn collinear_subdominant() {
        let s = subdominant_ultrametric(&three_on_a_line());
        assert_eq!(s.get(0, 1), 1.0);
        assert_eq!(s.get(1, 2), 2.0);
        assert_eq!(s.get(0, 2), 2.0);
    }

    #[test]
    fn collinear_rammal() {
        let r = rammal_degree(&three_on_a_line()).unwrap();
        assert!((r - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn two_points_unchanged() {
        let d = DistanceMatrix::new(2, vec![0.0, 4.0, 4.0, 0.0]).unwrap();
        assert_eq!(subdominant_ultrametric(&d), d);
    }

    #[test]
    fn equal_distances() {
        let d = DistanceMatrix::from_fn(6, |_, _| 3.0).unwrap();
        assert_eq!(subdominant_ultrametric(&d), d);
        assert_eq!(rammal_degree(&d).unwrap(), 0.0);
    }

    #[test]
    fn all_zero_is_rejected() {
        let d = DistanceMatrix::from_fn(3, |_, _| 0.0).unwrap();
        assert!(rammal_degree(&d).is_err());
    }

    #[test]
    fn mst_has_n_minus_one_edges() {
        let d = DistanceMatrix::from_fn(9, |i, j| ((i * 7 + j * 3) % 5 + 1) as f64).unwrap();
        let e = minimum_spanning_tree(&d);
        assert_eq!(e.len(), 8);
    }
}
