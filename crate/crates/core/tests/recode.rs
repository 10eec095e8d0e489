mod common;

use common::*;
use proptest::prelude::*;
use ultrametric_core::datasets::iris;
use ultrametric_core::recode::{
    ca_embed, chi2_distance, column_normalize, double, rank_booleanize, standardized_residuals,
    CountTable,
};
use ultrametric_core::Matrix;

#[test]
fn chi2_matches_scalar_oracle() {
    let counts = random_counts(6, 4, 21);
    let t = CountTable::new(counts.clone()).unwrap();
    for a in 0..6 {
        for b in 0..6 {
            let got = chi2_distance(&t, a, b).unwrap();
            assert!((got - chi2_oracle(&counts, a, b)).abs() <= 1e-12);
        }
    }
}

#[test]
fn ca_preserves_chi2_distances() {
    let counts = random_counts(10, 6, 4);
    let t = CountTable::new(counts.clone()).unwrap();
    let e = ca_embed(&t).unwrap();
    assert!(e.rank() <= 5);
    let mut pairs = 0;
    for a in 0..10 {
        for b in (a + 1)..10 {
            let euclid: f64 = e
                .row_coords
                .row(a)
                .iter()
                .zip(e.row_coords.row(b))
                .map(|(x, y)| (x - y).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!((euclid - chi2_oracle(&counts, a, b)).abs() <= 1e-8);
            pairs += 1;
        }
    }
    assert_eq!(pairs, 45);
    assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    assert!(e.eigenvalues.iter().all(|&l| (0.0..=1.0 + 1e-12).contains(&l)));
    assert!((e.row_masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert!((e.total_inertia() - standardized_residuals(&t).as_slice().iter().map(|s| s * s).sum::<f64>()).abs() <= 1e-10);
}

#[test]
fn doubled_rows_have_constant_margins() {
    let pct = Matrix::from_rows(&[[12.5, 80.0, 0.0], [100.0, 3.0, 44.0], [50.0, 50.0, 50.0]]).unwrap();
    let d = double(&pct, 100.0).unwrap();
    for row in d.row_iter() {
        assert_eq!(row.iter().sum::<f64>(), 300.0);
    }
    let t = CountTable::new(d).unwrap();
    assert!(t.row_totals().iter().all(|&r| r == 300.0));
}

#[test]
fn iris_rank_coding_has_123_columns() {
    let ind = rank_booleanize(&iris()).unwrap();
    assert_eq!(ind.values.rows(), 150);
    assert_eq!(ind.values.cols(), 123);
    let widths: Vec<usize> = (0..4)
        .map(|v| ind.column_origin.iter().filter(|o| o.variable == v).count())
        .collect();
    assert_eq!(widths, vec![35, 23, 43, 22]);
    for row in ind.values.row_iter() {
        assert_eq!(row.iter().sum::<f64>(), 4.0);
    }
    for j in 0..123 {
        assert!(ind.values.column(j).sum::<f64>() > 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn column_sums_are_one(n in 1usize..30, p in 1usize..8, seed in any::<u64>()) {
        let m = random_counts(n.max(1), p, seed);
        let c = column_normalize(&m).unwrap();
        for j in 0..p {
            prop_assert!((c.column(j).sum::<f64>() - 1.0).abs() <= 1e-12);
            prop_assert!(c.column(j).all(|v| (0.0..=1.0).contains(&v)));
        }
    }

    #[test]
    fn rank_coding_rows_sum_to_variable_count(n in 1usize..25, p in 1usize..6, seed in any::<u64>()) {
        let mut r = rng(seed);
        use rand::Rng;
        let data: Vec<f64> = (0..n * p).map(|_| f64::from(r.random_range(0..5u8))).collect();
        let ind = rank_booleanize(&Matrix::new(n, p, data).unwrap()).unwrap();
        for row in ind.values.row_iter() {
            prop_assert_eq!(row.iter().sum::<f64>(), p as f64);
        }
    }

    #[test]
    fn ca_distance_preservation(n in 2usize..30, p in 2usize..12, seed in any::<u64>()) {
        let counts = random_counts(n, p, seed);
        let t = CountTable::new(counts.clone()).unwrap();
        let e = ca_embed(&t).unwrap();
        prop_assert!(e.rank() < n.min(p));
        for a in 0..n {
            for b in (a + 1)..n {
                let euclid: f64 = e.row_coords.row(a).iter().zip(e.row_coords.row(b))
                    .map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
                prop_assert!((euclid - chi2_oracle(&counts, a, b)).abs() <= 1e-8);
            }
        }
    }
}
