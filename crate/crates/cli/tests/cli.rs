use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use ultrametric_core::baire::{baire_partition, kmeans_refine, NormalizedMatrix};
use ultrametric_core::io::read_matrix_csv;
use ultrametric_core::recode::rank_booleanize;
use ultrametric_core::synth::{generate, Family, GeneratorSpec};
use ultrametric_core::tsfp::{logistic_map, series_fingerprint, TimeSeries};
use ultrametric_core::um::{lerman_h, rammal_degree, ultrametricity_triangle, DEFAULT_TOLERANCE};
use ultrametric_core::{pairwise_euclidean, Matrix};

fn umtool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umtool")).args(args).output().unwrap()
}

fn json_stdout(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_then_measure_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let cloud_path = dir.path().join("cloud.csv");
    let out = umtool(&[
        "generate", "--family", "gaussian", "--n", "60", "--d", "40", "--seed", "9", "--out", s(&cloud_path),
    ]);
    assert_eq!(json_stdout(&out)["seed"], 9);

    let measured = json_stdout(&umtool(&["measure", s(&cloud_path), "--seed", "4", "--rammal", "--lerman"]));

    let cloud = generate(&GeneratorSpec::new(Family::GaussianStandard, 60, 40, 9)).unwrap().cloud;
    let d = pairwise_euclidean(&cloud).unwrap();
    let direct = ultrametricity_triangle(&d, 300, DEFAULT_TOLERANCE, 4).unwrap();
    let r = &measured["result"];
    assert_eq!(r["report"], serde_json::to_value(&direct).unwrap());
    assert_eq!(r["rammalDegree"].as_f64().unwrap(), rammal_degree(&d).unwrap());
    assert_eq!(r["lermanH"].as_f64().unwrap(), lerman_h(&d, 300, 4).unwrap());
    assert_eq!(measured["seed"], 4);
    assert_eq!(measured["parameters"]["triangles"], 300);
    assert!(measured["version"].is_string());
}

#[test]
fn mixture_label_column_is_not_a_coordinate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mix.csv");
    json_stdout(&umtool(&[
        "generate", "--family", "mixture3", "--n", "30", "--d", "4", "--seed", "2", "--out", s(&path),
    ]));
    let measured = json_stdout(&umtool(&["measure", s(&path)]));
    let cloud = generate(&GeneratorSpec::new(Family::Mixture3Gaussian, 30, 4, 2)).unwrap().cloud;
    let direct = ultrametricity_triangle(&pairwise_euclidean(&cloud).unwrap(), 300, DEFAULT_TOLERANCE, 0).unwrap();
    assert_eq!(measured["result"]["report"], serde_json::to_value(&direct).unwrap());
}

#[test]
fn two_points_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.csv");
    std::fs::write(&path, "x,y\n0,0\n1,1\n").unwrap();
    let out = umtool(&["measure", s(&path)]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["message"].as_str().unwrap().contains("n < 3"));
    assert_eq!(err["file"], s(&path));
}

#[test]
fn malformed_cell_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "a,b,c\n1,2,3\n4,5,6\n7,oops,9\n").unwrap();
    let out = umtool(&["measure", s(&path)]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["row"], 4);
    assert_eq!(err["column"], 2);
    assert_eq!(err["error"], "malformed-csv");
}

#[test]
fn iris_recoding_raises_ultrametricity() {
    let dir = tempfile::tempdir().unwrap();
    let iris = dir.path().join("iris.csv");
    std::fs::write(&iris, ultrametric_core::datasets::iris_csv()).unwrap();
    let coded = dir.path().join("coded.csv");
    json_stdout(&umtool(&["recode", s(&iris), "--mode", "rank-boolean", "--out", s(&coded)]));

    let t = read_matrix_csv(&coded).unwrap();
    assert_eq!(t.matrix.cols(), 123);
    assert_eq!(t.matrix, rank_booleanize(&read_matrix_csv(&iris).unwrap().matrix).unwrap().values);
    assert_eq!(t.header.unwrap()[0], "var0_rank1");

    let raw = json_stdout(&umtool(&["measure", s(&iris)]))["result"]["report"]["umFrac"].as_f64().unwrap();
    let rec = json_stdout(&umtool(&["measure", s(&coded)]))["result"]["report"]["umFrac"].as_f64().unwrap();
    assert!(raw < 0.1 && rec > 0.9, "{raw} {rec}");
}

#[test]
fn fingerprint_per_window_length() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.csv");
    let x = logistic_map(0.2, 400);
    let text: String = x.iter().map(|v| format!("{v}\n")).collect();
    std::fs::write(&path, text).unwrap();
    let out = json_stdout(&umtool(&["tsfp", s(&path), "--m", "5,10"]));
    let prints = out["result"]["fingerprints"].as_array().unwrap();
    assert_eq!(prints.len(), 2);
    let direct = series_fingerprint(&TimeSeries::new(x).unwrap(), 10).unwrap();
    assert_eq!(prints[1], serde_json::to_value(&direct).unwrap());
}

#[test]
fn baire_hierarchy_and_refinement() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unit.csv");
    let rows: Vec<[f64; 2]> = (0..90)
        .map(|i| {
            let c = 0.15 + 0.3 * (i % 3) as f64;
            [c + 0.001 * (i / 3) as f64, c - 0.001 * (i / 3) as f64]
        })
        .collect();
    let text: String = rows.iter().map(|r| format!("{},{}\n", r[0], r[1])).collect();
    std::fs::write(&path, text).unwrap();

    let summary = dir.path().join("levels.csv");
    let tree = json_stdout(&umtool(&["baire", s(&path), "--kmax", "3", "--summary", s(&summary)]));
    let levels = tree["result"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    assert_eq!(levels[0]["clusters"].as_array().unwrap().len(), 3);
    let csv = std::fs::read_to_string(&summary).unwrap();
    assert!(csv.starts_with("k,clusterCount,largestClusterSize\n1,3,30\n"), "{csv}");

    let part = dir.path().join("k1.json");
    std::fs::write(&part, levels[0].to_string()).unwrap();
    let from_file = json_stdout(&umtool(&["refine", s(&path), "--partition", s(&part)]));
    let from_k = json_stdout(&umtool(&["refine", s(&path), "--k", "1"]));
    assert_eq!(from_file["result"], from_k["result"]);

    let m = NormalizedMatrix::new(Matrix::from_rows(&rows).unwrap(), 4).unwrap();
    let direct = kmeans_refine(&m, &baire_partition(&m, 1).unwrap(), 100).unwrap();
    assert_eq!(from_k["result"], serde_json::to_value(&direct).unwrap());
    assert_eq!(direct.discrepancy_count, 0);
}

#[test]
fn lone_entry_column_is_clamped_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.csv");
    std::fs::write(&path, "3,1\n0,1\n0,2\n").unwrap();
    let out = umtool(&["baire", s(&path), "--normalize", "--kmax", "2"]);
    assert!(out.status.success());
    let warning: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!((warning["row"].as_u64(), warning["column"].as_u64()), (Some(1), Some(1)));
}
