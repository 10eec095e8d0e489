use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{json, Value};
use ultrametric_core::baire::{
    baire_partition, clamp_unit, hierarchy_summary, kmeans_refine, partition_hierarchy,
    BaireCluster, BaireKey, BairePartition, NormalizedMatrix,
};
use ultrametric_core::io::{read_distance_csv, read_matrix_csv, read_series, write_matrix_csv};
use ultrametric_core::recode::{ca_embed, column_normalize, double, rank_booleanize, CountTable};
use ultrametric_core::synth::{dimensionality_sweep, generate, Family, GeneratorSpec};
use ultrametric_core::tsfp::series_fingerprint;
use ultrametric_core::um::{lerman_h, rammal_degree, ultrametricity_triangle, DEFAULT_TOLERANCE};
use ultrametric_core::{additive_shift, pairwise_euclidean, DistanceMatrix, Error, Matrix};

use crate::failure::{Failure, InFile};
use crate::*;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Generate(a) => generate_cmd(a),
        Command::Measure(a) => measure(a),
        Command::Recode(a) => recode(a),
        Command::Ca(a) => ca(a),
        Command::Tsfp(a) => tsfp(a),
        Command::Baire(a) => baire(a),
        Command::Refine(a) => refine(a),
        Command::Table1(a) => table1(a),
    }
}

fn envelope(command: &str, seed: Option<u64>, parameters: Value, result: Value) -> Value {
    json!({
        "tool": "umtool",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "seed": seed,
        "parameters": parameters,
        "result": result,
    })
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => Box::new(File::create(p).map_err(Error::from).in_file(p)?),
        None => Box::new(io::stdout()),
    })
}

fn emit_json(out: Option<&Path>, value: &Value) -> Outcome {
    let mut w = sink(out)?;
    let text = serde_json::to_string_pretty(value).expect("json values serialize");
    writeln!(w, "{text}").map_err(Error::from)?;
    Ok(())
}

fn emit_matrix(out: Option<&Path>, header: Option<&[String]>, m: &Matrix) -> Outcome {
    let w = sink(out)?;
    write_matrix_csv(w, header, m).map_err(Failure::from)
}

/// After writing a CSV artifact to a file, record the run on stdout.
fn record_csv_run(command: &str, seed: Option<u64>, parameters: Value, out: Option<&Path>) -> Outcome {
    if let Some(p) = out {
        emit_json(None, &envelope(command, seed, parameters, json!({ "output": p })))?;
    }
    Ok(())
}

fn tolerance(opts: &MeasureOpts) -> f64 {
    opts.tol_degrees.map_or(DEFAULT_TOLERANCE, f64::to_radians)
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn generate_cmd(a: GenerateArgs) -> Outcome {
    let family = match a.family {
        FamilyArg::Uniform => Family::Uniform01,
        FamilyArg::Hypercube => Family::HypercubeVertex,
        FamilyArg::Gaussian => Family::GaussianStandard,
        FamilyArg::Mixture3 => Family::Mixture3Gaussian,
    };
    let spec = GeneratorSpec::new(family, a.n, a.d, a.seed).with_separation(a.separation);
    let synth = generate(&spec)?;
    let mut header: Vec<String> = (1..=a.d).map(|j| format!("x{j}")).collect();
    let table = match &synth.labels {
        Some(labels) => {
            header.push("label".into());
            let rows: Vec<Vec<f64>> = synth
                .cloud
                .row_iter()
                .zip(labels)
                .map(|(r, &l)| r.iter().copied().chain([l as f64]).collect())
                .collect();
            Matrix::from_rows(&rows)?
        }
        None => synth.cloud,
    };
    emit_matrix(a.out.as_deref(), Some(&header), &table)?;
    record_csv_run(
        "generate",
        Some(a.seed),
        json!({ "family": family.name(), "n": a.n, "d": a.d, "separation": a.separation }),
        a.out.as_deref(),
    )
}

/// Point cloud from CSV, minus a trailing `label` column written by `generate`.
pub fn read_cloud(path: &Path) -> Result<Matrix, Failure> {
    let t = read_matrix_csv(path).in_file(path)?;
    let label = t
        .header
        .as_ref()
        .and_then(|h| h.iter().position(|c| c == "label"));
    match label {
        None => Ok(t.matrix),
        Some(j) => {
            let rows: Vec<Vec<f64>> = t
                .matrix
                .row_iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect())
                .collect();
            Matrix::from_rows(&rows).in_file(path)
        }
    }
}

fn measure(a: MeasureArgs) -> Outcome {
    let p = a.input.as_path();
    let mut d: DistanceMatrix = if a.distance {
        read_distance_csv(p).in_file(p)?
    } else {
        pairwise_euclidean(&read_cloud(p)?).in_file(p)?
    };
    if let Some(c) = a.shift {
        d = additive_shift(&d, c).in_file(p)?;
    }
    let tol = tolerance(&a.opts);
    let report = ultrametricity_triangle(&d, a.opts.triangles, tol, a.opts.seed).in_file(p)?;
    let mut result = json!({ "report": report });
    if a.rammal {
        result["rammalDegree"] = json!(rammal_degree(&d).in_file(p)?);
    }
    if a.lerman {
        result["lermanH"] = json!(lerman_h(&d, a.opts.triangles, a.opts.seed).in_file(p)?);
    }
    let parameters = json!({
        "input": path_str(p),
        "distance": a.distance,
        "shift": a.shift,
        "triangles": a.opts.triangles,
        "tolRadians": tol,
    });
    emit_json(a.out.as_deref(), &envelope("measure", Some(a.opts.seed), parameters, result))
}

fn recode(a: RecodeArgs) -> Outcome {
    let p = a.input.as_path();
    let t = read_matrix_csv(p).in_file(p)?;
    let (header, values, mode) = match a.mode {
        RecodeMode::Double => {
            let max = a
                .max
                .ok_or_else(|| Error::InvalidInput("doubling needs --max".into()))?;
            let doubled = double(&t.matrix, max).in_file(p)?;
            let header = t.header.map(|h| {
                let comp = h.iter().map(|c| format!("{c}_complement")).collect::<Vec<_>>();
                h.into_iter().chain(comp).collect::<Vec<_>>()
            });
            (header, doubled, "double")
        }
        RecodeMode::RankBoolean => {
            let ind = rank_booleanize(&t.matrix).in_file(p)?;
            (Some(ind.labels()), ind.values, "rank-boolean")
        }
        RecodeMode::Colnorm => (t.header, column_normalize(&t.matrix).in_file(p)?, "colnorm"),
    };
    emit_matrix(a.out.as_deref(), header.as_deref(), &values)?;
    record_csv_run(
        "recode",
        None,
        json!({ "input": path_str(p), "mode": mode, "max": a.max }),
        a.out.as_deref(),
    )
}

fn ca(a: CaArgs) -> Outcome {
    let p = a.input.as_path();
    let t = read_matrix_csv(p).in_file(p)?;
    let table = CountTable::new(t.matrix).in_file(p)?;
    let e = ca_embed(&table).in_file(p)?;
    let header: Vec<String> = (1..=e.rank()).map(|a| format!("axis{a}")).collect();
    emit_matrix(Some(&a.out), Some(&header), &e.row_coords)?;
    let result = json!({
        "output": a.out,
        "eigenvalues": e.eigenvalues,
        "totalInertia": e.total_inertia(),
        "rowMasses": e.row_masses,
    });
    emit_json(None, &envelope("ca", None, json!({ "input": path_str(p) }), result))
}

fn tsfp(a: TsfpArgs) -> Outcome {
    let p = a.input.as_path();
    let series = read_series(p).in_file(p)?;
    let prints = a
        .m
        .iter()
        .map(|&m| series_fingerprint(&series, m).in_file(p))
        .collect::<Result<Vec<_>, _>>()?;
    let parameters = json!({ "input": path_str(p), "m": a.m, "n": series.len() });
    emit_json(
        a.out.as_deref(),
        &envelope("tsfp", None, parameters, json!({ "fingerprints": prints })),
    )
}

fn normalized_input(path: &Path, opts: &BaireOpts) -> Result<NormalizedMatrix, Failure> {
    let mut m = read_matrix_csv(path).in_file(path)?.matrix;
    if opts.normalize {
        m = column_normalize(&m).in_file(path)?;
    }
    if !m.as_slice().iter().all(|v| (0.0..=1.0).contains(v)) {
        // out-of-range data is rejected without clamping anything
        return NormalizedMatrix::new(m, opts.precision).in_file(path);
    }
    let (values, clamped) = clamp_unit(&m, opts.precision).in_file(path)?;
    for (row, column) in clamped {
        eprintln!(
            "{}",
            json!({
                "warning": "value 1 clamped below 1",
                "file": path_str(path),
                "row": row + 1,
                "column": column + 1,
            })
        );
    }
    NormalizedMatrix::new(values, opts.precision).in_file(path)
}

fn partition_json(p: &BairePartition, max_members: Option<usize>) -> Value {
    let clusters: Vec<Value> = p
        .clusters
        .iter()
        .map(|c| {
            let mut v = json!({ "key": c.key, "size": c.members.len() });
            if max_members.is_none_or(|limit| c.members.len() <= limit) {
                v["members"] = json!(c.members);
            }
            v
        })
        .collect();
    json!({ "k": p.level, "clusters": clusters })
}

fn baire(a: BaireArgs) -> Outcome {
    let p = a.input.as_path();
    let m = normalized_input(p, &a.baire)?;
    let levels = partition_hierarchy(&m, a.kmax).in_file(p)?;
    let summary = hierarchy_summary(&levels);
    if let Some(s) = &a.summary {
        let mut w = sink(Some(s))?;
        let mut text = String::from("k,clusterCount,largestClusterSize\n");
        for l in &summary {
            text.push_str(&format!("{},{},{}\n", l.k, l.cluster_count, l.largest_cluster_size));
        }
        w.write_all(text.as_bytes()).map_err(Error::from).in_file(s)?;
    }
    let result = json!({
        "levels": levels.iter().map(|l| partition_json(l, a.max_members)).collect::<Vec<_>>(),
        "summary": summary,
    });
    let parameters = json!({
        "input": path_str(p),
        "kmax": a.kmax,
        "precision": a.baire.precision,
        "normalize": a.baire.normalize,
    });
    emit_json(a.out.as_deref(), &envelope("baire", None, parameters, result))
}

#[derive(Deserialize)]
struct PartitionFile {
    k: usize,
    clusters: Vec<ClusterFile>,
}

#[derive(Deserialize)]
struct ClusterFile {
    key: String,
    members: Vec<usize>,
}

fn read_partition(path: &Path, n: usize) -> Result<BairePartition, Failure> {
    let file = File::open(path).map_err(Error::from).in_file(path)?;
    let parsed: PartitionFile = serde_json::from_reader(io::BufReader::new(file))
        .map_err(|e| Error::Parse {
            row: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
        .in_file(path)?;
    let clusters = parsed
        .clusters
        .into_iter()
        .map(|c| BaireCluster {
            key: BaireKey(c.key),
            members: c.members,
        })
        .collect();
    BairePartition::from_clusters(parsed.k, n, clusters).in_file(path)
}

fn refine(a: RefineArgs) -> Outcome {
    let p = a.input.as_path();
    let m = normalized_input(p, &a.baire)?;
    let partition = match (&a.partition, a.k) {
        (Some(file), _) => read_partition(file, m.rows())?,
        (None, Some(k)) => baire_partition(&m, k).in_file(p)?,
        (None, None) => unreachable!("clap requires --partition or --k"),
    };
    let report = kmeans_refine(&m, &partition, a.max_iters).in_file(p)?;
    let parameters = json!({
        "input": path_str(p),
        "partition": a.partition.as_ref().map(|f: &PathBuf| path_str(f)),
        "k": partition.level,
        "precision": a.baire.precision,
        "normalize": a.baire.normalize,
        "maxIters": a.max_iters,
    });
    emit_json(a.out.as_deref(), &envelope("refine", None, parameters, json!(report)))
}

fn table1(a: Table1Args) -> Outcome {
    let mut dims = vec![20, 200, 2000, 20_000];
    if a.full {
        dims.push(200_000);
    }
    let families = [Family::Uniform01, Family::HypercubeVertex, Family::GaussianStandard];
    let tol = tolerance(&a.opts);
    let rows = dimensionality_sweep(&families, &dims, a.n, a.replicates, a.opts.seed, a.opts.triangles, tol)?;
    let mut text = String::from("family,d,isoscFrac,equilFrac,umFrac\n");
    for r in &rows {
        text.push_str(&format!("{},{},{},{},{}\n", r.family, r.d, r.isosc_frac, r.equil_frac, r.um_frac));
    }
    let mut w = sink(a.out.as_deref())?;
    w.write_all(text.as_bytes()).map_err(Error::from)?;
    record_csv_run(
        "table1",
        Some(a.opts.seed),
        json!({
            "n": a.n,
            "d": dims,
            "replicates": a.replicates,
            "triangles": a.opts.triangles,
            "tolRadians": tol,
        }),
        a.out.as_deref(),
    )
}
