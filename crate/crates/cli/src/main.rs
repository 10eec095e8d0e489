//! `umtool`: ultrametricity measures, recodings, fingerprints and Baire
//! clustering over CSV files.

mod commands;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use failure::Failure;

#[derive(Parser)]
#[command(name = "umtool", version, about = "Ultrametricity measures and Baire clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Write a synthetic point cloud as CSV.
    Generate(GenerateArgs),
    /// Triangle ultrametricity of a point cloud or distance matrix.
    Measure(MeasureArgs),
    /// Doubling, rank coding or column normalization of a table.
    Recode(RecodeArgs),
    /// Correspondence-analysis row coordinates of a count table.
    Ca(CaArgs),
    /// Window ultrametricity fingerprint of a series.
    Tsfp(TsfpArgs),
    /// Nested digit-prefix partitions of a matrix with values in [0, 1).
    Baire(BaireArgs),
    /// k-means refinement seeded by a Baire partition.
    Refine(RefineArgs),
    /// Ultrametricity of i.i.d. clouds across dimensions.
    Table1(Table1Args),
}

#[derive(Args)]
pub struct MeasureOpts {
    /// Triangles sampled when exhaustive enumeration would exceed this.
    #[arg(long, default_value_t = 300)]
    pub triangles: usize,
    /// Angle tolerance in degrees; the default is 0.0349 rad.
    #[arg(long)]
    pub tol_degrees: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Uniform,
    Hypercube,
    Gaussian,
    Mixture3,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Distance between mixture centers, in component standard deviations.
    #[arg(long, default_value_t = 10.0)]
    pub separation: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct MeasureArgs {
    pub input: PathBuf,
    /// Read the input as a distance matrix instead of a point cloud.
    #[arg(long)]
    pub distance: bool,
    /// Add this constant to every off-diagonal distance first.
    #[arg(long)]
    pub shift: Option<f64>,
    /// Also report the subdominant-ultrametric degree.
    #[arg(long)]
    pub rammal: bool,
    /// Also report Lerman's H over the same number of triplets.
    #[arg(long)]
    pub lerman: bool,
    #[command(flatten)]
    pub opts: MeasureOpts,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RecodeMode {
    Double,
    RankBoolean,
    Colnorm,
}

#[derive(Args)]
pub struct RecodeArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub mode: RecodeMode,
    /// Upper bound for doubling (1 for presence/absence, 100 for percentages).
    #[arg(long)]
    pub max: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CaArgs {
    pub input: PathBuf,
    /// Row coordinates CSV; eigenvalues go to stdout as JSON.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct TsfpArgs {
    pub input: PathBuf,
    /// Window lengths.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    pub m: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BaireOpts {
    /// Digits kept per value.
    #[arg(long, default_value_t = 4)]
    pub precision: usize,
    /// Column-normalize the input before clustering.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Args)]
pub struct BaireArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    #[command(flatten)]
    pub baire: BaireOpts,
    /// Omit member lists of clusters larger than this.
    #[arg(long)]
    pub max_members: Option<usize>,
    /// Per-level cluster counts as CSV.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct RefineArgs {
    pub input: PathBuf,
    /// Partition JSON as written by `baire` for a single level.
    #[arg(long, conflicts_with = "k", required_unless_present = "k")]
    pub partition: Option<PathBuf>,
    /// Build the starting partition at this digit level.
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub baire: BaireOpts,
    #[arg(long, default_value_t = 100)]
    pub max_iters: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct Table1Args {
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub replicates: usize,
    /// Add d = 200000 to the sweep.
    #[arg(long)]
    pub full: bool,
    #[command(flatten)]
    pub opts: MeasureOpts,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(f.exit_code())
        }
    }
}

pub type Outcome = Result<(), Failure>;
