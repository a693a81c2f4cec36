//! `unn` command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or parse error, 3 dataset
//! too large for exhaustive search.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::bench;
use crate::datasets::{generate, GenSpec, Shape, DEFAULT_NOISE_SIGMA};
use crate::embed::{embed, Criterion, EmbedConfig, InsertionOrder, Strategy};
use crate::error::UnnError;
use crate::io::{load_csv, load_ordering, save_csv, save_ordering};
use crate::knn::dsre;
use crate::oracle::{brute_force, DEFAULT_MAX_N};
use crate::report::{compare, plot_embedding, save_plot};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_SIZE_CAP: i32 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<UnnError> for CliError {
    fn from(err: UnnError) -> Self {
        let code = match err {
            UnnError::SizeCap { .. } => EXIT_SIZE_CAP,
            _ => EXIT_DATA,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self {
            code: EXIT_DATA,
            message: err.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "unn", version, about = "Unsupervised KNN regression on a 1-D latent line")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic S-shaped dataset as CSV
    Generate(GenerateArgs),
    /// Embed a dataset and write its latent ordering
    Embed(EmbedArgs),
    /// Print the DSRE of a dataset under a given ordering
    Dsre(DsreArgs),
    /// Exhaustive search for the DSRE-optimal ordering of a small dataset
    Oracle(OracleArgs),
    /// Write the init / UNN 1 / UNN 2 DSRE table for several K
    Compare(CompareArgs),
    /// Write an SVG scatter plot colored by latent slot
    Plot(PlotArgs),
    /// Time both strategies and count their primitive operations
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ShapeArg {
    S2d,
    S3d,
    S3dHole,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::S2d => Shape::S2d,
            ShapeArg::S3d => Shape::S3d,
            ShapeArg::S3dHole => Shape::S3dHole,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Unn1,
    Unn2,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Unn1 => Strategy::Unn1,
            StrategyArg::Unn2 => Strategy::Unn2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CriterionArg {
    Pointwise,
    FullDsre,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Pointwise => Criterion::Pointwise,
            CriterionArg::FullDsre => Criterion::FullDsre,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Dataset,
    Shuffled,
}

fn neighborhood(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(k) if k >= 1 => Ok(k),
        _ => Err(format!("'{s}' is not a neighborhood size >= 1")),
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    shape: ShapeArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = DEFAULT_NOISE_SIGMA)]
    sigma: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = neighborhood)]
    k: usize,
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "pointwise")]
    criterion: CriterionArg,
    #[arg(long, value_enum, default_value = "dataset")]
    order: OrderArg,
    /// Required with `--order shuffled`, rejected otherwise
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DsreArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    ordering: PathBuf,
    #[arg(long, value_parser = neighborhood)]
    k: usize,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = neighborhood)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    /// Also write the optimal ordering as CSV
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_delimiter = ',', required = true, value_parser = neighborhood)]
    ks: Vec<usize>,
    #[arg(long)]
    out: PathBuf,
    /// Dataset column value; defaults to the input file stem
    #[arg(long)]
    label: Option<String>,
    /// Generation seed of the input, echoed in the summary
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    ordering: PathBuf,
    /// Two or three data axes, e.g. `0,1` or `0,1,2`
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    dims: Vec<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    strategy: StrategyArg,
    #[arg(long, value_parser = neighborhood)]
    k: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    #[arg(long)]
    seed: u64,
}

/// Parses `args` (including the program name) and runs the subcommand,
/// writing human-readable results to `out`.
pub fn run<I, T, W>(args: I, out: &mut W) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            write!(out, "{err}")?;
            return Ok(());
        }
        Err(err) => return Err(CliError::usage(err.to_string())),
    };

    match cli.command {
        Command::Generate(a) => {
            let spec = GenSpec::new(a.shape.into(), a.n, a.seed).with_noise(a.sigma);
            let data = generate(&spec)?;
            save_csv(&data, &a.out)?;
            writeln!(out, "wrote {} patterns ({}-d) to {}", data.len(), data.dim(), a.out.display())?;
        }
        Command::Embed(a) => {
            let order = match (a.order, a.seed) {
                (OrderArg::Dataset, None) => InsertionOrder::Dataset,
                (OrderArg::Shuffled, Some(seed)) => InsertionOrder::Shuffled { seed },
                (OrderArg::Dataset, Some(_)) => {
                    return Err(CliError::usage("--seed only applies to --order shuffled"))
                }
                (OrderArg::Shuffled, None) => {
                    return Err(CliError::usage("--order shuffled requires --seed"))
                }
            };
            let data = load_csv(&a.input)?;
            let config = EmbedConfig::new(a.k, a.strategy.into())
                .with_criterion(a.criterion.into())
                .with_order(order);
            let result = embed(&data, &config)?;
            save_ordering(&result.ordering, &a.out)?;
            writeln!(out, "dsre {}", result.final_dsre)?;
        }
        Command::Dsre(a) => {
            let data = load_csv(&a.input)?;
            let ordering = load_ordering(&a.ordering)?;
            writeln!(out, "dsre {}", dsre(&ordering, &data, a.k)?)?;
        }
        Command::Oracle(a) => {
            let data = load_csv(&a.input)?;
            let best = brute_force(&data, a.k, a.max_n)?;
            let order: Vec<String> = best.best_ordering.order().iter().map(usize::to_string).collect();
            writeln!(out, "dsre {}", best.best_dsre)?;
            writeln!(out, "evaluated {}", best.evaluated)?;
            writeln!(out, "ordering {}", order.join(" "))?;
            if let Some(path) = &a.out {
                save_ordering(&best.best_ordering, path)?;
            }
        }
        Command::Compare(a) => {
            let data = load_csv(&a.input)?;
            let label = a.label.unwrap_or_else(|| stem(&a.input));
            let report = compare(&label, &data, &a.ks, a.seed)?;
            report.save_csv(&a.out)?;
            write!(out, "{}", report.to_csv())?;
        }
        Command::Plot(a) => {
            let data = load_csv(&a.input)?;
            let ordering = load_ordering(&a.ordering)?;
            let svg = plot_embedding(&data, &ordering, &a.dims)?;
            save_plot(&svg, &a.out)?;
            writeln!(out, "wrote {}", a.out.display())?;
        }
        Command::Bench(a) => {
            if a.d == 0 || a.ns.iter().any(|&n| n < 2) {
                return Err(CliError::usage("bench needs --d >= 1 and every N >= 2"));
            }
            let strategy: Strategy = a.strategy.into();
            writeln!(out, "strategy,n,k,d,wall_ms,distance_evals,reconstruction_evals,work,last_step_work")?;
            for row in bench(strategy, a.k, a.d, &a.ns, a.seed)? {
                writeln!(
                    out,
                    "{:?},{},{},{},{:.3},{},{},{},{}",
                    strategy,
                    row.n,
                    a.k,
                    a.d,
                    row.wall.as_secs_f64() * 1e3,
                    row.total.distance_evals,
                    row.total.reconstruction_evals,
                    row.total.work,
                    row.last_step_work
                )?;
            }
        }
    }
    Ok(())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().replace([',', '\n', '\r'], "_"))
        .unwrap_or_else(|| "data".to_string())
}
