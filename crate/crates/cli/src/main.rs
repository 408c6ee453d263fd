//! `simpsmote`: oversample labeled CSV files and run the synthetic benchmark.

mod demo;
mod table;

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};
use simplicial_oversampling::eval::{
    generate_synthetic, grid_search_eval, report, EvalMethod, GridConfig, Shape, SyntheticSpec, BASELINE_METHODS,
    VARIANT_METHODS,
};
use simplicial_oversampling::{oversample, Method, SafeLevelFormula, SamplerConfig, SimplexDim, Symmetrize};

use crate::table::LabeledTable;

#[derive(Debug, Parser)]
#[command(
    name = "simpsmote",
    version,
    about = "Simplicial oversampling for imbalanced binary data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Append synthetic minority rows to a labeled CSV file.
    Oversample(OversampleArgs),
    /// Cross-validated comparison of samplers on the synthetic shapes.
    Benchmark(BenchmarkArgs),
    /// Distance from query points to simplicial models of growing dimension.
    DistanceDemo(DemoArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormulaArg {
    Inverse,
    PlusOne,
}

impl From<FormulaArg> for SafeLevelFormula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Inverse => SafeLevelFormula::Inverse,
            FormulaArg::PlusOne => SafeLevelFormula::PlusOne,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymmetrizeArg {
    Union,
    Mutual,
}

impl From<SymmetrizeArg> for Symmetrize {
    fn from(s: SymmetrizeArg) -> Self {
        match s {
            SymmetrizeArg::Union => Symmetrize::Union,
            SymmetrizeArg::Mutual => Symmetrize::Mutual,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Debug, clap::Args)]
struct OversampleArgs {
    #[arg(long, default_value = "simplicial", value_parser = parse_method)]
    method: Method,
    /// Neighborhood size.
    #[arg(short, default_value_t = 5)]
    k: usize,
    /// Maximal simplex dimension, an integer or "max".
    #[arg(short, default_value = "max", value_parser = parse_dim)]
    p: SimplexDim,
    /// Random seed; drawn at random and logged when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "label")]
    label_column: String,
    /// Number of synthetic rows instead of the balancing count.
    #[arg(long)]
    target_count: Option<usize>,
    #[arg(long, value_enum, default_value = "inverse")]
    safelevel_formula: FormulaArg,
    #[arg(long, value_enum, default_value = "union")]
    symmetrize: SymmetrizeArg,
    input: PathBuf,
    output: PathBuf,
}

#[derive(Debug, clap::Args)]
struct BenchmarkArgs {
    /// Comma-separated methods; "imbalanced" is the no-resampling column.
    #[arg(long, value_delimiter = ',', value_parser = parse_eval_method)]
    methods: Option<Vec<EvalMethod>>,
    /// Also evaluate the borderline, safe-level and ADASYN samplers.
    #[arg(long)]
    variants: bool,
    /// Comma-separated shapes: moons, swiss_rolls, g_circle, circles.
    #[arg(long, value_delimiter = ',', value_parser = parse_shape)]
    datasets: Option<Vec<Shape>>,
    #[arg(long, default_value_t = 4)]
    folds: usize,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Neighborhood sizes to search; defaults to 3..=8.
    #[arg(long, value_delimiter = ',')]
    k_grid: Option<Vec<usize>>,
    /// Simplex dimensions to search; defaults to "max".
    #[arg(long, value_delimiter = ',', value_parser = parse_dim)]
    p_grid: Option<Vec<SimplexDim>>,
    #[arg(long, value_enum, default_value = "inverse")]
    safelevel_formula: FormulaArg,
    #[arg(long, value_enum, default_value = "union")]
    symmetrize: SymmetrizeArg,
    /// Directory receiving report.csv and report.txt.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct DemoArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Neighborhood size of the model graph.
    #[arg(short, default_value_t = 6)]
    k: usize,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: simplicial_oversampling::Error| e.to_string())
}

fn parse_dim(s: &str) -> Result<SimplexDim, String> {
    s.parse().map_err(|e: simplicial_oversampling::Error| e.to_string())
}

fn parse_eval_method(s: &str) -> Result<EvalMethod, String> {
    s.parse().map_err(|e: simplicial_oversampling::Error| e.to_string())
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    s.parse().map_err(|e: simplicial_oversampling::Error| e.to_string())
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random();
        info!("no --seed given, using seed {s}");
        s
    })
}

fn cmd_oversample(args: OversampleArgs) -> Result<()> {
    let cfg = SamplerConfig {
        method: args.method,
        k: args.k,
        p: args.p,
        seed: resolve_seed(args.seed),
        target_count: args.target_count,
        safelevel_formula: args.safelevel_formula.into(),
        symmetrize: args.symmetrize.into(),
        ..SamplerConfig::default()
    };
    cfg.validate()?;

    let file = File::open(&args.input).with_context(|| format!("opening {}", args.input.display()))?;
    let table = LabeledTable::read(BufReader::new(file), &args.label_column)
        .with_context(|| format!("reading {}", args.input.display()))?;
    info!(
        "{} rows, {} features; minority {:?} ({}), majority {:?} ({})",
        table.dataset.len(),
        table.dataset.dim(),
        table.minority_label,
        table.dataset.n_minority(),
        table.majority_label,
        table.dataset.n_majority()
    );

    let batch = oversample(&table.dataset, &cfg)?;
    if batch.notes.k_clamped() {
        warn!(
            "k = {} clamped to {:?} by the minority class size",
            batch.notes.k_requested, batch.notes.k_used
        );
    }
    if let Some(fallback) = batch.notes.fallback {
        warn!("sampler fell back to {fallback:?}");
    }

    let out = File::create(&args.output).with_context(|| format!("creating {}", args.output.display()))?;
    let mut out = BufWriter::new(out);
    table.write(&mut out, batch.points.view())?;
    out.flush()?;
    info!("wrote {} synthetic rows to {}", batch.len(), args.output.display());
    Ok(())
}

fn cmd_benchmark(args: BenchmarkArgs) -> Result<()> {
    let seed = resolve_seed(args.seed);
    let mut methods = args.methods.unwrap_or_else(|| BASELINE_METHODS.to_vec());
    if args.variants {
        methods.extend(
            VARIANT_METHODS
                .iter()
                .filter(|m| !methods.contains(m))
                .collect::<Vec<_>>(),
        );
    }
    if methods.is_empty() {
        bail!("no methods selected");
    }
    let shapes = args.datasets.unwrap_or_else(|| Shape::ALL.to_vec());

    let mut grid = GridConfig::synthetic(seed);
    grid.folds = args.folds;
    grid.repeats = args.repeats;
    grid.safelevel_formula = args.safelevel_formula.into();
    grid.symmetrize = args.symmetrize.into();
    if let Some(k) = args.k_grid {
        grid.k_grid = k;
    }
    if let Some(p) = args.p_grid {
        grid.p_grid = p;
    }

    let datasets: Vec<_> = shapes
        .iter()
        .map(|&s| (s.name().to_string(), generate_synthetic(&SyntheticSpec::new(s, seed))))
        .collect();
    let result = grid_search_eval(&datasets, &methods, &grid)?;
    let csv = report::to_csv(&result)?;
    let text = report::to_text(&result)?;
    for row in result.rows.iter().filter(|r| !r.diagnostics.is_empty()) {
        warn!(
            "{} / {}: {} fold diagnostics",
            row.dataset,
            row.method,
            row.diagnostics.len()
        );
    }

    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        fs::write(dir.join("report.csv"), &csv)?;
        fs::write(dir.join("report.txt"), &text)?;
        info!("reports written to {}", dir.display());
    }
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(match args.format {
        Format::Csv => csv.as_bytes(),
        Format::Text => text.as_bytes(),
    })?;
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let result = match Cli::parse().command {
        Command::Oversample(args) => cmd_oversample(args),
        Command::Benchmark(args) => cmd_benchmark(args),
        Command::DistanceDemo(args) => demo::run(resolve_seed(args.seed), args.k, &mut std::io::stdout().lock()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
