//! Command-line front end. All logic lives in the library; this binary
//! parses flags, dispatches, and prints JSON (or CSV for coverage tables).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::Ratio;
use serde::Serialize;

use hypermotif::count::auto_tuple_count;
use hypermotif::experiments::{
    compare_networks, coverage_csv, run_coverage_experiment, run_infer, stability_report,
    CompareOptions, CoverageSpec, TruthSpec,
};
use hypermotif::generator::GeneratorModel;
use hypermotif::inference::SampleStatistic;
use hypermotif::pattern::ColorlessPattern;
use hypermotif::seed::{derive_seed, stream};
use hypermotif::stability::{Decay, Rational};
use hypermotif::statistic::{Statistic, TupleCount};
use hypermotif::{BuiltinPattern, Error, HypergraphSample, Result};

#[derive(Parser)]
#[command(name = "hypermotif", version, about = "Subgraph statistics for hyperedge-sampled networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a subgraph statistic on a hyperedge-list file
    Count(CountArgs),
    /// Statistic plus a subsampling-based confidence interval
    Infer(InferArgs),
    /// Compare two networks via ratio confidence intervals
    Compare(CompareArgs),
    /// Write a synthetic hyperedge sample
    Simulate(SimulateArgs),
    /// Empirical coverage of the subsampling intervals on the synthetic model
    Coverage(CoverageArgs),
    /// Deletion-stability exponent report
    Stability(StabilityArgs),
}

#[derive(Args)]
struct StatisticFlags {
    /// Pattern name: triangle1|triangle2|triangle3|twostar1|twostar2 for
    /// colored statistics, triangle|twostar for colorless/binarized ones
    #[arg(long)]
    pattern: Option<String>,

    /// Number of colors for colorless frequencies
    #[arg(long)]
    r: Option<usize>,

    /// Drop embeddings touching any vertex of hyperdegree below this
    #[arg(long = "filter-d")]
    filter_d: Option<u32>,

    /// Tuple budget: an integer, or `auto` for ceil(m^1.1); omit for the
    /// complete estimator
    #[arg(long)]
    incomplete: Option<String>,

    /// Count distinct k-vertex hyperedges instead of a pattern statistic
    #[arg(long = "unique-k")]
    unique_k: Option<usize>,

    /// With a colorless pattern: count copies in the binarized graph
    #[arg(long, default_value_t = false)]
    binarized: bool,
}

impl StatisticFlags {
    fn tuples(&self) -> Result<TupleCount> {
        match self.incomplete.as_deref() {
            None => Ok(TupleCount::All),
            Some("auto") => Ok(TupleCount::Power(1.1)),
            Some(text) => text
                .parse::<u64>()
                .map(TupleCount::Fixed)
                .map_err(|_| Error::InvalidArgument(format!("--incomplete must be `auto` or an integer, got `{text}`"))),
        }
    }

    fn resolve(&self) -> Result<(Statistic, String)> {
        if let Some(k) = self.unique_k {
            return Ok((Statistic::UniqueK { k }, format!("unique-{k}")));
        }
        let tuples = self.tuples()?;
        let name = self
            .pattern
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("give --pattern or --unique-k".into()))?;
        match name {
            "triangle" | "twostar" => {
                let shape = if name == "triangle" {
                    ColorlessPattern::triangle()
                } else {
                    ColorlessPattern::two_star()
                };
                if self.binarized {
                    return Ok((
                        Statistic::BinarizedCount {
                            name: format!("binarized_{name}"),
                            shape,
                        },
                        name.to_string(),
                    ));
                }
                let r = self.r.ok_or_else(|| {
                    Error::InvalidArgument(format!("colorless pattern `{name}` needs --r (or --binarized)"))
                })?;
                Ok((
                    Statistic::colorless(&format!("colorless_{name}_r{r}"), shape, r, tuples),
                    name.to_string(),
                ))
            }
            _ => {
                let builtin: BuiltinPattern = name.parse()?;
                let stat = match self.filter_d {
                    None => Statistic::colored(builtin, tuples),
                    Some(d) => Statistic::colored_filtered(builtin, d, tuples),
                };
                Ok((stat, name.to_string()))
            }
        }
    }
}

#[derive(Args)]
struct CountArgs {
    /// Hyperedge-list file
    input: PathBuf,

    #[command(flatten)]
    stat: StatisticFlags,

    /// Seed for incomplete tuple draws
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Also write the JSON result to this path
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Serialize)]
struct CountReport {
    statistic: String,
    pattern: String,
    m: usize,
    estimate: f64,
    design: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    tuples: Option<u64>,
    seed: u64,
}

#[derive(Args)]
struct InferArgs {
    input: PathBuf,

    #[command(flatten)]
    stat: StatisticFlags,

    /// Confidence level
    #[arg(long, default_value_t = 0.95)]
    level: f64,

    /// Multiplier in the subsample size b = C·m/log m
    #[arg(long = "subsample-C", default_value_t = 1.5)]
    subsample_c: f64,

    /// Number of subsamples
    #[arg(long, default_value_t = 1000)]
    subsamples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// First hyperedge-list file (ratio numerator)
    input_a: PathBuf,
    /// Second hyperedge-list file (ratio denominator)
    input_b: PathBuf,

    /// Fraction reserved for statistic selection; inference uses the rest
    #[arg(long)]
    split: Option<f64>,

    #[arg(long = "split-seed", default_value_t = 0)]
    split_seed: u64,

    #[arg(long, default_value_t = 0.95)]
    level: f64,

    #[arg(long = "subsample-C", default_value_t = 1.5)]
    subsample_c: f64,

    #[arg(long, default_value_t = 1000)]
    subsamples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Output hyperedge-list file
    #[arg(long)]
    out: PathBuf,

    /// Model spec JSON file; flags below are used when absent
    #[arg(long)]
    model: Option<PathBuf>,

    /// Vertex-weight decay exponent (weights j^-alpha)
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,

    #[arg(long = "n-vertices", default_value_t = 1000)]
    n_vertices: usize,

    /// Number of hyperedges to generate
    #[arg(long)]
    m: usize,

    /// Overrides the model's seed when given
    #[arg(long)]
    seed: Option<u64>,

    /// Also write the id ↔ label map here
    #[arg(long = "id-map")]
    id_map: Option<PathBuf>,
}

#[derive(Args)]
struct CoverageArgs {
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,

    #[arg(long = "n-vertices", default_value_t = 1000)]
    n_vertices: usize,

    /// Sample size per replication
    #[arg(long, default_value_t = 500)]
    m: usize,

    /// Comma-separated subsample multipliers
    #[arg(long = "c-grid", default_value = "1.0,1.4,2.0", value_delimiter = ',')]
    c_grid: Vec<f64>,

    #[arg(long, default_value_t = 200)]
    reps: usize,

    #[arg(long, default_value_t = 0.95)]
    level: f64,

    #[arg(long, default_value_t = 1000)]
    subsamples: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Statistic under test
    #[arg(long, default_value = "twostar2", value_parser = ["twostar2", "triangle-colorless"])]
    statistic: String,

    /// Calibration size for the plug-in truth
    #[arg(long = "truth-m", default_value_t = 1_000_000)]
    truth_m: usize,

    #[arg(long = "truth-seed", default_value_t = 777)]
    truth_seed: u64,

    /// Skip calibration and use this value as the truth
    #[arg(long)]
    truth: Option<f64>,

    /// Write the coverage table as CSV here
    #[arg(long)]
    csv: Option<PathBuf>,

    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct StabilityArgs {
    /// Builtin pattern name
    #[arg(long)]
    pattern: String,

    /// Weight-decay parameter
    #[arg(long)]
    alpha: f64,

    /// polynomial | exponential
    #[arg(long, default_value = "polynomial")]
    decay: String,

    #[arg(long)]
    json: Option<PathBuf>,
}

fn emit<T: Serialize>(value: &T, json_path: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    println!("{text}");
    if let Some(path) = json_path {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}

fn parse_alpha(alpha: f64) -> Result<Rational> {
    Ratio::approximate_float(alpha)
        .ok_or_else(|| Error::InvalidArgument(format!("cannot represent alpha = {alpha} as a rational")))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Count(args) => {
            let sample = HypergraphSample::read_path(&args.input)?;
            let (stat, pattern_name) = args.stat.resolve()?;
            let estimate = stat.eval(sample.edges(), derive_seed(args.seed, stream::TUPLES, 0))?;
            let (design, tuples) = match args.stat.tuples()? {
                TupleCount::All => ("complete".to_string(), None),
                TupleCount::Fixed(n) => ("incomplete".to_string(), Some(n)),
                TupleCount::Power(_) => (
                    "incomplete".to_string(),
                    Some(auto_tuple_count(sample.len())),
                ),
            };
            emit(
                &CountReport {
                    statistic: stat.label(),
                    pattern: pattern_name,
                    m: sample.len(),
                    estimate,
                    design,
                    tuples,
                    seed: args.seed,
                },
                args.json.as_ref(),
            )
        }
        Command::Infer(args) => {
            let sample = HypergraphSample::read_path(&args.input)?;
            let (stat, pattern_name) = args.stat.resolve()?;
            let report = run_infer(
                sample.edges(),
                &stat,
                &pattern_name,
                args.level,
                args.subsample_c,
                args.subsamples,
                args.seed,
            )?;
            emit(&report, args.json.as_ref())
        }
        Command::Compare(args) => {
            let a = HypergraphSample::read_path(&args.input_a)?;
            let b = HypergraphSample::read_path(&args.input_b)?;
            let report = compare_networks(
                a.edges(),
                b.edges(),
                &CompareOptions {
                    split: args.split,
                    split_seed: args.split_seed,
                    level: args.level,
                    c: args.subsample_c,
                    n_sub: args.subsamples,
                    seed: args.seed,
                },
            )?;
            emit(&report, args.json.as_ref())
        }
        Command::Simulate(args) => {
            let mut model = match &args.model {
                Some(path) => GeneratorModel::from_json(&std::fs::read_to_string(path)?)?,
                None => GeneratorModel::power_law(args.alpha, args.n_vertices, 0),
            };
            if let Some(seed) = args.seed {
                model.seed = seed;
            }
            let sample = model.generate(args.m)?;
            let mut out = Vec::new();
            sample.write_edge_list(&mut out)?;
            std::fs::write(&args.out, out)?;
            if let Some(path) = &args.id_map {
                let mut map = Vec::new();
                sample.write_id_map(&mut map)?;
                std::fs::write(path, map)?;
            }
            eprintln!(
                "wrote {} hyperedges over {} vertices to {}",
                sample.len(),
                sample.n_vertices(),
                args.out.display()
            );
            Ok(())
        }
        Command::Coverage(args) => {
            let statistic = match args.statistic.as_str() {
                "twostar2" => Statistic::colored(BuiltinPattern::TwoStar2, TupleCount::Power(1.1)),
                "triangle-colorless" => Statistic::colorless(
                    "colorless_triangle_r3",
                    ColorlessPattern::triangle(),
                    3,
                    TupleCount::Power(1.1),
                ),
                other => return Err(Error::InvalidArgument(format!("unknown statistic `{other}`"))),
            };
            let truth = match args.truth {
                Some(value) => TruthSpec::Known(value),
                None => TruthSpec::Calibrate {
                    m: args.truth_m,
                    seed: args.truth_seed,
                },
            };
            let spec = CoverageSpec {
                model: GeneratorModel::power_law(args.alpha, args.n_vertices, args.seed),
                m: args.m,
                c_grid: args.c_grid.clone(),
                reps: args.reps,
                level: args.level,
                n_sub: args.subsamples,
                seed: args.seed,
                statistic,
                truth,
            };
            let report = run_coverage_experiment(&spec)?;
            if let Some(path) = &args.csv {
                std::fs::write(path, coverage_csv(&report))?;
            }
            emit(&report, args.json.as_ref())
        }
        Command::Stability(args) => {
            let builtin: BuiltinPattern = args.pattern.parse()?;
            let decay: Decay = args.decay.parse()?;
            let report = stability_report(builtin, parse_alpha(args.alpha)?, decay)?;
            emit(&report, args.json.as_ref())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}
