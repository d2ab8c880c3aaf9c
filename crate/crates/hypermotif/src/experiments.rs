//! Experiment drivers and report schemas: point estimation with a
//! subsampling interval, empirical coverage runs on the synthetic model,
//! two-network comparison via ratio intervals, and stability reports.
//!
//! Every driver is deterministic given its seed: replications, subsamples,
//! and tuple draws all derive child seeds by index, and parallel loops
//! collect results by index before any floating-point reduction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{GeneratorModel, ModelTruth};
use crate::inference::{normal_ci, ratio_ci, subsample_covariance, SampleStatistic, SubsampleConfig};
use crate::pattern::{structure_stats, BuiltinPattern, PatternStats};
use crate::sample::Hyperedge;
use crate::seed::{derive_seed, stream};
use crate::stability::{beta_exponent, triangle_exponent, Decay, DeletionExponent, Rational, TriangleType};
use crate::statistic::{Statistic, TupleCount};

// ---------------------------------------------------------------------------
// Point estimate + interval
// ---------------------------------------------------------------------------

/// Result JSON for `infer`.
#[derive(Clone, Debug, Serialize)]
pub struct InferReport {
    pub statistic: String,
    pub pattern: String,
    pub m: usize,
    pub estimate: f64,
    pub lambda_hat: f64,
    pub ci: [f64; 2],
    pub level: f64,
    pub config: SubsampleSummary,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SubsampleSummary {
    pub b: usize,
    #[serde(rename = "N_sub")]
    pub n_sub: usize,
    #[serde(rename = "C")]
    pub c: f64,
    pub seed: u64,
}

/// Point estimate with a normal interval from the subsampling variance.
pub fn run_infer(
    edges: &[Hyperedge],
    statistic: &Statistic,
    pattern_name: &str,
    level: f64,
    c: f64,
    n_sub: usize,
    seed: u64,
) -> Result<InferReport> {
    let m = edges.len();
    let point = statistic.eval(edges, derive_seed(seed, stream::TUPLES, 0))?;
    let config = SubsampleConfig::from_c(m, c, statistic.order(), n_sub, seed)?;
    let cov = subsample_covariance(edges, &[statistic], &config)?;
    let lambda = cov.var(0);
    let ci = normal_ci(point, lambda, m, level)?;
    Ok(InferReport {
        statistic: statistic.label(),
        pattern: pattern_name.to_string(),
        m,
        estimate: point,
        lambda_hat: lambda,
        ci: [ci.lo, ci.hi],
        level,
        config: SubsampleSummary {
            b: config.b,
            n_sub: config.n_sub,
            c,
            seed,
        },
    })
}

// ---------------------------------------------------------------------------
// Coverage experiment
// ---------------------------------------------------------------------------

/// Where the reference parameter value comes from.
#[derive(Clone, Debug)]
pub enum TruthSpec {
    /// Plug-in estimate from one large generated sample.
    Calibrate { m: usize, seed: u64 },
    /// Externally supplied value.
    Known(f64),
}

#[derive(Clone, Debug)]
pub struct CoverageSpec {
    pub model: GeneratorModel,
    pub m: usize,
    pub c_grid: Vec<f64>,
    pub reps: usize,
    pub level: f64,
    pub n_sub: usize,
    pub seed: u64,
    pub statistic: Statistic,
    pub truth: TruthSpec,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoverageCell {
    pub m: usize,
    #[serde(rename = "C")]
    pub c: f64,
    pub b: usize,
    pub coverage: f64,
    pub reps: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub statistic: String,
    pub level: f64,
    pub truth: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibration: Option<ModelTruth>,
    pub cells: Vec<CoverageCell>,
}

/// Plug-in truth from one calibration run of `m` hyperedges.
pub fn calibrate_truth(
    model: &GeneratorModel,
    statistic: &Statistic,
    m: usize,
    seed: u64,
) -> Result<ModelTruth> {
    let sample = model.generate_seeded(m, seed)?;
    let value = statistic.eval(sample.edges(), derive_seed(seed, stream::TUPLES, 0))?;
    Ok(ModelTruth {
        statistic: statistic.label(),
        value,
        calibration_m: m,
        seed,
    })
}

/// For each multiplier C: generate `reps` samples, estimate the statistic,
/// build a subsampling interval, and record how often it covers the truth.
pub fn run_coverage_experiment(spec: &CoverageSpec) -> Result<CoverageReport> {
    if spec.reps == 0 {
        return Err(Error::InvalidConfig("need at least one replication".into()));
    }
    let r = spec.statistic.order();
    for &c in &spec.c_grid {
        let b = ((c * spec.m as f64) / (spec.m as f64).ln()).floor() as usize;
        if b < r {
            return Err(Error::InvalidConfig(format!(
                "C = {c} gives subsample size {b} below the statistic order {r}"
            )));
        }
    }

    let (truth, calibration) = match spec.truth {
        TruthSpec::Known(value) => (value, None),
        TruthSpec::Calibrate { m, seed } => {
            let t = calibrate_truth(&spec.model, &spec.statistic, m, seed)?;
            (t.value, Some(t))
        }
    };

    let mut cells = Vec::with_capacity(spec.c_grid.len());
    for (cell_idx, &c) in spec.c_grid.iter().enumerate() {
        let covered: Vec<bool> = (0..spec.reps)
            .into_par_iter()
            .map(|rep| -> Result<bool> {
                let rep_seed = derive_seed(
                    spec.seed,
                    stream::REPLICATION,
                    (cell_idx * spec.reps + rep) as u64,
                );
                let sample = spec.model.generate_seeded(spec.m, rep_seed)?;
                let edges = sample.edges();
                let point = spec
                    .statistic
                    .eval(edges, derive_seed(rep_seed, stream::TUPLES, 0))?;
                let config = SubsampleConfig::from_c(spec.m, c, r, spec.n_sub, rep_seed)?;
                let cov = subsample_covariance(edges, &[&spec.statistic], &config)?;
                let ci = normal_ci(point, cov.var(0), spec.m, spec.level)?;
                Ok(ci.covers(truth))
            })
            .collect::<Result<_>>()?;
        let b = SubsampleConfig::from_c(spec.m, c, r, spec.n_sub, 0)?.b;
        cells.push(CoverageCell {
            m: spec.m,
            c,
            b,
            coverage: covered.iter().filter(|&&x| x).count() as f64 / spec.reps as f64,
            reps: spec.reps,
            seed: spec.seed,
        });
    }

    Ok(CoverageReport {
        statistic: spec.statistic.label(),
        level: spec.level,
        truth,
        calibration,
        cells,
    })
}

/// CSV rendering with header `m,C,coverage,reps,seed`.
pub fn coverage_csv(report: &CoverageReport) -> String {
    let mut out = String::from("m,C,coverage,reps,seed\n");
    for cell in &report.cells {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            cell.m, cell.c, cell.coverage, cell.reps, cell.seed
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Two-network comparison
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug)]
pub struct CompareOptions {
    /// Fraction held out for statistic selection; inference runs on the
    /// rest. `None` uses every hyperedge.
    pub split: Option<f64>,
    pub split_seed: u64,
    pub level: f64,
    pub c: f64,
    pub n_sub: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareColumn {
    pub statistic: String,
    pub estimates: [f64; 2],
    pub ratio: f64,
    pub ci: [f64; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub m_total: [usize; 2],
    pub m_test: [usize; 2],
    pub level: f64,
    pub columns: Vec<CompareColumn>,
    pub config: CompareConfig,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CompareConfig {
    pub split: Option<f64>,
    pub split_seed: u64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "N_sub")]
    pub n_sub: usize,
    pub seed: u64,
}

/// Split off `fraction` of the hyperedges (selection set) uniformly at
/// random; returns `(selection, inference)` keeping original order.
pub fn split_edges(edges: &[Hyperedge], fraction: f64, seed: u64) -> Result<(Vec<Hyperedge>, Vec<Hyperedge>)> {
    if !(0.0..1.0).contains(&fraction) {
        return Err(Error::InvalidArgument(format!(
            "split fraction must be in [0, 1), got {fraction}"
        )));
    }
    let m = edges.len();
    let k = (fraction * m as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_idx: Vec<usize> = rand::seq::index::sample(&mut rng, m, k).into_vec();
    train_idx.sort_unstable();
    let mut in_train = vec![false; m];
    for &i in &train_idx {
        in_train[i] = true;
    }
    let train = train_idx.iter().map(|&i| edges[i].clone()).collect();
    let test = edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| !in_train[i])
        .map(|(_, e)| e.clone())
        .collect();
    Ok((train, test))
}

/// The four comparison statistics: a colored two-star frequency, the
/// hypergraph-aware clustering coefficient, and their binarized baselines.
fn comparison_statistics(tuples: TupleCount) -> [Statistic; 4] {
    [
        Statistic::colored(BuiltinPattern::TwoStar2, tuples),
        Statistic::type2_clustering(tuples),
        Statistic::binarized_twostar_density(),
        Statistic::binarized_clustering(),
    ]
}

/// Compare two networks: per-network subsampling variances, then
/// delta-method intervals for the ratios (networks treated as independent,
/// so the cross covariance is zero).
pub fn compare_networks(a: &[Hyperedge], b: &[Hyperedge], opts: &CompareOptions) -> Result<CompareReport> {
    // Subsample summaries use the heavier b^1.5 tuple budget; full-sample
    // point estimates use the standard m^1.1.
    let point_stats = comparison_statistics(TupleCount::Power(1.1));
    let sub_stats = comparison_statistics(TupleCount::Power(1.5));

    let networks = [a, b];
    let mut m_total = [0usize; 2];
    let mut m_test = [0usize; 2];
    let mut points = [[0f64; 4]; 2];
    let mut variances = [[0f64; 4]; 2];

    for (i, net) in networks.iter().enumerate() {
        m_total[i] = net.len();
        let test: Vec<Hyperedge> = match opts.split {
            Some(fraction) => {
                split_edges(net, fraction, derive_seed(opts.split_seed, stream::SPLIT, i as u64))?.1
            }
            None => net.to_vec(),
        };
        m_test[i] = test.len();
        let net_seed = derive_seed(opts.seed, stream::REPLICATION, i as u64);
        let point_seed = derive_seed(net_seed, stream::TUPLES, 0);
        for (k, stat) in point_stats.iter().enumerate() {
            points[i][k] = stat.eval(&test, point_seed)?;
        }
        let config = SubsampleConfig::from_c(test.len(), opts.c, 2, opts.n_sub, net_seed)?;
        let refs: Vec<&dyn SampleStatistic> = sub_stats.iter().map(|s| s as &dyn SampleStatistic).collect();
        let cov = subsample_covariance(&test, &refs, &config)?;
        for (k, slot) in variances[i].iter_mut().enumerate() {
            *slot = cov.var(k) / m_test[i] as f64;
        }
    }

    let mut columns = Vec::with_capacity(4);
    for (k, stat) in point_stats.iter().enumerate() {
        let ci = ratio_ci(
            (points[0][k], variances[0][k]),
            (points[1][k], variances[1][k]),
            0.0,
            opts.level,
        )?;
        columns.push(CompareColumn {
            statistic: stat.label(),
            estimates: [points[0][k], points[1][k]],
            ratio: ci.point,
            ci: [ci.lo, ci.hi],
        });
    }

    Ok(CompareReport {
        m_total,
        m_test,
        level: opts.level,
        columns,
        config: CompareConfig {
            split: opts.split,
            split_seed: opts.split_seed,
            c: opts.c,
            n_sub: opts.n_sub,
            seed: opts.seed,
        },
    })
}

// ---------------------------------------------------------------------------
// Stability report
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct StabilityTermJson {
    pub name: String,
    pub value: Option<f64>,
    pub exact: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityBlock {
    pub note: String,
    pub beta: Option<f64>,
    pub safe_d_exponent: Option<f64>,
    pub terms: Vec<StabilityTermJson>,
}

/// Stability JSON: pinned keys `pattern`, `alpha`, `decay`, `beta`,
/// `safe_d_exponent`, `terms`, plus a reference block when the published
/// structural constants differ from the literal ones, and the triangle
/// filter threshold where one exists.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    pub pattern: String,
    pub alpha: f64,
    pub decay: Decay,
    pub beta: Option<f64>,
    pub safe_d_exponent: Option<f64>,
    pub terms: Vec<StabilityTermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<StabilityBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter_exponent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter_exponent_exact: Option<String>,
}

fn rational_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

fn terms_json(exp: &DeletionExponent) -> Vec<StabilityTermJson> {
    exp.terms
        .iter()
        .map(|t| StabilityTermJson {
            name: t.name.clone(),
            value: t.value.map(rational_f64),
            exact: t.value.map(|q| q.to_string()),
        })
        .collect()
}

/// Build the stability report for a builtin pattern.
///
/// Rainbow patterns (triangle3, twostar2) get the deletion exponent, both
/// with the literal structural statistics and with the published reference
/// constants. Triangle patterns with a known filter threshold also report
/// it. Unicolor patterns are rejected: their stability depends on
/// unobservable appearance probabilities.
pub fn stability_report(builtin: BuiltinPattern, alpha: Rational, decay: Decay) -> Result<StabilityReport> {
    let pattern = builtin.pattern();
    let rainbow = pattern.r() == pattern.e();

    let filter = match builtin {
        BuiltinPattern::Triangle2 => Some(triangle_exponent(TriangleType::Two, alpha, decay)?),
        BuiltinPattern::Triangle3 => Some(triangle_exponent(TriangleType::Three, alpha, decay)?),
        _ => None,
    };

    if !rainbow && filter.is_none() {
        return Err(Error::Stability(format!(
            "`{builtin}` uses one color for several edges; no deletion-stability exponent is \
             computable from the data alone"
        )));
    }

    let (beta, safe, terms) = if rainbow {
        let literal: PatternStats = structure_stats(&pattern);
        let exp = beta_exponent(&literal, alpha, decay)?;
        (
            exp.beta.map(rational_f64),
            exp.safe_d_exponent.map(rational_f64),
            terms_json(&exp),
        )
    } else {
        (None, None, Vec::new())
    };

    let reference = if rainbow {
        PatternStats::reference_for(builtin)
            .map(|stats| -> Result<StabilityBlock> {
                let exp = beta_exponent(&stats, alpha, decay)?;
                Ok(StabilityBlock {
                    note: format!(
                        "published analyses use min_degree={}, N1={} for this pattern",
                        stats.min_degree, stats.nk[0]
                    ),
                    beta: exp.beta.map(rational_f64),
                    safe_d_exponent: exp.safe_d_exponent.map(rational_f64),
                    terms: terms_json(&exp),
                })
            })
            .transpose()?
    } else {
        None
    };

    Ok(StabilityReport {
        pattern: builtin.to_string(),
        alpha: rational_f64(alpha),
        decay,
        beta,
        safe_d_exponent: safe,
        terms,
        reference,
        filter_exponent: filter.map(rational_f64),
        filter_exponent_exact: filter.map(|q| q.to_string()),
    })
}
