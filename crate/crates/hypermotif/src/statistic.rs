//! Named statistics evaluable on any hyperedge collection, used by the
//! subsampling machinery and the experiment drivers.

use serde::Serialize;

use crate::count::{
    binarized_count, clustering_coefficient, estimate_colored, estimate_colorless,
    estimate_degree_filtered, unique_k_count, ClusteringKind, Design,
};
use crate::error::Result;
use crate::inference::SampleStatistic;
use crate::pattern::{BuiltinPattern, ColoredPattern, ColorlessPattern};
use crate::sample::Hyperedge;

/// Tuple budget for U-statistic evaluation, resolved against the sample size
/// at evaluation time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum TupleCount {
    /// Complete enumeration of all C(m, r) tuples.
    All,
    /// A fixed number of sampled tuples.
    Fixed(u64),
    /// `ceil(m^p)` sampled tuples; `Power(1.1)` is the estimation default,
    /// `Power(1.5)` the comparison-workflow default.
    Power(f64),
}

impl TupleCount {
    pub fn design(self, m: usize, seed: u64) -> Design {
        match self {
            TupleCount::All => Design::Complete,
            TupleCount::Fixed(n) => Design::Incomplete { tuples: n, seed },
            TupleCount::Power(p) => Design::Incomplete {
                tuples: (m as f64).powf(p).ceil() as u64,
                seed,
            },
        }
    }
}

/// A named subgraph statistic.
#[derive(Clone, Debug)]
pub enum Statistic {
    Colored {
        name: String,
        pattern: ColoredPattern,
        filter_d: Option<u32>,
        tuples: TupleCount,
    },
    Colorless {
        name: String,
        shape: ColorlessPattern,
        r: usize,
        tuples: TupleCount,
    },
    UniqueK {
        k: usize,
    },
    BinarizedCount {
        name: String,
        shape: ColorlessPattern,
    },
    /// Binarized count normalized by C(n_observed, v).
    BinarizedDensity {
        name: String,
        shape: ColorlessPattern,
    },
    Clustering {
        kind: ClusteringKind,
        tuples: TupleCount,
    },
}

impl Statistic {
    pub fn colored(builtin: BuiltinPattern, tuples: TupleCount) -> Statistic {
        Statistic::Colored {
            name: builtin.to_string(),
            pattern: builtin.pattern(),
            filter_d: None,
            tuples,
        }
    }

    pub fn colored_filtered(builtin: BuiltinPattern, d: u32, tuples: TupleCount) -> Statistic {
        Statistic::Colored {
            name: format!("{builtin}[d>={d}]"),
            pattern: builtin.pattern(),
            filter_d: Some(d),
            tuples,
        }
    }

    pub fn colorless(name: &str, shape: ColorlessPattern, r: usize, tuples: TupleCount) -> Statistic {
        Statistic::Colorless {
            name: name.to_string(),
            shape,
            r,
            tuples,
        }
    }

    pub fn type2_clustering(tuples: TupleCount) -> Statistic {
        Statistic::Clustering {
            kind: ClusteringKind::Type2,
            tuples,
        }
    }

    pub fn binarized_clustering() -> Statistic {
        Statistic::Clustering {
            kind: ClusteringKind::Binarized,
            tuples: TupleCount::All,
        }
    }

    pub fn binarized_twostar_density() -> Statistic {
        Statistic::BinarizedDensity {
            name: "binarized_twostar_density".into(),
            shape: ColorlessPattern::two_star(),
        }
    }

    /// Order of the underlying U-statistic (1 for plain counts).
    pub fn order(&self) -> usize {
        match self {
            Statistic::Colored { pattern, .. } => pattern.r(),
            Statistic::Colorless { r, .. } => *r,
            Statistic::Clustering { kind: ClusteringKind::Type2, .. } => 2,
            _ => 1,
        }
    }
}

impl SampleStatistic for Statistic {
    fn eval(&self, edges: &[Hyperedge], seed: u64) -> Result<f64> {
        let m = edges.len();
        match self {
            Statistic::Colored {
                pattern,
                filter_d,
                tuples,
                ..
            } => {
                let design = tuples.design(m, seed);
                let est = match filter_d {
                    None => estimate_colored(edges, pattern, &design)?,
                    Some(d) => estimate_degree_filtered(edges, pattern, *d, &design)?,
                };
                Ok(est.value)
            }
            Statistic::Colorless { shape, r, tuples, .. } => {
                let design = tuples.design(m, seed);
                Ok(estimate_colorless(edges, shape, *r, &design)?.value)
            }
            Statistic::UniqueK { k } => Ok(unique_k_count(edges, *k)? as f64),
            Statistic::BinarizedCount { shape, .. } => Ok(binarized_count(edges, shape)? as f64),
            Statistic::BinarizedDensity { shape, .. } => {
                let count = binarized_count(edges, shape)? as f64;
                let n = crate::sample::binarize(edges).n_observed() as u128;
                let v = shape.v() as u128;
                if n < v {
                    return Ok(0.0);
                }
                let triples = num_integer::binomial(n, v);
                Ok(count / triples as f64)
            }
            Statistic::Clustering { kind, tuples } => {
                let design = tuples.design(m, seed);
                clustering_coefficient(edges, *kind, &design)
            }
        }
    }

    fn label(&self) -> String {
        match self {
            Statistic::Colored { name, .. } => name.clone(),
            Statistic::Colorless { name, .. } => name.clone(),
            Statistic::UniqueK { k } => format!("unique_{k}"),
            Statistic::BinarizedCount { name, .. } => name.clone(),
            Statistic::BinarizedDensity { name, .. } => name.clone(),
            Statistic::Clustering { kind, .. } => match kind {
                ClusteringKind::Type2 => "type2_clustering_coefficient".into(),
                ClusteringKind::Binarized => "binarized_clustering_coefficient".into(),
            },
        }
    }
}
