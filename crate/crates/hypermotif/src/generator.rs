//! Synthetic hyperedge samplers.
//!
//! Hyperedges are i.i.d.: draw a cardinality, then that many distinct
//! vertices by sequential weighted sampling without replacement (each draw
//! proportional to the remaining vertices' weights). The default model uses
//! `P(|h| = n) ∝ 6^n/n!` on sizes ≥ 2 and vertex weights `w_j = j^(-α)`;
//! uniform weights over a small vertex set give the finite-vertex regime.
//!
//! Generation is sequential and fully determined by the seed; independent
//! replications derive their own seeds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::HypergraphSample;

/// Sampling support of the default cardinality law; the mass beyond this is
/// below 1e-15.
const POISSON6_MAX: usize = 60;

/// Distribution of hyperedge cardinalities.
#[derive(Clone, Debug, PartialEq)]
pub enum Cardinality {
    /// `P(|h| = n) ∝ 6^n / n!` for n ≥ 2, truncated at 60 for sampling.
    Poisson6,
    /// Explicit pmf over sizes; `pmf[k] = P(|h| = k)`. Normalized on use.
    Custom(Vec<f64>),
}

/// Vertex appearance weights.
#[derive(Clone, Debug, PartialEq)]
pub enum VertexWeights {
    /// `w_j = j^(-alpha)` for ranks j = 1..=n. `alpha = 0` is uniform.
    Power { alpha: f64 },
    /// Explicit positive weights, one per vertex.
    Custom(Vec<f64>),
}

/// An exchangeable hyperedge model: cardinality law + vertex weights over a
/// finite vertex pool.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorModel {
    pub cardinality: Cardinality,
    pub weights: VertexWeights,
    pub n_vertices: usize,
    pub seed: u64,
}

impl GeneratorModel {
    /// The simulation default: cardinalities `∝ 6^n/n!` (n ≥ 2), weights
    /// `j^(-alpha)`.
    pub fn power_law(alpha: f64, n_vertices: usize, seed: u64) -> Self {
        GeneratorModel {
            cardinality: Cardinality::Poisson6,
            weights: VertexWeights::Power { alpha },
            n_vertices,
            seed,
        }
    }

    /// Uniform vertex weights over a small pool (the finite-vertex regime).
    pub fn uniform(n_vertices: usize, seed: u64) -> Self {
        GeneratorModel::power_law(0.0, n_vertices, seed)
    }

    fn weight_vec(&self) -> Result<Vec<f64>> {
        let w = match &self.weights {
            VertexWeights::Power { alpha } => (1..=self.n_vertices)
                .map(|j| (j as f64).powf(-alpha))
                .collect(),
            VertexWeights::Custom(w) => {
                if w.len() != self.n_vertices {
                    return Err(Error::InvalidConfig(format!(
                        "{} weights for {} vertices",
                        w.len(),
                        self.n_vertices
                    )));
                }
                w.clone()
            }
        };
        if w.iter().any(|&x| !x.is_finite() || x <= 0.0) {
            return Err(Error::InvalidConfig("vertex weights must be positive and finite".into()));
        }
        Ok(w)
    }

    /// Cumulative cardinality table `(sizes, cdf)`, truncated to sizes that
    /// fit the vertex pool and renormalized to 1. Errors when no mass
    /// survives the truncation.
    fn cardinality_table(&self) -> Result<(Vec<usize>, Vec<f64>)> {
        let masses: Vec<(usize, f64)> = match &self.cardinality {
            Cardinality::Poisson6 => {
                let cap = POISSON6_MAX.min(self.n_vertices);
                let mut term = 18.0; // 6^2 / 2!
                let mut out = Vec::new();
                for n in 2..=cap {
                    out.push((n, term));
                    term *= 6.0 / (n as f64 + 1.0);
                }
                out
            }
            Cardinality::Custom(pmf) => {
                if pmf.iter().any(|&p| p < 0.0 || !p.is_finite()) {
                    return Err(Error::InvalidConfig("pmf entries must be nonnegative".into()));
                }
                pmf.iter()
                    .enumerate()
                    .filter(|&(n, &p)| p > 0.0 && n <= self.n_vertices)
                    .map(|(n, &p)| (n, p))
                    .collect()
            }
        };
        if masses.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "cardinality pmf has no mass on sizes <= {} vertices",
                self.n_vertices
            )));
        }
        let total: f64 = masses.iter().map(|&(_, p)| p).sum();
        let mut sizes = Vec::with_capacity(masses.len());
        let mut cdf = Vec::with_capacity(masses.len());
        let mut acc = 0.0;
        for (n, p) in masses {
            acc += p / total;
            sizes.push(n);
            cdf.push(acc);
        }
        Ok((sizes, cdf))
    }

    /// Generate `m` hyperedges with the model's own seed.
    pub fn generate(&self, m: usize) -> Result<HypergraphSample> {
        self.generate_seeded(m, self.seed)
    }

    /// Generate `m` hyperedges deterministically from an explicit seed.
    pub fn generate_seeded(&self, m: usize, seed: u64) -> Result<HypergraphSample> {
        let weights = self.weight_vec()?;
        let (sizes, size_cdf) = self.cardinality_table()?;
        let mut cum = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for &w in &weights {
            acc += w;
            cum.push(acc);
        }
        let total = acc;

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges: Vec<Vec<u64>> = Vec::with_capacity(m);
        let mut drawn: Vec<u32> = Vec::new();
        for _ in 0..m {
            let u: f64 = rng.random();
            let idx = size_cdf.partition_point(|&c| c <= u);
            let size = sizes[idx.min(sizes.len() - 1)];

            drawn.clear();
            if size == self.n_vertices {
                drawn.extend(0..self.n_vertices as u32);
            } else {
                // Sequential weighted sampling without replacement: draw
                // against the full weight table and reject repeats, which is
                // distributionally identical to renormalizing the remaining
                // weights after each selection.
                while drawn.len() < size {
                    let t: f64 = rng.random::<f64>() * total;
                    let v = cum.partition_point(|&c| c <= t).min(weights.len() - 1) as u32;
                    if !drawn.contains(&v) {
                        drawn.push(v);
                    }
                }
            }
            edges.push(drawn.iter().map(|&v| v as u64 + 1).collect());
        }
        Ok(HypergraphSample::from_numeric_edges(edges))
    }
}

/// The default cardinality pmf: `(6^n/n!) / (e^6 - 7)` for n ≥ 2.
pub fn cardinality_pmf(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("cardinality pmf defined for n >= 2, got {n}")));
    }
    let normalizer = 6f64.exp() - 7.0;
    let mut term = 18.0;
    for k in 2..n {
        term *= 6.0 / (k as f64 + 1.0);
    }
    Ok(term / normalizer)
}

/// Plug-in parameter value from one large calibration run; θ has no closed
/// form under this model, so experiments use this as the reference truth.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelTruth {
    pub statistic: String,
    pub value: f64,
    pub calibration_m: usize,
    pub seed: u64,
}

/// Model spec JSON: `{"alpha": …, "n_vertices": …, "cardinality":
/// "poisson6_trunc2" | {"pmf": […]}, "seed": …}`.
#[derive(Serialize, Deserialize)]
struct ModelJson {
    alpha: f64,
    n_vertices: usize,
    #[serde(default)]
    cardinality: Option<CardinalityJson>,
    seed: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CardinalityJson {
    Named(String),
    Pmf { pmf: Vec<f64> },
}

impl GeneratorModel {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ModelJson = serde_json::from_str(text)?;
        let cardinality = match raw.cardinality {
            None => Cardinality::Poisson6,
            Some(CardinalityJson::Named(name)) => {
                if name == "poisson6_trunc2" {
                    Cardinality::Poisson6
                } else {
                    return Err(Error::InvalidConfig(format!("unknown cardinality `{name}`")));
                }
            }
            Some(CardinalityJson::Pmf { pmf }) => Cardinality::Custom(pmf),
        };
        Ok(GeneratorModel {
            cardinality,
            weights: VertexWeights::Power { alpha: raw.alpha },
            n_vertices: raw.n_vertices,
            seed: raw.seed,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let alpha = match self.weights {
            VertexWeights::Power { alpha } => alpha,
            VertexWeights::Custom(_) => {
                return Err(Error::InvalidConfig("custom weights have no JSON form".into()))
            }
        };
        let cardinality = match &self.cardinality {
            Cardinality::Poisson6 => CardinalityJson::Named("poisson6_trunc2".into()),
            Cardinality::Custom(pmf) => CardinalityJson::Pmf { pmf: pmf.clone() },
        };
        Ok(serde_json::to_string_pretty(&ModelJson {
            alpha,
            n_vertices: self.n_vertices,
            cardinality: Some(cardinality),
            seed: self.seed,
        })?)
    }
}
