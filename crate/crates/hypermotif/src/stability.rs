//! Deletion-stability exponents and degree-filter thresholds.
//!
//! For a rainbow pattern (every edge its own color) under vertex-weight
//! decay `p_(j) ≪ j^(-α)`, filtering at any `d ≪ m^(1-β)` leaves the
//! √m-scale limit unchanged, where β is a maximum of structure-dependent
//! terms. Under exponential decay the analogous exponent needs no α.
//! Colored triangles get sharper pattern-specific thresholds of the form
//! `d ≪ m^γ`.
//!
//! All arithmetic is exact over rationals so thresholds can be compared
//! symbolically.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::PatternStats;

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decay {
    Polynomial,
    Exponential,
}

impl fmt::Display for Decay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decay::Polynomial => f.write_str("polynomial"),
            Decay::Exponential => f.write_str("exponential"),
        }
    }
}

impl FromStr for Decay {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polynomial" | "poly" => Ok(Decay::Polynomial),
            "exponential" | "exp" => Ok(Decay::Exponential),
            other => Err(Error::InvalidArgument(format!("unknown decay `{other}`"))),
        }
    }
}

/// One term of the exponent maximum. `value: None` marks an unbounded term
/// (division by zero, e.g. N₁ = 1), which makes the whole exponent
/// unbounded.
#[derive(Clone, Debug, PartialEq)]
pub struct ExponentTerm {
    pub name: String,
    pub value: Option<Rational>,
}

/// Result of the deletion-stability calculation: the individual terms, their
/// maximum β (None when unbounded), and the safe filter exponent 1 − β so
/// that any `d ≪ m^(1-β)` is tolerated.
#[derive(Clone, Debug, PartialEq)]
pub struct DeletionExponent {
    pub terms: Vec<ExponentTerm>,
    pub beta: Option<Rational>,
    pub safe_d_exponent: Option<Rational>,
}

/// Deletion-stability exponent for a rainbow pattern with the given
/// structural statistics.
///
/// Polynomial decay requires α > 2; exponential decay requires α > 1 (the
/// exponent itself does not involve α).
pub fn beta_exponent(stats: &PatternStats, alpha: Rational, decay: Decay) -> Result<DeletionExponent> {
    if stats.min_degree == 0 || stats.e == 0 || stats.v < 2 {
        return Err(Error::InvalidArgument(
            "pattern stats need v >= 2, e >= 1 and no isolated vertices".into(),
        ));
    }
    let n1 = stats
        .n(1)
        .ok_or_else(|| Error::InvalidArgument("missing N_1".into()))?;

    let mut terms = Vec::new();
    match decay {
        Decay::Polynomial => {
            if alpha <= Ratio::from_integer(2) {
                return Err(Error::InvalidArgument(format!(
                    "polynomial decay needs alpha > 2, got {alpha}"
                )));
            }
            let half = Ratio::new(1, 2);
            let inv_a = alpha.recip();
            terms.push(ExponentTerm {
                name: "min_degree".into(),
                value: Some(Ratio::new(2, stats.min_degree as i64) * (half + inv_a)),
            });
            terms.push(ExponentTerm {
                name: "n1".into(),
                value: if n1 > 1 {
                    Some(
                        Ratio::new(1, (n1 - 1) as i64)
                            * (half + Ratio::from_integer((stats.v - 1) as i64) * inv_a),
                    )
                } else {
                    None
                },
            });
            terms.push(ExponentTerm {
                name: "edges".into(),
                value: Some(
                    Ratio::new(1, stats.e as i64)
                        * (half + Ratio::from_integer(stats.v as i64) * inv_a),
                ),
            });
            for k in 2..=stats.v.saturating_sub(2) {
                let nk = stats
                    .n(k)
                    .ok_or_else(|| Error::InvalidArgument(format!("missing N_{k}")))?;
                terms.push(ExponentTerm {
                    name: format!("n{k}"),
                    value: Some(
                        Ratio::new(1, nk as i64)
                            * (half + Ratio::from_integer((stats.v - k) as i64) * inv_a),
                    ),
                });
            }
        }
        Decay::Exponential => {
            if alpha <= Ratio::from_integer(1) {
                return Err(Error::InvalidArgument(format!(
                    "exponential decay needs alpha > 1, got {alpha}"
                )));
            }
            terms.push(ExponentTerm {
                name: "min_degree".into(),
                value: Some(Ratio::new(1, stats.min_degree as i64)),
            });
            terms.push(ExponentTerm {
                name: "n1".into(),
                value: if n1 > 1 {
                    Some(Ratio::new(1, 2 * (n1 - 1) as i64))
                } else {
                    None
                },
            });
            terms.push(ExponentTerm {
                name: "edges".into(),
                value: Some(Ratio::new(1, 2 * stats.e as i64)),
            });
            for k in 2..=stats.v.saturating_sub(2) {
                let nk = stats
                    .n(k)
                    .ok_or_else(|| Error::InvalidArgument(format!("missing N_{k}")))?;
                terms.push(ExponentTerm {
                    name: format!("n{k}"),
                    value: Some(Ratio::new(1, 2 * nk as i64)),
                });
            }
        }
    }

    let beta = terms
        .iter()
        .map(|t| t.value)
        .try_fold(Rational::zero(), |acc, v| v.map(|v| acc.max(v)));
    let safe = beta.map(|b| Ratio::from_integer(1) - b);
    Ok(DeletionExponent {
        terms,
        beta,
        safe_d_exponent: safe,
    })
}

/// The three triangle color classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleType {
    One,
    Two,
    Three,
}

impl FromStr for TriangleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(TriangleType::One),
            "2" => Ok(TriangleType::Two),
            "3" => Ok(TriangleType::Three),
            other => Err(Error::InvalidArgument(format!("triangle type must be 1, 2 or 3, got {other}"))),
        }
    }
}

/// The exponent γ such that degree filtering at any `d ≪ m^γ` keeps the
/// limiting distribution of the given triangle frequency.
///
/// Unicolor (type 1) triangles have no data-computable threshold: their
/// stability condition constrains the probability that a hyperedge meets a
/// set of near-cutoff vertex triples, which depends on the unobservable
/// appearance probabilities.
pub fn triangle_exponent(t: TriangleType, alpha: Rational, decay: Decay) -> Result<Rational> {
    if matches!(t, TriangleType::One) {
        return Err(Error::Stability(
            "type 1 triangles have no threshold in terms of d alone; their stability depends on \
             the unobservable appearance probabilities near the filter cutoff"
                .into(),
        ));
    }
    match decay {
        Decay::Polynomial => {
            if alpha <= Ratio::from_integer(2) {
                return Err(Error::InvalidArgument(format!(
                    "polynomial decay needs alpha > 2, got {alpha}"
                )));
            }
            let inv_a = alpha.recip();
            Ok(match t {
                TriangleType::Two => {
                    let lhs = Ratio::new(1, 3) - inv_a;
                    let rhs = Ratio::new(1, 2) - Ratio::from_integer(2) * inv_a;
                    lhs.min(rhs)
                }
                TriangleType::Three => Ratio::new(1, 2) - inv_a,
                TriangleType::One => unreachable!(),
            })
        }
        Decay::Exponential => Ok(match t {
            TriangleType::Two => Ratio::new(1, 3),
            TriangleType::Three => Ratio::new(1, 2),
            TriangleType::One => unreachable!(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{colorless_structure_stats, BuiltinPattern, ColorlessPattern, PatternStats};

    fn q(n: i64, d: i64) -> Rational {
        Ratio::new(n, d)
    }

    #[test]
    fn triangle_reference_parameters_give_half_plus_inverse_alpha() {
        let stats = PatternStats::reference_for(BuiltinPattern::Triangle3).unwrap();
        let out = beta_exponent(&stats, q(4, 1), Decay::Polynomial).unwrap();
        assert_eq!(out.beta, Some(q(3, 4)));
        assert_eq!(out.safe_d_exponent, Some(q(1, 4)));
    }

    #[test]
    fn twostar_reference_parameters_term_by_term() {
        let stats = PatternStats::reference_for(BuiltinPattern::TwoStar2).unwrap();
        let out = beta_exponent(&stats, q(8, 1), Decay::Polynomial).unwrap();
        let values: Vec<Rational> = out.terms.iter().map(|t| t.value.unwrap()).collect();
        assert_eq!(values, vec![q(5, 8), q(3, 4), q(7, 16)]);
        assert_eq!(out.beta, Some(q(3, 4)));
    }

    #[test]
    fn exponential_triangle_terms() {
        let stats = PatternStats::reference_for(BuiltinPattern::Triangle3).unwrap();
        let out = beta_exponent(&stats, q(2, 1), Decay::Exponential).unwrap();
        let values: Vec<Rational> = out.terms.iter().map(|t| t.value.unwrap()).collect();
        assert_eq!(values, vec![q(1, 2), q(1, 4), q(1, 6)]);
        assert_eq!(out.beta, Some(q(1, 2)));
    }

    #[test]
    fn single_edge_n1_is_unbounded() {
        let stats = colorless_structure_stats(&ColorlessPattern::single_edge());
        assert_eq!(stats.nk, vec![1]);
        let out = beta_exponent(&stats, q(5, 1), Decay::Polynomial).unwrap();
        assert_eq!(out.terms[1].value, None);
        assert_eq!(out.beta, None);
        assert_eq!(out.safe_d_exponent, None);
    }

    #[test]
    fn beta_decreases_in_alpha() {
        for builtin in [BuiltinPattern::Triangle3, BuiltinPattern::TwoStar2] {
            let stats = PatternStats::reference_for(builtin).unwrap();
            let mut last: Option<Rational> = None;
            for a in 3..=10 {
                let beta = beta_exponent(&stats, q(a, 1), Decay::Polynomial)
                    .unwrap()
                    .beta
                    .unwrap();
                if let Some(prev) = last {
                    assert!(beta <= prev, "beta not nonincreasing at alpha={a}");
                }
                last = Some(beta);
            }
        }
    }

    #[test]
    fn reference_betas_inside_unit_interval_where_defined() {
        // Triangle: β = 1/2 + 1/α ∈ (0,1) for every α > 2.
        let tri = PatternStats::reference_for(BuiltinPattern::Triangle3).unwrap();
        for a in 3..=10 {
            let beta = beta_exponent(&tri, q(a, 1), Decay::Polynomial).unwrap().beta.unwrap();
            assert_eq!(beta, q(1, 2) + q(1, a));
            assert!(beta > q(0, 1) && beta < q(1, 1));
        }
        // Two-star: β = 1/2 + 2/α, inside (0,1) only once α > 4.
        let star = PatternStats::reference_for(BuiltinPattern::TwoStar2).unwrap();
        for a in 3..=10 {
            let beta = beta_exponent(&star, q(a, 1), Decay::Polynomial).unwrap().beta.unwrap();
            assert_eq!(beta, q(1, 2) + q(2, a));
            if a >= 5 {
                assert!(beta < q(1, 1));
            } else {
                assert!(beta >= q(1, 1));
            }
        }
    }

    #[test]
    fn triangle_thresholds() {
        assert_eq!(
            triangle_exponent(TriangleType::Two, q(6, 1), Decay::Polynomial).unwrap(),
            q(1, 6)
        );
        assert_eq!(
            triangle_exponent(TriangleType::Three, q(4, 1), Decay::Polynomial).unwrap(),
            q(1, 4)
        );
        assert_eq!(
            triangle_exponent(TriangleType::Three, q(2, 1), Decay::Exponential).unwrap(),
            q(1, 2)
        );
        assert_eq!(
            triangle_exponent(TriangleType::Two, q(2, 1), Decay::Exponential).unwrap(),
            q(1, 3)
        );
        assert!(triangle_exponent(TriangleType::One, q(4, 1), Decay::Polynomial).is_err());
        assert!(triangle_exponent(TriangleType::Two, q(2, 1), Decay::Polynomial).is_err());
    }

    #[test]
    fn type3_threshold_approaches_exponential_value() {
        let poly = triangle_exponent(TriangleType::Three, q(1_000_000, 1), Decay::Polynomial).unwrap();
        let expo = triangle_exponent(TriangleType::Three, q(2, 1), Decay::Exponential).unwrap();
        let gap = expo - poly;
        assert!(gap > q(0, 1) && gap <= q(1, 1_000_000));
    }
}
