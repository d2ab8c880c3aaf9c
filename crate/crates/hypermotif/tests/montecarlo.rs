//! Monte Carlo validation of the subsampling variance estimator against
//! direct replication, on the synthetic model. Seeds are fixed; runtimes are
//! a few seconds.

use hypermotif::generator::GeneratorModel;
use hypermotif::inference::{ratio_ci, subsample_covariance, SampleStatistic, SubsampleConfig};
use hypermotif::seed::{derive_seed, stream};
use hypermotif::statistic::{Statistic, TupleCount};
use hypermotif::BuiltinPattern;

/// The subsampling estimate of the variance of the sqrt(m)-scaled two-star
/// frequency must land within a factor of two of the variance measured by
/// independent replication.
#[test]
fn subsample_variance_tracks_monte_carlo_variance() {
    let model = GeneratorModel::power_law(2.0, 1000, 0);
    let m = 1000;
    let reps = 200;
    let stat = Statistic::colored(BuiltinPattern::TwoStar2, TupleCount::Power(1.1));

    let values: Vec<f64> = (0..reps)
        .map(|rep| {
            let seed = derive_seed(41, stream::REPLICATION, rep as u64);
            let sample = model.generate_seeded(m, seed).unwrap();
            stat.eval(sample.edges(), derive_seed(seed, stream::TUPLES, 0)).unwrap()
        })
        .collect();
    let mean = values.iter().sum::<f64>() / reps as f64;
    let mc_var_scaled =
        m as f64 * values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (reps - 1) as f64;

    let sample = model.generate_seeded(m, derive_seed(41, stream::REPLICATION, 1234)).unwrap();
    let config = SubsampleConfig::from_c(m, 1.5, 2, 1000, 99).unwrap();
    let lambda = subsample_covariance(sample.edges(), &[&stat], &config).unwrap().var(0);

    let ratio = lambda / mc_var_scaled;
    assert!(
        (0.5..=2.0).contains(&ratio),
        "lambda_hat {lambda:.1} vs Monte Carlo {mc_var_scaled:.1} (ratio {ratio:.2})"
    );
    println!("lambda_hat/MC variance = {ratio:.3} (lambda {lambda:.1}, MC {mc_var_scaled:.1})");
}

/// Delta-method interval for a same-network ratio, fed by the joint
/// subsample covariance of numerator and denominator, must agree with
/// subsampling the ratio directly.
#[test]
fn delta_method_matches_direct_ratio_subsampling() {
    let model = GeneratorModel::power_law(2.0, 1000, 0);
    let m = 1000;
    let sample = model.generate_seeded(m, 77).unwrap();
    let edges = sample.edges();

    let tri = Statistic::colored(BuiltinPattern::Triangle2, TupleCount::Power(1.1));
    let star = Statistic::colored(BuiltinPattern::TwoStar2, TupleCount::Power(1.1));
    let cc = Statistic::type2_clustering(TupleCount::Power(1.1));

    let config = SubsampleConfig::from_c(m, 1.5, 2, 1000, 5).unwrap();
    let joint = subsample_covariance(edges, &[&tri, &star], &config).unwrap();
    // Point estimates share one tuple seed, pairing their designs the same
    // way the clustering statistic pairs its numerator and denominator.
    let point_seed = derive_seed(5, stream::TUPLES, 0);
    let a = tri.eval(edges, point_seed).unwrap();
    let b = star.eval(edges, point_seed).unwrap();
    let delta = ratio_ci(
        (a, joint.var(0) / m as f64),
        (b, joint.var(1) / m as f64),
        joint.cov(0, 1) / m as f64,
        0.95,
    )
    .unwrap();

    let direct_var = subsample_covariance(edges, &[&cc], &config).unwrap().var(0) / m as f64;
    let direct_se = direct_var.sqrt();

    let rel = delta.se / direct_se;
    assert!(
        (0.8..=1.25).contains(&rel),
        "delta-method se {:.5} vs direct subsampled se {:.5} (ratio {rel:.3})",
        delta.se,
        direct_se
    );
    println!(
        "clustering ratio {:.4}: delta-method se {:.5}, direct se {:.5} (ratio {rel:.3})",
        delta.point, delta.se, direct_se
    );
}
