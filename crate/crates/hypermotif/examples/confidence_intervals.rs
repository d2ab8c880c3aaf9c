//! A confidence interval for a subgraph frequency via subsampling.
//!
//! The statistic is recomputed on many size-b subsamples; b/N times the
//! empirical covariance of those values estimates the asymptotic variance of
//! the sqrt(m)-scaled statistic, giving the interval point ± z·sqrt(Λ̂/m).
//!
//! ```bash
//! cargo run --example confidence_intervals
//! ```

use hypermotif::experiments::run_infer;
use hypermotif::generator::GeneratorModel;
use hypermotif::statistic::{Statistic, TupleCount};
use hypermotif::BuiltinPattern;

fn main() {
    let m = 800;
    let sample = GeneratorModel::power_law(2.0, 1000, 12).generate(m).unwrap();

    for (label, statistic) in [
        (
            "twostar2 frequency",
            Statistic::colored(BuiltinPattern::TwoStar2, TupleCount::Power(1.1)),
        ),
        (
            "type-2 clustering coefficient",
            Statistic::type2_clustering(TupleCount::Power(1.1)),
        ),
    ] {
        let report = run_infer(sample.edges(), &statistic, label, 0.95, 1.5, 500, 99).unwrap();
        println!(
            "{label}: {:.5}  {}% CI [{:.5}, {:.5}]  (b = {}, lambda_hat = {:.3})",
            report.estimate,
            (report.level * 100.0) as u32,
            report.ci[0],
            report.ci[1],
            report.config.b,
            report.lambda_hat,
        );
    }

    println!("\nJSON shape of the second report:");
    let statistic = Statistic::type2_clustering(TupleCount::Power(1.1));
    let report = run_infer(sample.edges(), &statistic, "type2-clustering", 0.95, 1.5, 500, 99).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
