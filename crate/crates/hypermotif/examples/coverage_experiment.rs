//! Miniature coverage experiment: do nominal-95% subsampling intervals
//! cover the model parameter at close to 95%?
//!
//! The full-size run (m = 500, 200 replications, 1000 subsamples, truth
//! calibrated at m = 10^6) lives in the acceptance suite and behind the
//! `coverage` CLI subcommand; this one is scaled down to finish quickly.
//!
//! ```bash
//! cargo run --example coverage_experiment
//! ```

use hypermotif::experiments::{coverage_csv, run_coverage_experiment, CoverageSpec, TruthSpec};
use hypermotif::generator::GeneratorModel;
use hypermotif::statistic::{Statistic, TupleCount};
use hypermotif::BuiltinPattern;

fn main() {
    let spec = CoverageSpec {
        model: GeneratorModel::power_law(2.0, 1000, 0),
        m: 200,
        c_grid: vec![1.0, 1.5, 2.0],
        reps: 50,
        level: 0.95,
        n_sub: 300,
        seed: 4,
        statistic: Statistic::colored(BuiltinPattern::TwoStar2, TupleCount::Power(1.1)),
        truth: TruthSpec::Calibrate { m: 200_000, seed: 777 },
    };

    let report = run_coverage_experiment(&spec).unwrap();
    println!(
        "statistic: {}  (plug-in truth {:.4} from m = {})",
        report.statistic,
        report.truth,
        report.calibration.as_ref().unwrap().calibration_m
    );
    print!("{}", coverage_csv(&report));
    println!("\n(50 replications; expect values within a few percent of 0.95)");
}
