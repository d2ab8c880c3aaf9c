//! Incomplete estimators: trade tuple enumeration for sampled tuples.
//!
//! The complete two-star estimator touches all C(m,2) pairs; the incomplete
//! one averages the same kernel over N sampled pairs and stays unbiased, so
//! error shrinks as N grows.
//!
//! ```bash
//! cargo run --example incomplete_design
//! ```

use hypermotif::count::{auto_tuple_count, estimate_colored, Design};
use hypermotif::generator::GeneratorModel;
use hypermotif::BuiltinPattern;

fn main() {
    let m = 2000;
    let sample = GeneratorModel::power_law(2.0, 1000, 42).generate(m).unwrap();
    let edges = sample.edges();
    let pattern = BuiltinPattern::TwoStar2.pattern();

    let complete = estimate_colored(edges, &pattern, &Design::Complete).unwrap();
    println!("complete estimate over C({m},2) pairs: {:.5}\n", complete.value);

    println!("{:>9} {:>12} {:>12}", "tuples", "estimate", "rel. error");
    for n in [100u64, 1_000, 10_000, 100_000] {
        // Average over a few seeds so the display is not one lucky draw.
        let mut acc = 0.0;
        let seeds = 20;
        for seed in 0..seeds {
            let est = estimate_colored(edges, &pattern, &Design::Incomplete { tuples: n, seed }).unwrap();
            acc += (est.value - complete.value).abs() / complete.value;
        }
        let one = estimate_colored(edges, &pattern, &Design::Incomplete { tuples: n, seed: 0 }).unwrap();
        println!("{:>9} {:>12.5} {:>11.4}%", n, one.value, 100.0 * acc / seeds as f64);
    }

    println!(
        "\ndefault budget for m = {m}: N = ceil(m^1.1) = {}",
        auto_tuple_count(m)
    );
}
