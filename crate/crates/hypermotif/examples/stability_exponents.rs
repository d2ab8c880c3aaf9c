//! Deletion-stability exponents across the weight-decay parameter.
//!
//! For rainbow patterns the table shows the safe filter growth m^(1-beta);
//! for the partly-colored triangle it shows the direct threshold m^gamma.
//! Unicolor patterns have no computable exponent and error out.
//!
//! ```bash
//! cargo run --example stability_exponents
//! ```

use hypermotif::experiments::stability_report;
use hypermotif::stability::Decay;
use hypermotif::BuiltinPattern;
use num_rational::Ratio;

fn main() {
    println!(
        "{:>6} {:>16} {:>16} {:>14}",
        "alpha", "triangle3 beta*", "twostar2 beta*", "triangle2 gamma"
    );
    for a in [3i64, 4, 6, 8, 10] {
        let alpha = Ratio::new(a, 1);
        let t3 = stability_report(BuiltinPattern::Triangle3, alpha, Decay::Polynomial).unwrap();
        let s2 = stability_report(BuiltinPattern::TwoStar2, alpha, Decay::Polynomial).unwrap();
        let t2 = stability_report(BuiltinPattern::Triangle2, alpha, Decay::Polynomial).unwrap();
        println!(
            "{:>6} {:>16.4} {:>16.4} {:>14.4}",
            a,
            t3.reference.as_ref().unwrap().beta.unwrap(),
            s2.reference.as_ref().unwrap().beta.unwrap(),
            t2.filter_exponent.unwrap()
        );
    }
    println!("(beta* uses the published structural constants; filters d << m^(1-beta) are safe)\n");

    let exp = stability_report(BuiltinPattern::Triangle3, Ratio::new(2, 1), Decay::Exponential).unwrap();
    println!(
        "exponential decay, triangle3: filter threshold m^{}",
        exp.filter_exponent_exact.unwrap()
    );

    match stability_report(BuiltinPattern::Triangle1, Ratio::new(4, 1), Decay::Polynomial) {
        Err(err) => println!("triangle1: {err}"),
        Ok(_) => unreachable!("unicolor patterns have no exponent"),
    }
}
