//! Without-multiplicity statistics: distinct k-node interactions and
//! binarized counts.
//!
//! The unique-pair count grows with the sample but saturates on the heavy
//! vertices; repeated interactions stop contributing, unlike the colored
//! frequencies.
//!
//! ```bash
//! cargo run --example unique_interactions
//! ```

use hypermotif::count::{binarized_count, unique_k_count};
use hypermotif::generator::{Cardinality, GeneratorModel, VertexWeights};
use hypermotif::pattern::ColorlessPattern;

fn main() {
    let model = GeneratorModel {
        cardinality: Cardinality::Custom(vec![0.0, 0.0, 0.7, 0.3]),
        weights: VertexWeights::Power { alpha: 3.0 },
        n_vertices: 2000,
        seed: 8,
    };

    println!("{:>6} {:>10} {:>10} {:>12} {:>12}", "m", "unique-2", "unique-3", "bin. stars", "bin. tris");
    for m in [100usize, 400, 1600, 6400] {
        let sample = model.generate_seeded(m, m as u64).unwrap();
        let edges = sample.edges();
        println!(
            "{:>6} {:>10} {:>10} {:>12} {:>12}",
            m,
            unique_k_count(edges, 2).unwrap(),
            unique_k_count(edges, 3).unwrap(),
            binarized_count(edges, &ColorlessPattern::two_star()).unwrap(),
            binarized_count(edges, &ColorlessPattern::triangle()).unwrap(),
        );
    }
    println!("\n(edges of size 2 with probability 0.7, size 3 with 0.3; weights j^-3)");
}
