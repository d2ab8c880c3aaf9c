//! The colored subgraph family: how a motif decomposes by the number of
//! distinct hyperedges forming it.
//!
//! Triangles in a collaboration network can come from one joint interaction
//! (triangle1), two (triangle2), or three pairwise ones (triangle3); the
//! colored frequencies keep these separate where a binarized count cannot.
//!
//! ```bash
//! cargo run --example colored_frequencies
//! ```

use hypermotif::count::{estimate_colored, estimate_colorless, total_copies, Design};
use hypermotif::generator::GeneratorModel;
use hypermotif::pattern::ColorlessPattern;
use hypermotif::BuiltinPattern;

fn main() {
    let model = GeneratorModel::power_law(2.0, 500, 7);
    let sample = model.generate(200).unwrap();
    let edges = sample.edges();
    println!("sample: m = {}, {} vertices\n", sample.len(), sample.n_vertices());

    println!("colored frequencies (complete estimators):");
    for builtin in BuiltinPattern::all() {
        let est = estimate_colored(edges, &builtin.pattern(), &Design::Complete).unwrap();
        println!("  {:<10} {:>12.6}", builtin.to_string(), est.value);
    }

    println!("\ncolorless triangle frequency by order r:");
    let triangle = ColorlessPattern::triangle();
    for r in 1..=3 {
        let est = estimate_colorless(edges, &triangle, r, &Design::Complete).unwrap();
        println!("  r = {r}: {:>12.6}", est.value);
    }

    let copies = total_copies(edges, &triangle).unwrap();
    println!("\ntotal colored triangle copies in the whole sample: {copies}");
}
