//! Parse a hyperedge list, inspect degrees, and binarize.
//!
//! ```bash
//! cargo run --example ingest
//! ```

use hypermotif::{binarize, build_sample, hyperdegrees};

fn main() {
    // One hyperedge per line; '#' comments and blank lines are ignored;
    // duplicate tokens collapse.
    let text = "\
# a small collaboration network
ada bob carol
ada bob
carol dan
dan        # a solo interaction
ada carol dan
";
    let sample = build_sample(text.lines());
    println!("m = {} hyperedges, {} vertices", sample.len(), sample.n_vertices());

    let degrees = hyperdegrees(sample.edges());
    for id in 0..sample.n_vertices() as u32 {
        let v = hypermotif::VertexId(id);
        println!("  {:>6}  hyperdegree {}", sample.label(v), degrees.get(v));
    }

    let graph = binarize(sample.edges());
    println!("binarized: {} simple edges", graph.edge_count());
    for (a, b) in graph.edge_pairs() {
        println!("  {} -- {}", sample.label(hypermotif::VertexId(a)), sample.label(hypermotif::VertexId(b)));
    }

    // The id <-> label map round-trips through two-column text.
    let mut map = Vec::new();
    sample.write_id_map(&mut map).unwrap();
    print!("id map:\n{}", String::from_utf8(map).unwrap());
}
