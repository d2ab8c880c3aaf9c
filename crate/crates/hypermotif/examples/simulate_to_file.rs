//! Generate a synthetic sample and write it in the edge-list format, plus
//! the id map, then read it back.
//!
//! ```bash
//! cargo run --example simulate_to_file
//! ```

use hypermotif::generator::GeneratorModel;
use hypermotif::HypergraphSample;

fn main() {
    let dir = std::env::temp_dir().join("hypermotif-example");
    std::fs::create_dir_all(&dir).unwrap();
    let edges_path = dir.join("sample.txt");
    let map_path = dir.join("sample.ids");

    let model = GeneratorModel::power_law(2.0, 300, 2024);
    println!("model JSON:\n{}\n", model.to_json().unwrap());

    let sample = model.generate(150).unwrap();
    let mut file = std::fs::File::create(&edges_path).unwrap();
    sample.write_edge_list(&mut file).unwrap();
    let mut map = std::fs::File::create(&map_path).unwrap();
    sample.write_id_map(&mut map).unwrap();
    println!(
        "wrote {} hyperedges over {} vertices to {}",
        sample.len(),
        sample.n_vertices(),
        edges_path.display()
    );

    let back = HypergraphSample::read_path(&edges_path).unwrap();
    assert_eq!(back.len(), sample.len());
    assert_eq!(back.n_vertices(), sample.n_vertices());
    println!("re-read the file: m = {}, vertices = {}", back.len(), back.n_vertices());

    let text = std::fs::read_to_string(&edges_path).unwrap();
    println!("\nfirst lines:");
    for line in text.lines().take(5) {
        println!("  {line}");
    }
}
