//! Hypergraph samples: an ordered sequence of hyperedges over interned
//! vertices, plus the hyperdegree index and the binarized (simple-graph)
//! restriction.
//!
//! The edge-list text format is one hyperedge per line, vertex tokens
//! separated by whitespace, `#` starting a comment that runs to end of line,
//! blank lines ignored. Duplicate tokens inside one line collapse (hyperedges
//! are sets). Vertex ids are dense and assigned in first-appearance order, so
//! rebuilding from the same lines yields identical ids.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::Result;

/// Dense vertex identifier, contiguous from 0 in first-appearance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A hyperedge: a set of vertices, stored sorted and deduplicated.
///
/// Empty hyperedges and singletons are allowed; they contribute nothing to
/// any pairwise-edge pattern but still count toward the sample size `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    verts: Vec<u32>,
}

impl Hyperedge {
    pub fn new(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Hyperedge { verts: ids }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.verts.binary_search(&v.0).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.verts.iter().map(|&x| VertexId(x))
    }

    /// Sorted raw ids.
    pub fn raw(&self) -> &[u32] {
        &self.verts
    }
}

/// An ordered sample of `m` hyperedges. The position of a hyperedge is
/// meaningful: position `i` is the color carried by every pairwise edge the
/// hyperedge induces.
#[derive(Clone, Debug)]
pub struct HypergraphSample {
    edges: Vec<Hyperedge>,
    labels: Vec<String>,
    by_label: HashMap<String, u32>,
}

impl HypergraphSample {
    /// Number of hyperedges `m`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Number of distinct vertices observed.
    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.by_label.get(label).map(|&id| VertexId(id))
    }

    /// Build from text lines in the edge-list format.
    pub fn from_lines<I, S>(lines: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut builder = SampleBuilder::default();
        for line in lines {
            let line = line.as_ref();
            let content = line.split('#').next().unwrap_or("");
            let mut ids = Vec::new();
            for token in content.split_whitespace() {
                ids.push(builder.intern(token));
            }
            if !ids.is_empty() {
                builder.push_edge(ids);
            }
        }
        builder.finish()
    }

    /// Build from numeric vertex keys (e.g. generator output). Ids are
    /// re-assigned densely in first-appearance order; the original number
    /// becomes the label.
    pub fn from_numeric_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = Vec<u64>>,
    {
        let mut builder = SampleBuilder::default();
        let mut seen: HashMap<u64, u32> = HashMap::new();
        for edge in edges {
            let ids = edge
                .into_iter()
                .map(|key| match seen.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = builder.intern(&key.to_string());
                        seen.insert(key, id);
                        id
                    }
                })
                .collect();
            builder.push_edge(ids);
        }
        builder.finish()
    }

    pub fn read_path(path: impl AsRef<Path>) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let reader = std::io::BufReader::new(file);
        let mut lines = Vec::new();
        for line in reader.lines() {
            lines.push(line?);
        }
        Ok(Self::from_lines(lines))
    }

    /// Write the sample back out in the edge-list format, one hyperedge per
    /// line with original labels.
    pub fn write_edge_list(&self, mut w: impl Write) -> Result<()> {
        for edge in &self.edges {
            let mut first = true;
            for v in edge.vertices() {
                if !first {
                    write!(w, " ")?;
                }
                write!(w, "{}", self.label(v))?;
                first = false;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Write the id ↔ label mapping as two-column text.
    pub fn write_id_map(&self, mut w: impl Write) -> Result<()> {
        for (id, label) in self.labels.iter().enumerate() {
            writeln!(w, "{}\t{}", id, label)?;
        }
        Ok(())
    }

    /// A new sample containing the hyperedges at `indices`, in the given
    /// order, sharing this sample's vertex ids and labels.
    pub fn subset(&self, indices: &[usize]) -> HypergraphSample {
        HypergraphSample {
            edges: indices.iter().map(|&i| self.edges[i].clone()).collect(),
            labels: self.labels.clone(),
            by_label: self.by_label.clone(),
        }
    }
}

#[derive(Default)]
struct SampleBuilder {
    edges: Vec<Hyperedge>,
    labels: Vec<String>,
    by_label: HashMap<String, u32>,
}

impl SampleBuilder {
    fn intern(&mut self, token: &str) -> u32 {
        if let Some(&id) = self.by_label.get(token) {
            return id;
        }
        let id = self.labels.len() as u32;
        self.labels.push(token.to_string());
        self.by_label.insert(token.to_string(), id);
        id
    }

    fn push_edge(&mut self, ids: Vec<u32>) {
        self.edges.push(Hyperedge::new(ids));
    }

    fn finish(self) -> HypergraphSample {
        HypergraphSample {
            edges: self.edges,
            labels: self.labels,
            by_label: self.by_label,
        }
    }
}

/// Build a sample from token lines. See [`HypergraphSample::from_lines`].
pub fn build_sample<I, S>(lines: I) -> HypergraphSample
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    HypergraphSample::from_lines(lines)
}

/// Hyperdegrees: for each vertex, the number of hyperedges containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeIndex {
    degrees: Vec<u32>,
}

impl DegreeIndex {
    pub fn get(&self, v: VertexId) -> u32 {
        self.degrees.get(v.index()).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }

    /// Boolean mask over vertex ids: true where the hyperdegree is at least
    /// `d`. Used by degree-filtered counting.
    pub fn at_least(&self, d: u32) -> Vec<bool> {
        self.degrees.iter().map(|&deg| deg >= d).collect()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.degrees
    }
}

/// Count hyperdegrees over a slice of hyperedges.
pub fn hyperdegrees(edges: &[Hyperedge]) -> DegreeIndex {
    let n = edges
        .iter()
        .filter_map(|e| e.raw().last().map(|&x| x as usize + 1))
        .max()
        .unwrap_or(0);
    let mut degrees = vec![0u32; n];
    for edge in edges {
        for &v in edge.raw() {
            degrees[v as usize] += 1;
        }
    }
    DegreeIndex { degrees }
}

/// Simple colorless graph obtained by connecting every pair of vertices that
/// co-occur in at least one hyperedge.
#[derive(Clone, Debug)]
pub struct BinaryGraph {
    adj: Vec<Vec<u32>>,
    n_observed: usize,
    edge_count: usize,
}

impl BinaryGraph {
    /// Number of vertex ids spanned (max id + 1); isolated ids in between
    /// have empty adjacency.
    pub fn id_span(&self) -> usize {
        self.adj.len()
    }

    /// Number of vertices that appear in at least one hyperedge.
    pub fn n_observed(&self) -> usize {
        self.n_observed
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj
            .get(a.index())
            .is_some_and(|ns| ns.binary_search(&b.0).is_ok())
    }

    pub fn neighbors(&self, v: VertexId) -> &[u32] {
        self.adj.get(v.index()).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).len()
    }

    /// Undirected edges as ordered pairs (a < b).
    pub fn edge_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, ns)| {
            let a = a as u32;
            ns.iter().copied().filter(move |&b| a < b).map(move |b| (a, b))
        })
    }
}

/// Binarize a hyperedge sample into a simple graph.
pub fn binarize(edges: &[Hyperedge]) -> BinaryGraph {
    let span = edges
        .iter()
        .filter_map(|e| e.raw().last().map(|&x| x as usize + 1))
        .max()
        .unwrap_or(0);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); span];
    let mut observed = vec![false; span];
    for edge in edges {
        let vs = edge.raw();
        for &v in vs {
            observed[v as usize] = true;
        }
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                adj[a as usize].push(b);
                adj[b as usize].push(a);
            }
        }
    }
    let mut edge_count = 0;
    for ns in &mut adj {
        ns.sort_unstable();
        ns.dedup();
        edge_count += ns.len();
    }
    BinaryGraph {
        adj,
        n_observed: observed.iter().filter(|&&x| x).count(),
        edge_count: edge_count / 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ids(edge: &Hyperedge) -> Vec<u32> {
        edge.raw().to_vec()
    }

    #[test]
    fn build_assigns_dense_first_appearance_ids() {
        let s = build_sample(["1 2 3", "2 3"]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.n_vertices(), 3);
        assert_eq!(ids(&s.edges()[0]), vec![0, 1, 2]);
        assert_eq!(ids(&s.edges()[1]), vec![1, 2]);
        assert_eq!(s.label(VertexId(0)), "1");
        assert_eq!(s.vertex("3"), Some(VertexId(2)));
    }

    #[test]
    fn duplicate_tokens_collapse() {
        let s = build_sample(["1 1 2"]);
        assert_eq!(s.len(), 1);
        assert_eq!(ids(&s.edges()[0]), vec![0, 1]);
    }

    #[test]
    fn empty_input_gives_empty_sample() {
        let s = build_sample(Vec::<&str>::new());
        assert_eq!(s.len(), 0);
        assert_eq!(s.n_vertices(), 0);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let s = build_sample(["# header", "", "a b # trailing", "   ", "c"]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.n_vertices(), 3);
        assert_eq!(s.edges()[1].len(), 1);
    }

    #[test]
    fn hyperdegrees_count_memberships() {
        let s = build_sample(["1 2", "2 3"]);
        let d = hyperdegrees(s.edges());
        assert_eq!(d.get(s.vertex("1").unwrap()), 1);
        assert_eq!(d.get(s.vertex("2").unwrap()), 2);
        assert_eq!(d.get(s.vertex("3").unwrap()), 1);
    }

    #[test]
    fn hyperdegrees_single_edge_and_empty() {
        let s = build_sample(["1 2 3"]);
        let d = hyperdegrees(s.edges());
        assert!(s.edges()[0].vertices().all(|v| d.get(v) == 1));
        assert!(hyperdegrees(&[]).is_empty());
    }

    #[test]
    fn binarize_connects_cooccurring_pairs() {
        let s = build_sample(["1 2 3"]);
        let g = binarize(s.edges());
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(VertexId(0), VertexId(1)));
        assert!(g.has_edge(VertexId(0), VertexId(2)));
        assert!(g.has_edge(VertexId(1), VertexId(2)));
    }

    #[test]
    fn binarize_dedups_repeated_edges() {
        let s = build_sample(["1 2", "1 2"]);
        let g = binarize(s.edges());
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn binarize_ignores_singletons() {
        let s = build_sample(["1", "2 3"]);
        let g = binarize(s.edges());
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(VertexId(1), VertexId(2)));
        assert_eq!(g.n_observed(), 3);
    }

    #[test]
    fn id_map_roundtrip() {
        let s = build_sample(["alice bob", "bob carol"]);
        let mut buf = Vec::new();
        s.write_id_map(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "0\talice\n1\tbob\n2\tcarol\n");
    }

    #[test]
    fn edge_list_roundtrip() {
        let s = build_sample(["alice bob carol", "bob", "carol dan"]);
        let mut buf = Vec::new();
        s.write_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let back = build_sample(text.lines());
        assert_eq!(back.len(), s.len());
        assert_eq!(back.n_vertices(), s.n_vertices());
        for (a, b) in s.edges().iter().zip(back.edges()) {
            assert_eq!(a, b);
        }
        for id in 0..s.n_vertices() as u32 {
            assert_eq!(s.label(VertexId(id)), back.label(VertexId(id)));
        }
    }

    proptest! {
        #[test]
        fn rebuild_is_deterministic(lines in proptest::collection::vec("[a-d ]{0,12}", 0..12)) {
            let a = build_sample(&lines);
            let b = build_sample(&lines);
            prop_assert_eq!(a.len(), b.len());
            prop_assert_eq!(a.n_vertices(), b.n_vertices());
            for (ea, eb) in a.edges().iter().zip(b.edges()) {
                prop_assert_eq!(ea, eb);
            }
        }

        #[test]
        fn degree_sum_identity(lines in proptest::collection::vec("[a-h ]{0,16}", 0..16)) {
            let s = build_sample(&lines);
            let d = hyperdegrees(s.edges());
            let total: u64 = s.edges().iter().map(|e| e.len() as u64).sum();
            prop_assert_eq!(d.sum(), total);
        }

        #[test]
        fn binarized_edges_bounded_by_pair_sum(lines in proptest::collection::vec("[a-h ]{0,16}", 0..16)) {
            let s = build_sample(&lines);
            let g = binarize(s.edges());
            let bound: usize = s.edges().iter().map(|e| e.len() * e.len().saturating_sub(1) / 2).sum();
            prop_assert!(g.edge_count() <= bound);
        }
    }
}
