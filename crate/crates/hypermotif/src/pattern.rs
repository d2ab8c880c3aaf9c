//! Small subgraph templates.
//!
//! A [`ColoredPattern`] is a simple graph on `v` labeled vertices whose edges
//! are partitioned into `r` color classes; when matched against a hyperedge
//! tuple, each class binds to one hyperedge. "Simple" means each edge carries
//! exactly one class. Class assignments are unrestricted: adjacent edges may
//! share a class (this is not a proper edge coloring).
//!
//! A [`ColorlessPattern`] is the plain graph template used by colorless,
//! total-copy, and binarized statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_VERTICES: usize = 6;
const MAX_EDGES: usize = 8;

/// Colorless subgraph template: `v` vertices, a set of undirected edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorlessPattern {
    v: u8,
    edges: Vec<(u8, u8)>,
}

impl ColorlessPattern {
    pub fn new(v: usize, edges: Vec<(u8, u8)>) -> Result<Self> {
        if v == 0 || v > MAX_VERTICES {
            return Err(Error::InvalidPattern(format!(
                "vertex count must be 1..={MAX_VERTICES}, got {v}"
            )));
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::InvalidPattern(format!(
                "at most {MAX_EDGES} edges supported, got {}",
                edges.len()
            )));
        }
        let mut norm: Vec<(u8, u8)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidPattern(format!("self-loop at vertex {a}")));
            }
            if a as usize >= v || b as usize >= v {
                return Err(Error::InvalidPattern(format!(
                    "edge ({a},{b}) out of range for v={v}"
                )));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPattern("duplicate edge".into()));
        }
        Ok(ColorlessPattern {
            v: v as u8,
            edges: norm,
        })
    }

    pub fn triangle() -> Self {
        ColorlessPattern::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    pub fn two_star() -> Self {
        ColorlessPattern::new(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    pub fn single_edge() -> Self {
        ColorlessPattern::new(2, vec![(0, 1)]).unwrap()
    }

    pub fn v(&self) -> usize {
        self.v as usize
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn degree(&self, u: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a as usize == u || b as usize == u)
            .count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.v()).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.min_degree() == 0
    }

    /// Number of vertex permutations mapping the edge set onto itself.
    pub fn automorphism_count(&self) -> u64 {
        let mut count = 0;
        for_each_permutation(self.v(), |perm| {
            if self.maps_onto(perm) {
                count += 1;
            }
        });
        count
    }

    fn maps_onto(&self, perm: &[u8]) -> bool {
        self.edges.iter().all(|&(a, b)| {
            let (x, y) = ordered(perm[a as usize], perm[b as usize]);
            self.edges.binary_search(&(x, y)).is_ok()
        })
    }

    /// Canonical encoding, identical for isomorphic patterns.
    pub fn canonical_key(&self) -> Vec<(u8, u8)> {
        let mut best: Option<Vec<(u8, u8)>> = None;
        for_each_permutation(self.v(), |perm| {
            let mut mapped: Vec<(u8, u8)> = self
                .edges
                .iter()
                .map(|&(a, b)| ordered(perm[a as usize], perm[b as usize]))
                .collect();
            mapped.sort_unstable();
            if best.as_ref().is_none_or(|b| mapped < *b) {
                best = Some(mapped);
            }
        });
        best.unwrap_or_default()
    }

    pub fn isomorphic(&self, other: &ColorlessPattern) -> bool {
        self.v == other.v && self.canonical_key() == other.canonical_key()
    }
}

/// Colored subgraph template. `colors[k]` is the class of `edges[k]`; classes
/// are `0..r` and every class is used by at least one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPattern {
    v: u8,
    edges: Vec<(u8, u8)>,
    colors: Vec<u8>,
    r: u8,
    aut_count: u64,
}

impl ColoredPattern {
    pub fn new(v: usize, edges: Vec<(u8, u8)>, colors: Vec<u8>) -> Result<Self> {
        if colors.len() != edges.len() {
            return Err(Error::InvalidPattern(format!(
                "{} edges but {} colors",
                edges.len(),
                colors.len()
            )));
        }
        // Normalize edge order while keeping colors aligned.
        let mut paired: Vec<((u8, u8), u8)> = Vec::with_capacity(edges.len());
        for (&(a, b), &c) in edges.iter().zip(&colors) {
            paired.push((ordered(a, b), c));
        }
        paired.sort_unstable();
        let edges: Vec<(u8, u8)> = paired.iter().map(|&(e, _)| e).collect();
        let colors: Vec<u8> = paired.iter().map(|&(_, c)| c).collect();

        // Validates simplicity, ranges, and caps.
        let colorless = ColorlessPattern::new(v, edges.clone())?;
        let _ = colorless;

        let r = match colors.iter().max() {
            Some(&max) => max as usize + 1,
            None => 0,
        };
        if r > colors.len() {
            return Err(Error::InvalidPattern(
                "color classes exceed edge count".into(),
            ));
        }
        let mut used = vec![false; r];
        for &c in &colors {
            used[c as usize] = true;
        }
        if used.iter().any(|&u| !u) {
            return Err(Error::InvalidPattern(
                "color classes must be contiguous 0..r and all used".into(),
            ));
        }

        let mut pattern = ColoredPattern {
            v: v as u8,
            edges,
            colors,
            r: r as u8,
            aut_count: 0,
        };
        pattern.aut_count = pattern.count_automorphisms();
        Ok(pattern)
    }

    pub fn v(&self) -> usize {
        self.v as usize
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn r(&self) -> usize {
        self.r as usize
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn colors(&self) -> &[u8] {
        &self.colors
    }

    pub fn colorless(&self) -> ColorlessPattern {
        ColorlessPattern::new(self.v(), self.edges.clone()).expect("validated at construction")
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.colorless().has_isolated_vertex()
    }

    /// Number of (vertex, class) automorphism pairs: vertex permutations that
    /// map the edge set onto itself through a consistent class bijection.
    pub fn colored_automorphism_count(&self) -> u64 {
        self.aut_count
    }

    fn count_automorphisms(&self) -> u64 {
        let mut count = 0;
        for_each_permutation(self.v(), |perm| {
            if self.class_map_for(perm).is_some() {
                count += 1;
            }
        });
        count
    }

    /// The class bijection induced by a vertex permutation, if the
    /// permutation preserves the colored structure. For each edge, the class
    /// of the mapped edge must depend only on the class of the source edge.
    fn class_map_for(&self, perm: &[u8]) -> Option<Vec<u8>> {
        let mut map = vec![u8::MAX; self.r()];
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            let target = ordered(perm[a as usize], perm[b as usize]);
            let idx = self.edges.binary_search(&target).ok()?;
            let from = self.colors[k] as usize;
            let to = self.colors[idx];
            if map[from] == u8::MAX {
                map[from] = to;
            } else if map[from] != to {
                return None;
            }
        }
        // Surjectivity of classes makes the map total; check it is injective.
        let mut seen = vec![false; self.r()];
        for &t in &map {
            if t == u8::MAX || seen[t as usize] {
                return None;
            }
            seen[t as usize] = true;
        }
        Some(map)
    }

    /// Canonical encoding under vertex relabeling and class relabeling.
    pub fn canonical_key(&self) -> Vec<(u8, u8, u8)> {
        let mut best: Option<Vec<(u8, u8, u8)>> = None;
        for_each_permutation(self.v(), |perm| {
            let mut mapped: Vec<((u8, u8), u8)> = self
                .edges
                .iter()
                .zip(&self.colors)
                .map(|(&(a, b), &c)| (ordered(perm[a as usize], perm[b as usize]), c))
                .collect();
            mapped.sort_unstable();
            // Relabel classes by first appearance in the sorted edge order.
            let mut relabel = vec![u8::MAX; self.r()];
            let mut next = 0u8;
            let mut key = Vec::with_capacity(mapped.len());
            for ((a, b), c) in mapped {
                let c = c as usize;
                if relabel[c] == u8::MAX {
                    relabel[c] = next;
                    next += 1;
                }
                key.push((a, b, relabel[c]));
            }
            key.sort_unstable();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        best.unwrap_or_default()
    }

    pub fn color_isomorphic(&self, other: &ColoredPattern) -> bool {
        self.v == other.v && self.r == other.r && self.canonical_key() == other.canonical_key()
    }

    /// Per-vertex bitmask of incident color classes (bit `c` set when the
    /// vertex touches a class-`c` edge).
    pub fn vertex_class_masks(&self) -> Vec<u8> {
        let mut masks = vec![0u8; self.v()];
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            let bit = 1u8 << self.colors[k];
            masks[a as usize] |= bit;
            masks[b as usize] |= bit;
        }
        masks
    }
}

fn ordered(a: u8, b: u8) -> (u8, u8) {
    (a.min(b), a.max(b))
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[u8])) {
    let mut perm: Vec<u8> = (0..n as u8).collect();
    permute(&mut perm, 0, &mut f);
}

fn permute(perm: &mut [u8], k: usize, f: &mut impl FnMut(&[u8])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// The named patterns used by the statistics in this crate. Numbers give the
/// count of distinct hyperedges forming the motif: `triangle1` is a triangle
/// whose three edges come from one hyperedge, `triangle3` one where every
/// edge comes from a different hyperedge, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinPattern {
    Triangle1,
    Triangle2,
    Triangle3,
    #[serde(rename = "twostar1")]
    TwoStar1,
    #[serde(rename = "twostar2")]
    TwoStar2,
}

impl BuiltinPattern {
    pub fn all() -> [BuiltinPattern; 5] {
        [
            BuiltinPattern::Triangle1,
            BuiltinPattern::Triangle2,
            BuiltinPattern::Triangle3,
            BuiltinPattern::TwoStar1,
            BuiltinPattern::TwoStar2,
        ]
    }

    pub fn pattern(self) -> ColoredPattern {
        let (edges, colors): (Vec<(u8, u8)>, Vec<u8>) = match self {
            BuiltinPattern::Triangle1 => (vec![(0, 1), (1, 2), (0, 2)], vec![0, 0, 0]),
            BuiltinPattern::Triangle2 => (vec![(0, 1), (1, 2), (0, 2)], vec![0, 1, 1]),
            BuiltinPattern::Triangle3 => (vec![(0, 1), (1, 2), (0, 2)], vec![0, 1, 2]),
            BuiltinPattern::TwoStar1 => (vec![(0, 1), (1, 2)], vec![0, 0]),
            BuiltinPattern::TwoStar2 => (vec![(0, 1), (1, 2)], vec![0, 1]),
        };
        ColoredPattern::new(3, edges, colors).expect("builtin patterns are valid")
    }

    /// True when every edge has its own color class.
    pub fn is_rainbow(self) -> bool {
        let p = self.pattern();
        p.r() == p.e()
    }
}

impl fmt::Display for BuiltinPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BuiltinPattern::Triangle1 => "triangle1",
            BuiltinPattern::Triangle2 => "triangle2",
            BuiltinPattern::Triangle3 => "triangle3",
            BuiltinPattern::TwoStar1 => "twostar1",
            BuiltinPattern::TwoStar2 => "twostar2",
        };
        f.write_str(s)
    }
}

impl FromStr for BuiltinPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "triangle1" => Ok(BuiltinPattern::Triangle1),
            "triangle2" => Ok(BuiltinPattern::Triangle2),
            "triangle3" => Ok(BuiltinPattern::Triangle3),
            "twostar1" => Ok(BuiltinPattern::TwoStar1),
            "twostar2" => Ok(BuiltinPattern::TwoStar2),
            other => Err(Error::UnknownPattern(other.to_string())),
        }
    }
}

/// Structural quantities of a pattern's colorless restriction, as consumed
/// by the stability calculators: the minimum vertex degree and, for each
/// subset size k, the largest number of edges touching any k vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternStats {
    pub v: usize,
    pub e: usize,
    pub r: usize,
    pub min_degree: usize,
    /// `nk[k-1]` is N_k for k = 1..=v-1.
    pub nk: Vec<usize>,
}

impl PatternStats {
    pub fn n(&self, k: usize) -> Option<usize> {
        self.nk.get(k - 1).copied()
    }
}

/// Compute [`PatternStats`] by exhaustive maximization over vertex subsets.
pub fn structure_stats(pattern: &ColoredPattern) -> PatternStats {
    let colorless = pattern.colorless();
    let mut stats = colorless_structure_stats(&colorless);
    stats.r = pattern.r();
    stats
}

/// Same, for a colorless template; `r` is set to `e` (each edge its own
/// color, the rainbow case).
pub fn colorless_structure_stats(pattern: &ColorlessPattern) -> PatternStats {
    let v = pattern.v();
    let e = pattern.e();
    let mut nk = vec![0usize; v.saturating_sub(1)];
    for subset in 1u32..(1 << v) {
        let k = subset.count_ones() as usize;
        if k >= v {
            continue;
        }
        let touched = pattern
            .edges()
            .iter()
            .filter(|&&(a, b)| subset & (1 << a) != 0 || subset & (1 << b) != 0)
            .count();
        if touched > nk[k - 1] {
            nk[k - 1] = touched;
        }
    }
    PatternStats {
        v,
        e,
        r: e,
        min_degree: pattern.min_degree(),
        nk,
    }
}

impl PatternStats {
    /// Alternative structural constants under which published stability
    /// exponents for these motifs take their commonly quoted closed forms.
    /// They differ from the literal subset maximization (triangle N₁ = 3
    /// instead of 2; two-star minimum degree 2 instead of 1), so both are
    /// reported wherever exponents are surfaced.
    pub fn reference_for(builtin: BuiltinPattern) -> Option<PatternStats> {
        match builtin {
            BuiltinPattern::Triangle3 => Some(PatternStats {
                v: 3,
                e: 3,
                r: 3,
                min_degree: 2,
                nk: vec![3, 3],
            }),
            BuiltinPattern::TwoStar2 => Some(PatternStats {
                v: 3,
                e: 2,
                r: 2,
                min_degree: 2,
                nk: vec![2, 2],
            }),
            _ => None,
        }
    }
}

/// Serialized form: `{"v": …, "edges": [[a,b],…], "colors": [c0,…]}`.
#[derive(Serialize, Deserialize)]
struct ColoredPatternJson {
    v: usize,
    edges: Vec<(u8, u8)>,
    colors: Vec<u8>,
}

impl Serialize for ColoredPattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ColoredPatternJson {
            v: self.v(),
            edges: self.edges.clone(),
            colors: self.colors.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ColoredPattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ColoredPatternJson::deserialize(deserializer)?;
        ColoredPattern::new(raw.v, raw.edges, raw.colors).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn builtin_shapes() {
        let t3 = BuiltinPattern::Triangle3.pattern();
        assert_eq!((t3.v(), t3.e(), t3.r()), (3, 3, 3));
        let s2 = BuiltinPattern::TwoStar2.pattern();
        assert_eq!((s2.v(), s2.e(), s2.r()), (3, 2, 2));
        let t1 = BuiltinPattern::Triangle1.pattern();
        assert_eq!((t1.v(), t1.e(), t1.r()), (3, 3, 1));
        let t2 = BuiltinPattern::Triangle2.pattern();
        assert_eq!((t2.v(), t2.e(), t2.r()), (3, 3, 2));
        // triangle2's class sizes are {1, 2}
        let mut sizes = [0usize; 2];
        for &c in t2.colors() {
            sizes[c as usize] += 1;
        }
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 2]);
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(
            "sixstar".parse::<BuiltinPattern>(),
            Err(Error::UnknownPattern(_))
        ));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(ColorlessPattern::triangle().automorphism_count(), 6);
        assert_eq!(ColorlessPattern::two_star().automorphism_count(), 2);
        assert_eq!(
            BuiltinPattern::Triangle1.pattern().colored_automorphism_count(),
            6
        );
        assert_eq!(
            BuiltinPattern::Triangle2.pattern().colored_automorphism_count(),
            2
        );
        assert_eq!(
            BuiltinPattern::Triangle3.pattern().colored_automorphism_count(),
            6
        );
        assert_eq!(
            BuiltinPattern::TwoStar2.pattern().colored_automorphism_count(),
            2
        );
        assert_eq!(
            BuiltinPattern::TwoStar1.pattern().colored_automorphism_count(),
            2
        );
    }

    #[test]
    fn structure_stats_match_hand_enumeration() {
        let tri = colorless_structure_stats(&ColorlessPattern::triangle());
        assert_eq!(tri.min_degree, 2);
        assert_eq!(tri.nk, vec![2, 3]);

        let star = colorless_structure_stats(&ColorlessPattern::two_star());
        assert_eq!(star.min_degree, 1);
        assert_eq!(star.nk, vec![2, 2]);

        let edge = colorless_structure_stats(&ColorlessPattern::single_edge());
        assert_eq!(edge.min_degree, 1);
        assert_eq!(edge.nk, vec![1]);
    }

    #[test]
    fn nk_is_nondecreasing_and_ends_at_edge_count() {
        for b in BuiltinPattern::all() {
            let stats = structure_stats(&b.pattern());
            assert!(stats.nk.windows(2).all(|w| w[0] <= w[1]));
            assert_eq!(*stats.nk.last().unwrap(), stats.e);
        }
    }

    #[test]
    fn color_surjectivity_enforced() {
        // Class 1 unused.
        assert!(ColoredPattern::new(3, vec![(0, 1), (1, 2)], vec![0, 2]).is_err());
        // Length mismatch.
        assert!(ColoredPattern::new(3, vec![(0, 1), (1, 2)], vec![0]).is_err());
        // Self-loop.
        assert!(ColoredPattern::new(3, vec![(0, 0)], vec![0]).is_err());
    }

    #[test]
    fn pattern_json_roundtrip() {
        let p = BuiltinPattern::Triangle2.pattern();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"v":3,"edges":[[0,1],[0,2],[1,2]],"colors":[0,1,1]}"#);
        let back: ColoredPattern = serde_json::from_str(&json).unwrap();
        assert!(p.color_isomorphic(&back));
    }

    /// Brute-force color isomorphism over all (vertex, class) bijections,
    /// independent of the canonical-key path.
    fn brute_color_isomorphic(a: &ColoredPattern, b: &ColoredPattern) -> bool {
        if a.v() != b.v() || a.e() != b.e() || a.r() != b.r() {
            return false;
        }
        let mut found = false;
        for_each_permutation(a.v(), |sigma| {
            if found {
                return;
            }
            // Try to derive a consistent class bijection.
            let mut map = vec![u8::MAX; a.r()];
            let mut ok = true;
            for (k, &(x, y)) in a.edges().iter().enumerate() {
                let target = ordered(sigma[x as usize], sigma[y as usize]);
                match b.edges().binary_search(&target) {
                    Ok(idx) => {
                        let from = a.colors()[k] as usize;
                        let to = b.colors()[idx];
                        if map[from] == u8::MAX {
                            map[from] = to;
                        } else if map[from] != to {
                            ok = false;
                            break;
                        }
                    }
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let mut seen = vec![false; a.r()];
                for &t in &map {
                    if t == u8::MAX || seen[t as usize] {
                        ok = false;
                        break;
                    }
                    seen[t as usize] = true;
                }
            }
            if ok {
                found = true;
            }
        });
        found
    }

    fn arb_pattern() -> impl Strategy<Value = ColoredPattern> {
        (2usize..=4)
            .prop_flat_map(|v| {
                let all_edges: Vec<(u8, u8)> = (0..v as u8)
                    .flat_map(|a| ((a + 1)..v as u8).map(move |b| (a, b)))
                    .collect();
                let n = all_edges.len();
                (
                    Just(all_edges),
                    proptest::collection::vec(any::<bool>(), n),
                    proptest::collection::vec(0u8..3, n),
                )
            })
            .prop_filter_map("needs at least one edge", |(all, mask, colors)| {
                let chosen: Vec<(usize, (u8, u8))> = all
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask[i])
                    .map(|(i, &e)| (i, e))
                    .collect();
                if chosen.is_empty() {
                    return None;
                }
                let v = 1 + chosen
                    .iter()
                    .map(|&(_, (a, b))| a.max(b) as usize)
                    .max()
                    .unwrap();
                let edges: Vec<(u8, u8)> = chosen.iter().map(|&(_, e)| e).collect();
                // Compress colors to a contiguous surjective range.
                let raw: Vec<u8> = chosen.iter().map(|&(i, _)| colors[i]).collect();
                let mut relabel = [u8::MAX; 3];
                let mut next = 0u8;
                let compressed: Vec<u8> = raw
                    .iter()
                    .map(|&c| {
                        if relabel[c as usize] == u8::MAX {
                            relabel[c as usize] = next;
                            next += 1;
                        }
                        relabel[c as usize]
                    })
                    .collect();
                ColoredPattern::new(v, edges, compressed).ok()
            })
    }

    proptest! {
        // Canonical-key equality must behave exactly like brute-force color
        // isomorphism, which makes it an equivalence relation for free.
        #[test]
        fn canonicalization_matches_brute_force(a in arb_pattern(), b in arb_pattern()) {
            prop_assert_eq!(a.color_isomorphic(&b), brute_color_isomorphic(&a, &b));
        }

        #[test]
        fn canonicalization_reflexive(a in arb_pattern()) {
            prop_assert!(a.color_isomorphic(&a));
        }
    }
}
