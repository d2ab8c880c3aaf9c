//! Kernels and estimators for all subgraph statistics.
//!
//! Colored frequencies average a per-tuple kernel over `r`-subsets of the
//! hyperedge sequence. The kernel counts the distinct colored subgraphs,
//! color-isomorphic to the template, whose color set is exactly the tuple;
//! it is evaluated by enumerating (vertex injection, class→position
//! bijection) pairs and dividing by the template's colored automorphism
//! count. Containment of a colored edge decomposes into per-vertex hyperedge
//! memberships, so candidate sets are intersections of the tuple's
//! hyperedges.
//!
//! Colorless frequencies sum, per tuple, over distinct embeddings of the
//! plain template the product over template edges of the number of tuple
//! positions containing that edge — one factor per admissible color choice.
//! The total-copy count applies the same product over the whole sample's
//! edge multiplicities.
//!
//! Complete estimators accumulate exact integer numerators over all
//! `C(m, r)` increasing tuples; incomplete estimators average the kernel
//! over `N` tuples drawn i.i.d. uniformly (with replacement) from the
//! combination space, reproducibly from a seed. All parallel reductions are
//! integer sums, so results are identical at any thread count.

use num_integer::binomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::{BuiltinPattern, ColoredPattern, ColorlessPattern};
use crate::sample::{hyperdegrees, Hyperedge};

/// How an estimator traverses the tuple space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "design", rename_all = "lowercase")]
pub enum Design {
    /// Average over all `C(m, r)` increasing tuples.
    Complete,
    /// Average over `tuples` draws, uniform with replacement over the
    /// combination space, generated from `seed`.
    Incomplete { tuples: u64, seed: u64 },
}

impl Design {
    /// Incomplete design with the default budget `N = ceil(m^1.1)`.
    pub fn incomplete_auto(m: usize, seed: u64) -> Design {
        Design::Incomplete {
            tuples: auto_tuple_count(m),
            seed,
        }
    }
}

/// Default incomplete-design budget, `ceil(m^1.1)`.
pub fn auto_tuple_count(m: usize) -> u64 {
    (m as f64).powf(1.1).ceil() as u64
}

/// A point estimate with its exact rational value and provenance.
#[derive(Clone, Debug, Serialize)]
pub struct Estimate {
    pub value: f64,
    #[serde(skip)]
    pub numerator: u128,
    #[serde(skip)]
    pub denominator: u128,
    pub pattern: String,
    #[serde(flatten)]
    pub design: Design,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter_d: Option<u32>,
    pub m: usize,
}

impl Estimate {
    pub fn exact(&self) -> (u128, u128) {
        (self.numerator, self.denominator)
    }

    fn new(numerator: u128, denominator: u128, pattern: String, design: Design, filter_d: Option<u32>, m: usize) -> Estimate {
        Estimate {
            value: numerator as f64 / denominator as f64,
            numerator,
            denominator,
            pattern,
            design,
            filter_d,
            m,
        }
    }
}

// ---------------------------------------------------------------------------
// Colored kernels
// ---------------------------------------------------------------------------

/// Closed-form kernels for the builtin shapes on the hot paths. Each is an
/// algebraic restatement of the general enumeration, asserted equal to it by
/// property tests and by the brute-force reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FastKernel {
    /// Unicolor triangle: C(k, 3) vertex triples inside one hyperedge.
    Triangle1,
    /// Unicolor two-star: k·(k-1)·(k-2)/2 center/leg choices.
    TwoStar1,
    /// Bicolor two-star: center in the intersection, legs from either side.
    TwoStar2,
    /// Bicolor triangle: a base pair inside the intersection plus an apex
    /// from the doubled side.
    Triangle2,
}

pub(crate) struct ColoredMatcher<'p> {
    masks: Vec<u8>,
    perms: Vec<Vec<u8>>,
    v: usize,
    r: usize,
    aut: u64,
    fast: Option<FastKernel>,
    _pattern: &'p ColoredPattern,
}

fn kept_len(edge: &Hyperedge, keep: Option<&[bool]>) -> u64 {
    match keep {
        None => edge.len() as u64,
        Some(keep) => edge
            .raw()
            .iter()
            .filter(|&&x| keep.get(x as usize).copied().unwrap_or(false))
            .count() as u64,
    }
}

fn kept_intersection_len(a: &Hyperedge, b: &Hyperedge, keep: Option<&[bool]>) -> u64 {
    let (xs, ys) = (a.raw(), b.raw());
    let (mut i, mut j, mut count) = (0, 0, 0u64);
    while i < xs.len() && j < ys.len() {
        match xs[i].cmp(&ys[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if keep.is_none_or(|k| k.get(xs[i] as usize).copied().unwrap_or(false)) {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[derive(Default)]
pub(crate) struct MatchScratch {
    cache: Vec<(u8, Vec<u32>)>,
    active: usize,
    used: Vec<u32>,
    pair_graph: WeightedPairGraph,
}

impl<'p> ColoredMatcher<'p> {
    pub(crate) fn new(pattern: &'p ColoredPattern) -> Result<Self> {
        let mut matcher = Self::new_generic(pattern)?;
        matcher.fast = Self::detect_fast(pattern);
        Ok(matcher)
    }

    /// Generic enumeration only; kept separate so tests can compare it
    /// against the closed forms.
    pub(crate) fn new_generic(pattern: &'p ColoredPattern) -> Result<Self> {
        if pattern.v() == 0 || pattern.e() == 0 || pattern.has_isolated_vertex() {
            return Err(Error::InvalidPattern(
                "counting requires every pattern vertex to touch an edge".into(),
            ));
        }
        let mut perms = Vec::new();
        collect_permutations(pattern.r(), &mut perms);
        Ok(ColoredMatcher {
            masks: pattern.vertex_class_masks(),
            perms,
            v: pattern.v(),
            r: pattern.r(),
            aut: pattern.colored_automorphism_count(),
            fast: None,
            _pattern: pattern,
        })
    }

    fn detect_fast(pattern: &ColoredPattern) -> Option<FastKernel> {
        for (fast, builtin) in [
            (FastKernel::Triangle1, BuiltinPattern::Triangle1),
            (FastKernel::TwoStar1, BuiltinPattern::TwoStar1),
            (FastKernel::TwoStar2, BuiltinPattern::TwoStar2),
            (FastKernel::Triangle2, BuiltinPattern::Triangle2),
        ] {
            if pattern.color_isomorphic(&builtin.pattern()) {
                return Some(fast);
            }
        }
        None
    }

    pub(crate) fn r(&self) -> usize {
        self.r
    }

    /// Kernel value for one tuple: distinct contained copies.
    pub(crate) fn kernel(
        &self,
        tuple: &[&Hyperedge],
        keep: Option<&[bool]>,
        scratch: &mut MatchScratch,
    ) -> u64 {
        debug_assert_eq!(tuple.len(), self.r);
        match self.fast {
            Some(FastKernel::Triangle1) => {
                let k = kept_len(tuple[0], keep);
                k * k.saturating_sub(1) * k.saturating_sub(2) / 6
            }
            Some(FastKernel::TwoStar1) => {
                let k = kept_len(tuple[0], keep);
                k * k.saturating_sub(1) * k.saturating_sub(2) / 2
            }
            Some(FastKernel::TwoStar2) => {
                // Center y in both hyperedges, legs x and z from either,
                // minus the x = z collisions.
                let i = kept_intersection_len(tuple[0], tuple[1], keep);
                let a = kept_len(tuple[0], keep);
                let b = kept_len(tuple[1], keep);
                i * (a.saturating_sub(1) * b.saturating_sub(1)) - i * i.saturating_sub(1)
            }
            Some(FastKernel::Triangle2) => {
                // Base {x, y} inside both hyperedges colored by the single
                // class, apex z elsewhere in the doubled hyperedge.
                let i = kept_intersection_len(tuple[0], tuple[1], keep);
                let base = i * i.saturating_sub(1) / 2;
                let a = kept_len(tuple[0], keep);
                let b = kept_len(tuple[1], keep);
                base * (a.saturating_sub(2) + b.saturating_sub(2))
            }
            None => self.kernel_generic(tuple, keep, scratch),
        }
    }

    pub(crate) fn kernel_generic(
        &self,
        tuple: &[&Hyperedge],
        keep: Option<&[bool]>,
        scratch: &mut MatchScratch,
    ) -> u64 {
        scratch.active = 0;
        let mut pairs = 0u64;
        for perm in &self.perms {
            pairs += self.count_for_perm(perm, tuple, keep, scratch);
        }
        debug_assert!(pairs.is_multiple_of(self.aut));
        pairs / self.aut
    }

    fn count_for_perm(
        &self,
        perm: &[u8],
        tuple: &[&Hyperedge],
        keep: Option<&[bool]>,
        scratch: &mut MatchScratch,
    ) -> u64 {
        // Translate each vertex's class mask into a tuple-position mask.
        let mut slots: [(usize, usize); 6] = [(0, 0); 6];
        for (slot, &mask) in slots[..self.v].iter_mut().zip(&self.masks) {
            let mut pos_mask = 0u8;
            let mut class_bits = mask;
            while class_bits != 0 {
                let c = class_bits.trailing_zeros() as usize;
                class_bits &= class_bits - 1;
                pos_mask |= 1 << perm[c];
            }
            let idx = cached_intersection(scratch, tuple, keep, pos_mask);
            let len = scratch.cache[idx].1.len();
            if len == 0 {
                return 0;
            }
            *slot = (len, idx);
        }
        // Most-constrained-first ordering.
        slots[..self.v].sort_unstable();
        let mut cands: [&[u32]; 6] = [&[]; 6];
        for (i, &(_, idx)) in slots[..self.v].iter().enumerate() {
            cands[i] = &scratch.cache[idx].1;
        }
        scratch.used.clear();
        count_injective(&cands[..self.v], &mut scratch.used)
    }
}

/// Intersection of the tuple's hyperedges selected by `pos_mask`, filtered by
/// `keep`, memoized per tuple in the scratch buffer.
fn cached_intersection(
    scratch: &mut MatchScratch,
    tuple: &[&Hyperedge],
    keep: Option<&[bool]>,
    pos_mask: u8,
) -> usize {
    for (i, entry) in scratch.cache[..scratch.active].iter().enumerate() {
        if entry.0 == pos_mask {
            return i;
        }
    }
    if scratch.active == scratch.cache.len() {
        scratch.cache.push((pos_mask, Vec::new()));
    }
    let idx = scratch.active;
    scratch.active += 1;
    scratch.cache[idx].0 = pos_mask;
    let out = &mut scratch.cache[idx].1;
    out.clear();

    let mut bits = pos_mask;
    let first = bits.trailing_zeros() as usize;
    bits &= bits - 1;
    out.extend_from_slice(tuple[first].raw());
    while bits != 0 {
        let p = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let other = tuple[p].raw();
        out.retain(|&x| other.binary_search(&x).is_ok());
    }
    if let Some(keep) = keep {
        out.retain(|&x| keep.get(x as usize).copied().unwrap_or(false));
    }
    idx
}

fn count_injective(cands: &[&[u32]], used: &mut Vec<u32>) -> u64 {
    let depth = used.len();
    if depth == cands.len() {
        return 1;
    }
    let mut total = 0;
    for &x in cands[depth] {
        if used.contains(&x) {
            continue;
        }
        used.push(x);
        total += count_injective(cands, used);
        used.pop();
    }
    total
}

fn collect_permutations(n: usize, out: &mut Vec<Vec<u8>>) {
    let mut perm: Vec<u8> = (0..n as u8).collect();
    fn rec(perm: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
        if k == perm.len() {
            out.push(perm.clone());
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(perm, k + 1, out);
            perm.swap(k, i);
        }
    }
    rec(&mut perm, 0, out);
}

/// Number of colored copies of `pattern` induced by one hyperedge tuple.
/// The tuple length must equal the pattern's color count.
pub fn colored_kernel(pattern: &ColoredPattern, tuple: &[&Hyperedge]) -> Result<u64> {
    if tuple.len() != pattern.r() {
        return Err(Error::TupleLength {
            expected: pattern.r(),
            got: tuple.len(),
        });
    }
    let matcher = ColoredMatcher::new(pattern)?;
    let mut scratch = MatchScratch::default();
    Ok(matcher.kernel(tuple, None, &mut scratch))
}

// ---------------------------------------------------------------------------
// Tuple traversal
// ---------------------------------------------------------------------------

fn check_m_r(m: usize, r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("statistic order r must be >= 1".into()));
    }
    if m < r {
        return Err(Error::SampleTooSmall { m, r });
    }
    Ok(())
}

/// Draw `n` increasing index tuples, i.i.d. uniform over `C(m, r)`
/// combinations, as a flat vector with stride `r`. Distinct indices are
/// drawn by rejection (r is tiny), then sorted.
pub(crate) fn sample_tuples(m: usize, r: usize, n: u64, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flat = Vec::with_capacity(n as usize * r);
    let mut buf: Vec<u32> = Vec::with_capacity(r);
    for _ in 0..n {
        buf.clear();
        while buf.len() < r {
            let x = rng.random_range(0..m as u32);
            if !buf.contains(&x) {
                buf.push(x);
            }
        }
        buf.sort_unstable();
        flat.extend_from_slice(&buf);
    }
    flat
}

/// Exact integer numerator of an estimator: the sum of `eval` over tuples,
/// complete or sampled, with the matching denominator.
fn accumulate<F>(edges: &[Hyperedge], r: usize, design: &Design, eval: F) -> Result<(u128, u128)>
where
    F: Fn(&[&Hyperedge], &mut MatchScratch) -> u64 + Sync,
{
    let m = edges.len();
    check_m_r(m, r)?;
    match *design {
        Design::Complete => {
            let num = sum_complete(edges, r, &eval);
            Ok((num, binomial(m as u128, r as u128)))
        }
        Design::Incomplete { tuples, seed } => {
            if tuples == 0 {
                return Err(Error::EmptyDesign);
            }
            let flat = sample_tuples(m, r, tuples, seed);
            let num: u128 = flat
                .par_chunks(r)
                .map_init(MatchScratch::default, |scratch, chunk| {
                    let mut tuple: [&Hyperedge; 8] = [&edges[0]; 8];
                    for (slot, &i) in tuple.iter_mut().zip(chunk) {
                        *slot = &edges[i as usize];
                    }
                    eval(&tuple[..r], scratch) as u128
                })
                .sum();
            Ok((num, tuples as u128))
        }
    }
}

fn sum_complete<F>(edges: &[Hyperedge], r: usize, eval: &F) -> u128
where
    F: Fn(&[&Hyperedge], &mut MatchScratch) -> u64 + Sync,
{
    let m = edges.len();
    match r {
        1 => edges
            .par_iter()
            .map_init(MatchScratch::default, |scratch, e| eval(&[e], scratch) as u128)
            .sum(),
        2 => (0..m)
            .into_par_iter()
            .map_init(MatchScratch::default, |scratch, i| {
                let mut local = 0u128;
                for j in (i + 1)..m {
                    local += eval(&[&edges[i], &edges[j]], scratch) as u128;
                }
                local
            })
            .sum(),
        3 => (0..m)
            .into_par_iter()
            .map_init(MatchScratch::default, |scratch, i| {
                let mut local = 0u128;
                for j in (i + 1)..m {
                    for k in (j + 1)..m {
                        local += eval(&[&edges[i], &edges[j], &edges[k]], scratch) as u128;
                    }
                }
                local
            })
            .sum(),
        _ => {
            // Higher orders are rare; walk combinations sequentially.
            let mut idx: Vec<usize> = (0..r).collect();
            let mut scratch = MatchScratch::default();
            let mut tuple: Vec<&Hyperedge> = idx.iter().map(|&i| &edges[i]).collect();
            let mut total = 0u128;
            loop {
                for (slot, &i) in tuple.iter_mut().zip(&idx) {
                    *slot = &edges[i];
                }
                total += eval(&tuple, &mut scratch) as u128;
                // Advance the combination.
                let mut k = r;
                loop {
                    if k == 0 {
                        return total;
                    }
                    k -= 1;
                    if idx[k] != k + m - r {
                        break;
                    }
                }
                idx[k] += 1;
                for j in (k + 1)..r {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Colored estimators
// ---------------------------------------------------------------------------

/// Colored subgraph frequency: the average of [`colored_kernel`] over
/// hyperedge tuples.
pub fn estimate_colored(edges: &[Hyperedge], pattern: &ColoredPattern, design: &Design) -> Result<Estimate> {
    let matcher = ColoredMatcher::new(pattern)?;
    let (num, den) = accumulate(edges, matcher.r(), design, |tuple, scratch| {
        matcher.kernel(tuple, None, scratch)
    })?;
    Ok(Estimate::new(num, den, describe_colored(pattern), *design, None, edges.len()))
}

/// Degree-filtered colored frequency: identical to [`estimate_colored`]
/// except embeddings may only use vertices whose hyperdegree in the *full*
/// sample is at least `d`.
pub fn estimate_degree_filtered(
    edges: &[Hyperedge],
    pattern: &ColoredPattern,
    d: u32,
    design: &Design,
) -> Result<Estimate> {
    let matcher = ColoredMatcher::new(pattern)?;
    let keep = hyperdegrees(edges).at_least(d);
    let (num, den) = accumulate(edges, matcher.r(), design, |tuple, scratch| {
        matcher.kernel(tuple, Some(&keep), scratch)
    })?;
    Ok(Estimate::new(num, den, describe_colored(pattern), *design, Some(d), edges.len()))
}

fn describe_colored(pattern: &ColoredPattern) -> String {
    format!("colored(v={},e={},r={})", pattern.v(), pattern.e(), pattern.r())
}

// ---------------------------------------------------------------------------
// Weighted pair graphs and colorless matching
// ---------------------------------------------------------------------------

/// Pairwise co-occurrence graph of a set of hyperedges, with each edge
/// weighted by the number of hyperedges containing it (clamped to 1 when
/// binarized). CSR layout with reusable buffers: per-tuple kernels rebuild
/// it millions of times and must not allocate.
#[derive(Default)]
pub(crate) struct WeightedPairGraph {
    verts: Vec<u32>,
    offsets: Vec<u32>,
    neighbors: Vec<(u32, u64)>,
    // rebuild scratch
    locals: Vec<u32>,
    pairs: Vec<(u32, u32)>,
    runs: Vec<(u32, u32, u64)>,
    cursor: Vec<u32>,
}

impl WeightedPairGraph {
    pub(crate) fn rebuild<'a, I>(&mut self, edges: I, binarized: bool)
    where
        I: Iterator<Item = &'a Hyperedge> + Clone,
    {
        self.verts.clear();
        for e in edges.clone() {
            self.verts.extend_from_slice(e.raw());
        }
        self.verts.sort_unstable();
        self.verts.dedup();
        let n = self.verts.len();

        self.pairs.clear();
        for e in edges {
            self.locals.clear();
            for &x in e.raw() {
                self.locals.push(self.verts.binary_search(&x).unwrap() as u32);
            }
            for (i, &a) in self.locals.iter().enumerate() {
                for &b in &self.locals[i + 1..] {
                    self.pairs.push((a.min(b), a.max(b)));
                }
            }
        }
        self.pairs.sort_unstable();

        self.runs.clear();
        let mut i = 0;
        while i < self.pairs.len() {
            let (a, b) = self.pairs[i];
            let mut j = i + 1;
            while j < self.pairs.len() && self.pairs[j] == (a, b) {
                j += 1;
            }
            let mult = if binarized { 1 } else { (j - i) as u64 };
            self.runs.push((a, b, mult));
            i = j;
        }

        self.offsets.clear();
        self.offsets.resize(n + 1, 0);
        for &(a, b, _) in &self.runs {
            self.offsets[a as usize + 1] += 1;
            self.offsets[b as usize + 1] += 1;
        }
        for i in 0..n {
            self.offsets[i + 1] += self.offsets[i];
        }
        self.cursor.clear();
        self.cursor.extend_from_slice(&self.offsets[..n]);
        self.neighbors.clear();
        self.neighbors.resize(self.offsets[n] as usize, (0, 0));
        // Runs arrive sorted by (a, b), so each row fills in ascending
        // neighbor order: smaller partners first, then larger.
        for &(a, b, w) in &self.runs {
            self.neighbors[self.cursor[a as usize] as usize] = (b, w);
            self.cursor[a as usize] += 1;
            self.neighbors[self.cursor[b as usize] as usize] = (a, w);
            self.cursor[b as usize] += 1;
        }
    }

    fn n_local(&self) -> usize {
        self.verts.len()
    }

    fn row(&self, a: u32) -> &[(u32, u64)] {
        &self.neighbors[self.offsets[a as usize] as usize..self.offsets[a as usize + 1] as usize]
    }

    fn mult(&self, a: u32, b: u32) -> u64 {
        match self.row(a).binary_search_by_key(&b, |&(x, _)| x) {
            Ok(i) => self.row(a)[i].1,
            Err(_) => 0,
        }
    }
}

/// Embedding plan for a colorless template: a visit order in which every
/// vertex after a component start attaches to an already-placed neighbor.
pub(crate) struct ColorlessMatcher {
    anchor: Vec<Option<u8>>,
    checks: Vec<Vec<u8>>,
    aut: u64,
    v: usize,
    triangle: bool,
}

impl ColorlessMatcher {
    pub(crate) fn new(shape: &ColorlessPattern) -> Result<Self> {
        let mut matcher = Self::new_generic(shape)?;
        matcher.triangle = shape.isomorphic(&ColorlessPattern::triangle());
        Ok(matcher)
    }

    pub(crate) fn new_generic(shape: &ColorlessPattern) -> Result<Self> {
        if shape.e() == 0 || shape.has_isolated_vertex() {
            return Err(Error::InvalidPattern(
                "counting requires every pattern vertex to touch an edge".into(),
            ));
        }
        let v = shape.v();
        let mut adjacency: Vec<Vec<u8>> = vec![Vec::new(); v];
        for &(a, b) in shape.edges() {
            adjacency[a as usize].push(b);
            adjacency[b as usize].push(a);
        }

        let mut order: Vec<u8> = Vec::with_capacity(v);
        let mut placed_at = vec![usize::MAX; v];
        while order.len() < v {
            // Component start: highest-degree unplaced vertex.
            let start = (0..v)
                .filter(|&u| placed_at[u] == usize::MAX)
                .max_by_key(|&u| adjacency[u].len())
                .unwrap();
            placed_at[start] = order.len();
            order.push(start as u8);
            // Grow by attaching vertices adjacent to the placed set.
            loop {
                let next = (0..v).filter(|&u| placed_at[u] == usize::MAX).find(|&u| {
                    adjacency[u].iter().any(|&n| placed_at[n as usize] != usize::MAX)
                });
                match next {
                    Some(u) => {
                        placed_at[u] = order.len();
                        order.push(u as u8);
                    }
                    None => break,
                }
            }
        }

        let mut anchor = Vec::with_capacity(v);
        let mut checks = Vec::with_capacity(v);
        for (step, &u) in order.iter().enumerate() {
            let mut placed_neighbors: Vec<u8> = adjacency[u as usize]
                .iter()
                .copied()
                .filter(|&n| placed_at[n as usize] < step)
                .map(|n| placed_at[n as usize] as u8)
                .collect();
            placed_neighbors.sort_unstable();
            anchor.push(placed_neighbors.first().copied());
            checks.push(placed_neighbors.get(1..).unwrap_or(&[]).to_vec());
        }

        Ok(ColorlessMatcher {
            anchor,
            checks,
            aut: shape.automorphism_count(),
            v,
            triangle: false,
        })
    }

    /// Sum over distinct embeddings of the product of edge weights.
    pub(crate) fn weighted_count(&self, g: &WeightedPairGraph) -> u128 {
        if self.triangle {
            return Self::weighted_triangles(g);
        }
        self.weighted_count_generic(g)
    }

    pub(crate) fn weighted_count_generic(&self, g: &WeightedPairGraph) -> u128 {
        let mut assignment = [u32::MAX; 6];
        let mut total = 0u128;
        self.recurse(g, 0, 1, &mut assignment, &mut total);
        debug_assert!(total.is_multiple_of(self.aut as u128));
        total / self.aut as u128
    }

    /// Each triangle a < b < c once, weight w_ab·w_ac·w_bc.
    fn weighted_triangles(g: &WeightedPairGraph) -> u128 {
        let mut total = 0u128;
        for a in 0..g.n_local() as u32 {
            let row = g.row(a);
            let start = row.partition_point(|&(x, _)| x <= a);
            let above = &row[start..];
            for (i, &(b, w_ab)) in above.iter().enumerate() {
                for &(c, w_ac) in &above[i + 1..] {
                    let w_bc = g.mult(b, c);
                    if w_bc > 0 {
                        total += w_ab as u128 * w_ac as u128 * w_bc as u128;
                    }
                }
            }
        }
        total
    }

    fn recurse(
        &self,
        g: &WeightedPairGraph,
        step: usize,
        acc: u128,
        assignment: &mut [u32; 6],
        total: &mut u128,
    ) {
        if step == self.v {
            *total += acc;
            return;
        }
        match self.anchor[step] {
            None => {
                for cand in 0..g.n_local() as u32 {
                    if assignment[..step].contains(&cand) {
                        continue;
                    }
                    assignment[step] = cand;
                    self.recurse(g, step + 1, acc, assignment, total);
                }
            }
            Some(a) => {
                let base = assignment[a as usize];
                for &(cand, w) in g.row(base) {
                    if assignment[..step].contains(&cand) {
                        continue;
                    }
                    let mut weight = w as u128;
                    for &c in &self.checks[step] {
                        let m = g.mult(assignment[c as usize], cand);
                        if m == 0 {
                            weight = 0;
                            break;
                        }
                        weight *= m as u128;
                    }
                    if weight == 0 {
                        continue;
                    }
                    assignment[step] = cand;
                    self.recurse(g, step + 1, acc * weight, assignment, total);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Colorless estimators
// ---------------------------------------------------------------------------

/// Colorless subgraph frequency of order `r`: per tuple, counts the simple
/// colored subgraphs (over every color subset of the tuple) whose colorless
/// restriction is isomorphic to `shape`, normalized by `C(m, r)`.
pub fn estimate_colorless(
    edges: &[Hyperedge],
    shape: &ColorlessPattern,
    r: usize,
    design: &Design,
) -> Result<Estimate> {
    let matcher = ColorlessMatcher::new(shape)?;
    let (num, den) = accumulate(edges, r, design, |tuple, scratch| {
        scratch.pair_graph.rebuild(tuple.iter().copied(), false);
        let count = matcher.weighted_count(&scratch.pair_graph);
        u64::try_from(count).expect("per-tuple colorless count fits u64")
    })?;
    Ok(Estimate::new(
        num,
        den,
        format!("colorless(v={},e={},r={})", shape.v(), shape.e(), r),
        *design,
        None,
        edges.len(),
    ))
}

/// Total number of simple colored copies of `shape` in the whole sample:
/// for every placement of the template, the product over template edges of
/// the edge's multiplicity, summed over distinct placements.
pub fn total_copies(edges: &[Hyperedge], shape: &ColorlessPattern) -> Result<u128> {
    let matcher = ColorlessMatcher::new(shape)?;
    let mut g = WeightedPairGraph::default();
    g.rebuild(edges.iter(), false);
    Ok(matcher.weighted_count(&g))
}

/// Number of subgraphs of the binarized sample isomorphic to `shape` (each
/// copy counted once).
pub fn binarized_count(edges: &[Hyperedge], shape: &ColorlessPattern) -> Result<u64> {
    let matcher = ColorlessMatcher::new(shape)?;
    let mut g = WeightedPairGraph::default();
    g.rebuild(edges.iter(), true);
    let count = matcher.weighted_count(&g);
    u64::try_from(count).map_err(|_| Error::InvalidArgument("binarized count exceeds u64".into()))
}

/// Number of distinct vertex sets of cardinality exactly `k` that occur as a
/// whole hyperedge.
pub fn unique_k_count(edges: &[Hyperedge], k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let mut seen: std::collections::HashSet<&[u32]> = std::collections::HashSet::new();
    for e in edges {
        if e.len() == k {
            seen.insert(e.raw());
        }
    }
    Ok(seen.len() as u64)
}

/// Which transitivity ratio to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusteringKind {
    /// Ratio of the two-hyperedge triangle frequency to the two-hyperedge
    /// two-star frequency.
    Type2,
    /// 3 × triangles / two-stars on the binarized graph.
    Binarized,
}

/// Transitivity of the sample. Errors when the denominator statistic is
/// zero.
pub fn clustering_coefficient(edges: &[Hyperedge], kind: ClusteringKind, design: &Design) -> Result<f64> {
    match kind {
        ClusteringKind::Type2 => {
            let num = estimate_colored(edges, &BuiltinPattern::Triangle2.pattern(), design)?;
            let den = estimate_colored(edges, &BuiltinPattern::TwoStar2.pattern(), design)?;
            if den.numerator == 0 {
                return Err(Error::ZeroDenominator);
            }
            Ok(num.value / den.value)
        }
        ClusteringKind::Binarized => {
            let tri = binarized_count(edges, &ColorlessPattern::triangle())?;
            let stars = binarized_count(edges, &ColorlessPattern::two_star())?;
            if stars == 0 {
                return Err(Error::ZeroDenominator);
            }
            Ok(3.0 * tri as f64 / stars as f64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::build_sample;
    use proptest::prelude::*;

    fn edges_of(lines: &[&str]) -> Vec<Hyperedge> {
        build_sample(lines.iter().copied()).edges().to_vec()
    }

    fn tuple<'a>(edges: &'a [Hyperedge], idx: &[usize]) -> Vec<&'a Hyperedge> {
        idx.iter().map(|&i| &edges[i]).collect()
    }

    #[test]
    fn kernel_triangle1_counts_vertex_triples() {
        let edges = edges_of(&["1 2 3 4"]);
        let p = BuiltinPattern::Triangle1.pattern();
        assert_eq!(colored_kernel(&p, &tuple(&edges, &[0])).unwrap(), 4);
    }

    #[test]
    fn kernel_triangle3_single_copy() {
        let edges = edges_of(&["1 2", "2 3", "1 3"]);
        let p = BuiltinPattern::Triangle3.pattern();
        assert_eq!(colored_kernel(&p, &tuple(&edges, &[0, 1, 2])).unwrap(), 1);
    }

    #[test]
    fn kernel_twostar2_disjoint_edges() {
        let edges = edges_of(&["1 2", "3 4"]);
        let p = BuiltinPattern::TwoStar2.pattern();
        assert_eq!(colored_kernel(&p, &tuple(&edges, &[0, 1])).unwrap(), 0);
    }

    #[test]
    fn kernel_rejects_wrong_tuple_length() {
        let edges = edges_of(&["1 2", "2 3"]);
        let p = BuiltinPattern::Triangle3.pattern();
        assert!(matches!(
            colored_kernel(&p, &tuple(&edges, &[0, 1])),
            Err(Error::TupleLength { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn estimate_triangle1_on_repeated_edges() {
        let edges = edges_of(&["1 2 3", "1 2 3", "1 2 3"]);
        let p = BuiltinPattern::Triangle1.pattern();
        let est = estimate_colored(&edges, &p, &Design::Complete).unwrap();
        assert_eq!(est.exact(), (3, 3));
        assert_eq!(est.value, 1.0);
    }

    #[test]
    fn estimate_triangle2_mixed_pair() {
        let edges = edges_of(&["1 2", "1 2 3"]);
        let p = BuiltinPattern::Triangle2.pattern();
        let est = estimate_colored(&edges, &p, &Design::Complete).unwrap();
        assert_eq!(est.exact(), (1, 1));
    }

    #[test]
    fn estimate_twostar2_two_centers() {
        let edges = edges_of(&["1 2 3", "1 2"]);
        let p = BuiltinPattern::TwoStar2.pattern();
        let est = estimate_colored(&edges, &p, &Design::Complete).unwrap();
        assert_eq!(est.exact(), (2, 1));
    }

    #[test]
    fn estimate_needs_enough_edges() {
        let edges = edges_of(&["1 2"]);
        let p = BuiltinPattern::Triangle3.pattern();
        assert!(matches!(
            estimate_colored(&edges, &p, &Design::Complete),
            Err(Error::SampleTooSmall { m: 1, r: 3 })
        ));
    }

    #[test]
    fn incomplete_with_zero_tuples_is_an_error() {
        let edges = edges_of(&["1 2", "2 3"]);
        let p = BuiltinPattern::TwoStar2.pattern();
        assert!(matches!(
            estimate_colored(&edges, &p, &Design::Incomplete { tuples: 0, seed: 1 }),
            Err(Error::EmptyDesign)
        ));
    }

    #[test]
    fn colorless_triangle_r2() {
        let edges = edges_of(&["1 2 3", "1 2"]);
        let est = estimate_colorless(&edges, &ColorlessPattern::triangle(), 2, &Design::Complete).unwrap();
        assert_eq!(est.exact(), (2, 1));
    }

    #[test]
    fn colorless_triangle_r1_needs_a_triple() {
        let edges = edges_of(&["1 2"]);
        let est = estimate_colorless(&edges, &ColorlessPattern::triangle(), 1, &Design::Complete).unwrap();
        assert_eq!(est.numerator, 0);
    }

    #[test]
    fn colorless_zero_on_singletons() {
        let edges = edges_of(&["1", "2", "3"]);
        for shape in [ColorlessPattern::triangle(), ColorlessPattern::two_star()] {
            let est = estimate_colorless(&edges, &shape, 2, &Design::Complete).unwrap();
            assert_eq!(est.numerator, 0);
        }
    }

    #[test]
    fn total_copies_examples() {
        let tri = ColorlessPattern::triangle();
        assert_eq!(total_copies(&edges_of(&["1 2 3"]), &tri).unwrap(), 1);
        assert_eq!(total_copies(&edges_of(&["1 2 3", "1 2 3"]), &tri).unwrap(), 8);
        assert_eq!(total_copies(&edges_of(&["1 2", "2 3"]), &tri).unwrap(), 0);
    }

    #[test]
    fn degree_filter_examples() {
        let edges = edges_of(&["1 2", "1 2", "1 3"]);
        let p = BuiltinPattern::TwoStar2.pattern();
        let unfiltered = estimate_colored(&edges, &p, &Design::Complete).unwrap();
        assert_eq!(unfiltered.exact(), (2, 3));

        let filtered = estimate_degree_filtered(&edges, &p, 2, &Design::Complete).unwrap();
        assert_eq!(filtered.numerator, 0);

        // d = 0 is a vacuous filter.
        let d0 = estimate_degree_filtered(&edges, &p, 0, &Design::Complete).unwrap();
        assert_eq!(d0.exact(), unfiltered.exact());

        // d = m + 1 removes every vertex.
        let too_high = estimate_degree_filtered(&edges, &p, edges.len() as u32 + 1, &Design::Complete).unwrap();
        assert_eq!(too_high.numerator, 0);
    }

    #[test]
    fn unique_k_examples() {
        let edges = edges_of(&["1 2", "1 2", "2 3", "1 2 3"]);
        assert_eq!(unique_k_count(&edges, 2).unwrap(), 2);
        let edges = edges_of(&["1 2 3", "1 2 3"]);
        assert_eq!(unique_k_count(&edges, 3).unwrap(), 1);
        assert_eq!(unique_k_count(&[], 5).unwrap(), 0);
        assert!(unique_k_count(&[], 0).is_err());
    }

    #[test]
    fn binarized_count_examples() {
        let tri = ColorlessPattern::triangle();
        assert_eq!(binarized_count(&edges_of(&["1 2 3 4"]), &tri).unwrap(), 4);
        assert_eq!(binarized_count(&edges_of(&["1 2", "2 3", "1 3"]), &tri).unwrap(), 1);
        let star = ColorlessPattern::two_star();
        assert_eq!(binarized_count(&edges_of(&["1 2"]), &star).unwrap(), 0);
    }

    #[test]
    fn clustering_examples() {
        let edges = edges_of(&["1 2 3", "1 2"]);
        let cc = clustering_coefficient(&edges, ClusteringKind::Type2, &Design::Complete).unwrap();
        assert_eq!(cc, 0.5);

        let cc = clustering_coefficient(&edges_of(&["1 2 3"]), ClusteringKind::Binarized, &Design::Complete).unwrap();
        assert_eq!(cc, 1.0);

        assert!(matches!(
            clustering_coefficient(&edges_of(&["1 2", "3 4"]), ClusteringKind::Type2, &Design::Complete),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn auto_budget_is_m_to_the_1_1() {
        assert_eq!(auto_tuple_count(500), 931);
        assert_eq!(auto_tuple_count(300), 531);
    }

    // Exercises the generic combination walker (r >= 4) against the oracle.
    #[test]
    fn rainbow_square_complete_matches_oracle() {
        let square = ColoredPattern::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)], vec![0, 1, 2, 3]).unwrap();
        let edges = edges_of(&["1 2", "2 3", "3 4", "1 4", "1 2 3 4"]);
        let est = estimate_colored(&edges, &square, &Design::Complete).unwrap();
        assert_eq!(
            est.exact(),
            crate::oracle::colored_complete(&square, &edges).unwrap()
        );
        assert!(est.numerator > 0, "the square spanning the four pair edges should count");
    }

    fn arb_edges() -> impl Strategy<Value = Vec<Hyperedge>> {
        proptest::collection::vec(
            proptest::collection::vec(0u32..8, 1..5).prop_map(Hyperedge::new),
            3..=6,
        )
    }

    proptest! {
        // Complete estimates are symmetric in the hyperedge order.
        #[test]
        fn complete_estimates_are_permutation_invariant(edges in arb_edges(), swap in any::<(usize, usize)>()) {
            let mut permuted = edges.clone();
            let a = swap.0 % permuted.len();
            let b = swap.1 % permuted.len();
            permuted.swap(a, b);
            for builtin in BuiltinPattern::all() {
                let p = builtin.pattern();
                let x = estimate_colored(&edges, &p, &Design::Complete).unwrap();
                let y = estimate_colored(&permuted, &p, &Design::Complete).unwrap();
                prop_assert_eq!(x.exact(), y.exact());
            }
        }

        // Raising the filter threshold never increases the estimate.
        #[test]
        fn degree_filter_is_monotone(edges in arb_edges()) {
            let p = BuiltinPattern::TwoStar2.pattern();
            let mut last = u128::MAX;
            for d in 0..4u32 {
                let est = estimate_degree_filtered(&edges, &p, d, &Design::Complete).unwrap();
                prop_assert!(est.numerator <= last);
                last = est.numerator;
            }
        }

        // The closed-form kernels agree with the generic enumeration,
        // filtered or not, on every tuple.
        #[test]
        fn fast_kernels_match_generic(edges in arb_edges(), d in 0u32..4) {
            let keep = hyperdegrees(&edges).at_least(d);
            let m = edges.len();
            for builtin in BuiltinPattern::all() {
                let p = builtin.pattern();
                let fast = ColoredMatcher::new(&p).unwrap();
                let generic = ColoredMatcher::new_generic(&p).unwrap();
                let mut s1 = MatchScratch::default();
                let mut s2 = MatchScratch::default();
                let mut check = |tuple: &[&Hyperedge]| {
                    for keep in [None, Some(keep.as_slice())] {
                        assert_eq!(
                            fast.kernel(tuple, keep, &mut s1),
                            generic.kernel_generic(tuple, keep, &mut s2),
                            "pattern {builtin}"
                        );
                    }
                };
                match p.r() {
                    1 => edges.iter().for_each(|e| check(&[e])),
                    2 => {
                        for i in 0..m {
                            for j in (i + 1)..m {
                                check(&[&edges[i], &edges[j]]);
                            }
                        }
                    }
                    _ => {}
                }
            }
        }

        #[test]
        fn fast_triangle_count_matches_generic(edges in arb_edges()) {
            let shape = ColorlessPattern::triangle();
            let fast = ColorlessMatcher::new(&shape).unwrap();
            let generic = ColorlessMatcher::new_generic(&shape).unwrap();
            let mut g = WeightedPairGraph::default();
            for i in 0..edges.len() {
                for j in (i + 1)..edges.len() {
                    for k in (j + 1)..edges.len() {
                        g.rebuild([&edges[i], &edges[j], &edges[k]].into_iter(), false);
                        prop_assert_eq!(fast.weighted_count(&g), generic.weighted_count_generic(&g));
                    }
                }
            }
            g.rebuild(edges.iter(), false);
            prop_assert_eq!(fast.weighted_count(&g), generic.weighted_count_generic(&g));
        }

        // Distinct k-sets cannot exceed the number of k-size hyperedges,
        // with equality iff those hyperedges are pairwise distinct.
        #[test]
        fn unique_k_bound(edges in arb_edges(), k in 1usize..5) {
            let count = unique_k_count(&edges, k).unwrap();
            let of_size: Vec<&Hyperedge> = edges.iter().filter(|e| e.len() == k).collect();
            prop_assert!(count <= of_size.len() as u64);
            let mut dedup: Vec<_> = of_size.iter().map(|e| e.raw().to_vec()).collect();
            dedup.sort();
            dedup.dedup();
            prop_assert_eq!(count == of_size.len() as u64, dedup.len() == of_size.len());
        }
    }
}
