//! Definition-first reference counters.
//!
//! Everything here enumerates literally: every increasing hyperedge tuple,
//! every vertex subset of the observed vertex set, every injective vertex
//! map, and every color assignment, materializing each candidate colored
//! subgraph and deduplicating in a set before the containment check. None of
//! the matching machinery from [`crate::count`] is used; equality between
//! the two paths is asserted by tests and by the acceptance suite.
//!
//! Inputs are capped (m ≤ 8, at most 10 distinct vertices, pattern v ≤ 4):
//! these functions exist for validation, not production counting.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::pattern::{ColoredPattern, ColorlessPattern};
use crate::sample::Hyperedge;

const MAX_M: usize = 8;
const MAX_VERTS: usize = 10;
const MAX_PATTERN_V: usize = 4;

fn observed_vertices(edges: &[Hyperedge]) -> Vec<u32> {
    let mut verts: Vec<u32> = edges.iter().flat_map(|e| e.raw().iter().copied()).collect();
    verts.sort_unstable();
    verts.dedup();
    verts
}

fn check_caps(edges: &[Hyperedge], pattern_v: usize) -> Result<Vec<u32>> {
    if edges.len() > MAX_M {
        return Err(Error::OracleCap(format!("m = {} > {MAX_M}", edges.len())));
    }
    let verts = observed_vertices(edges);
    if verts.len() > MAX_VERTS {
        return Err(Error::OracleCap(format!("{} observed vertices > {MAX_VERTS}", verts.len())));
    }
    if pattern_v > MAX_PATTERN_V {
        return Err(Error::OracleCap(format!("pattern v = {pattern_v} > {MAX_PATTERN_V}")));
    }
    Ok(verts)
}

/// Packed encoding of a candidate colored subgraph: the vertex set (bitmask
/// over global ids, which the caps keep below 10) followed by the sorted
/// colored edge list, 12 bits each.
fn pack(vertex_mask: u16, edges: &mut [(u32, u32, u8)]) -> u128 {
    edges.sort_unstable();
    let mut key = vertex_mask as u128;
    for &(a, b, c) in edges.iter() {
        key = (key << 12) | ((a as u128) << 8) | ((b as u128) << 4) | (c as u128);
    }
    key
}

fn for_each_subset(items: &[u32], k: usize, f: &mut impl FnMut(&[u32])) {
    fn rec(items: &[u32], k: usize, start: usize, chosen: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if chosen.len() == k {
            f(chosen);
            return;
        }
        let needed = k - chosen.len();
        for i in start..=items.len().saturating_sub(needed) {
            chosen.push(items[i]);
            rec(items, k, i + 1, chosen, f);
            chosen.pop();
        }
    }
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::new(), f);
    }
}

fn for_each_arrangement(items: &[u32], f: &mut impl FnMut(&[u32])) {
    fn rec(current: &mut Vec<u32>, rest: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if rest.is_empty() {
            f(current);
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            current.push(x);
            rec(current, rest, f);
            current.pop();
            rest.insert(i, x);
        }
    }
    rec(&mut Vec::new(), &mut items.to_vec(), f);
}

fn degrees_of(edges: &[Hyperedge]) -> Vec<u32> {
    let span = observed_vertices(edges).last().map(|&x| x as usize + 1).unwrap_or(0);
    let mut deg = vec![0u32; span];
    for e in edges {
        for &x in e.raw() {
            deg[x as usize] += 1;
        }
    }
    deg
}

/// Distinct colored copies of `pattern` with color set exactly the given
/// tuple, contained in the induced colored graph; optionally restricted to
/// vertices with degree (in the full sample) at least `d`.
///
/// Vertices are handled as indices into `observed` so the packed keys stay
/// in range regardless of the raw id values.
fn kernel(
    pattern: &ColoredPattern,
    observed: &[u32],
    tuple: &[&Hyperedge],
    min_degree: Option<(&[u32], u32)>,
) -> u64 {
    let v = pattern.v();
    let r = pattern.r();
    let locals: Vec<u32> = (0..observed.len() as u32).collect();
    let mut contained: HashSet<u128> = HashSet::new();

    for_each_subset(&locals, v, &mut |subset| {
        if let Some((deg, d)) = min_degree {
            if subset.iter().any(|&j| deg[observed[j as usize] as usize] < d) {
                return;
            }
        }
        let vertex_mask: u16 = subset.iter().map(|&j| 1u16 << j).sum();
        for_each_arrangement(subset, &mut |phi| {
            let slots: Vec<u32> = (0..r as u32).collect();
            for_each_arrangement(&slots, &mut |pi| {
                let mut image: Vec<(u32, u32, u8)> = Vec::with_capacity(pattern.e());
                let mut ok = true;
                for (k, &(a, b)) in pattern.edges().iter().enumerate() {
                    let x = phi[a as usize];
                    let y = phi[b as usize];
                    let slot = pi[pattern.colors()[k] as usize] as usize;
                    if !tuple[slot].raw().contains(&observed[x as usize])
                        || !tuple[slot].raw().contains(&observed[y as usize])
                    {
                        ok = false;
                        break;
                    }
                    image.push((x.min(y), x.max(y), slot as u8));
                }
                if ok {
                    contained.insert(pack(vertex_mask, &mut image));
                }
            });
        });
    });
    contained.len() as u64
}

/// Kernel for the tuple at the given sample positions.
pub fn colored_kernel(pattern: &ColoredPattern, edges: &[Hyperedge], tuple_idx: &[usize]) -> Result<u64> {
    let observed = check_caps(edges, pattern.v())?;
    if tuple_idx.len() != pattern.r() {
        return Err(Error::TupleLength {
            expected: pattern.r(),
            got: tuple_idx.len(),
        });
    }
    let tuple: Vec<&Hyperedge> = tuple_idx.iter().map(|&i| &edges[i]).collect();
    Ok(kernel(pattern, &observed, &tuple, None))
}

fn sum_over_tuples(
    edges: &[Hyperedge],
    r: usize,
    mut eval: impl FnMut(&[&Hyperedge]) -> u64,
) -> (u128, u128) {
    let m = edges.len();
    let mut num = 0u128;
    let mut count = 0u128;
    let idx: Vec<u32> = (0..m as u32).collect();
    for_each_subset(&idx, r, &mut |combo| {
        let tuple: Vec<&Hyperedge> = combo.iter().map(|&i| &edges[i as usize]).collect();
        num += eval(&tuple) as u128;
        count += 1;
    });
    (num, count)
}

/// Complete colored frequency as an exact (numerator, `C(m, r)`) pair.
pub fn colored_complete(pattern: &ColoredPattern, edges: &[Hyperedge]) -> Result<(u128, u128)> {
    let observed = check_caps(edges, pattern.v())?;
    if edges.len() < pattern.r() {
        return Err(Error::SampleTooSmall {
            m: edges.len(),
            r: pattern.r(),
        });
    }
    Ok(sum_over_tuples(edges, pattern.r(), |tuple| {
        kernel(pattern, &observed, tuple, None)
    }))
}

/// Complete degree-filtered colored frequency.
pub fn degree_filtered(pattern: &ColoredPattern, d: u32, edges: &[Hyperedge]) -> Result<(u128, u128)> {
    let observed = check_caps(edges, pattern.v())?;
    if edges.len() < pattern.r() {
        return Err(Error::SampleTooSmall {
            m: edges.len(),
            r: pattern.r(),
        });
    }
    let deg = degrees_of(edges);
    Ok(sum_over_tuples(edges, pattern.r(), |tuple| {
        kernel(pattern, &observed, tuple, Some((&deg, d)))
    }))
}

/// Distinct simple colored subgraphs on the tuple whose colorless
/// restriction is isomorphic to `shape`, summed over color subsets of every
/// size 1..=r, per the colorless-frequency definition.
fn colorless_kernel(shape: &ColorlessPattern, observed: &[u32], tuple: &[&Hyperedge]) -> u64 {
    let v = shape.v();
    let r = tuple.len();
    let locals: Vec<u32> = (0..observed.len() as u32).collect();
    let mut total = 0u64;
    let slots: Vec<u32> = (0..r as u32).collect();
    for k in 1..=r {
        for_each_subset(&slots, k, &mut |color_set| {
            let mut contained: HashSet<u128> = HashSet::new();
            for_each_subset(&locals, v, &mut |subset| {
                let vertex_mask: u16 = subset.iter().map(|&j| 1u16 << j).sum();
                for_each_arrangement(subset, &mut |phi| {
                    // Every map from shape edges into the chosen color set,
                    // kept only when surjective (the color set must be
                    // exactly the chosen one).
                    let e = shape.e();
                    let mut assignment = vec![0usize; e];
                    loop {
                        let mut used = vec![false; color_set.len()];
                        for &a in &assignment {
                            used[a] = true;
                        }
                        if used.iter().all(|&u| u) {
                            let mut image: Vec<(u32, u32, u8)> = Vec::with_capacity(e);
                            let mut ok = true;
                            for (idx, &(a, b)) in shape.edges().iter().enumerate() {
                                let x = phi[a as usize];
                                let y = phi[b as usize];
                                let slot = color_set[assignment[idx]] as usize;
                                if !tuple[slot].raw().contains(&observed[x as usize])
                                    || !tuple[slot].raw().contains(&observed[y as usize])
                                {
                                    ok = false;
                                    break;
                                }
                                image.push((x.min(y), x.max(y), slot as u8));
                            }
                            if ok {
                                contained.insert(pack(vertex_mask, &mut image));
                            }
                        }
                        // Advance the odometer.
                        let mut pos = 0;
                        loop {
                            if pos == e {
                                return;
                            }
                            assignment[pos] += 1;
                            if assignment[pos] < color_set.len() {
                                break;
                            }
                            assignment[pos] = 0;
                            pos += 1;
                        }
                    }
                });
            });
            total += contained.len() as u64;
        });
    }
    total
}

/// Complete colorless frequency of order `r` as (numerator, `C(m, r)`).
pub fn colorless(shape: &ColorlessPattern, r: usize, edges: &[Hyperedge]) -> Result<(u128, u128)> {
    let observed = check_caps(edges, shape.v())?;
    if edges.len() < r {
        return Err(Error::SampleTooSmall { m: edges.len(), r });
    }
    Ok(sum_over_tuples(edges, r, |tuple| {
        colorless_kernel(shape, &observed, tuple)
    }))
}

/// Total copies: distinct simple colored subgraphs of the whole sample's
/// colored graph whose colorless restriction is isomorphic to `shape`,
/// over color assignments into all m hyperedges.
pub fn total_copies(shape: &ColorlessPattern, edges: &[Hyperedge]) -> Result<u128> {
    let observed = check_caps(edges, shape.v())?;
    let m = edges.len();
    let e = shape.e();
    let locals: Vec<u32> = (0..observed.len() as u32).collect();
    let mut contained: HashSet<u128> = HashSet::new();
    if m == 0 {
        return Ok(0);
    }
    for_each_subset(&locals, shape.v(), &mut |subset| {
        let vertex_mask: u16 = subset.iter().map(|&j| 1u16 << j).sum();
        for_each_arrangement(subset, &mut |phi| {
            let mut assignment = vec![0usize; e];
            loop {
                let mut image: Vec<(u32, u32, u8)> = Vec::with_capacity(e);
                let mut ok = true;
                for (idx, &(a, b)) in shape.edges().iter().enumerate() {
                    let x = phi[a as usize];
                    let y = phi[b as usize];
                    let slot = assignment[idx];
                    if !edges[slot].raw().contains(&observed[x as usize])
                        || !edges[slot].raw().contains(&observed[y as usize])
                    {
                        ok = false;
                        break;
                    }
                    image.push((x.min(y), x.max(y), slot as u8));
                }
                if ok {
                    contained.insert(pack(vertex_mask, &mut image));
                }
                let mut pos = 0;
                loop {
                    if pos == e {
                        return;
                    }
                    assignment[pos] += 1;
                    if assignment[pos] < m {
                        break;
                    }
                    assignment[pos] = 0;
                    pos += 1;
                }
            }
        });
    });
    Ok(contained.len() as u128)
}

/// Distinct k-subsets of observed vertices occurring as whole hyperedges,
/// found by scanning vertex subsets rather than deduplicating edges.
pub fn unique_k(edges: &[Hyperedge], k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let observed = check_caps(edges, 1)?;
    let mut count = 0u64;
    for_each_subset(&observed, k, &mut |subset| {
        if edges.iter().any(|e| e.raw() == subset) {
            count += 1;
        }
    });
    Ok(count)
}
