//! Brute-force exact optima and independent witness checks. Slow on purpose:
//! these are the ground truth the bounds and extractors are tested against.

use crate::error::{Error, Result};
use crate::extract::{BiholeWitness, DegenerateWitness};
use crate::graph::{BipartiteGraph, Side, VertexRef};

/// Hard ceiling for bitmask enumeration regardless of configured limits.
const MAX_MASK_SIDE: usize = 26;

/// Environment variable overriding [`OracleLimits::default`]; either `B` or `B,D`.
pub const ORACLE_MAX_ENV: &str = "BIHOLE_ORACLE_MAX";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_side_bihole: usize,
    pub max_side_degenerate: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_side_bihole: 22,
            max_side_degenerate: 8,
        }
    }
}

impl OracleLimits {
    /// Defaults, overridden by `BIHOLE_ORACLE_MAX` when set and well formed.
    pub fn from_env() -> std::result::Result<Self, String> {
        match std::env::var(ORACLE_MAX_ENV) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    /// `"B"` sets the bihole limit; `"B,D"` sets both.
    pub fn parse(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("invalid oracle limits {s:?}; expected B or B,D");
        let mut limits = Self::default();
        let mut parts = s.split(',').map(str::trim);
        let b: usize = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        limits.max_side_bihole = b;
        if let Some(d) = parts.next() {
            limits.max_side_degenerate = d.parse().map_err(|_| bad())?;
        }
        if parts.next().is_some() || limits.max_side_bihole == 0 || limits.max_side_degenerate == 0
        {
            return Err(bad());
        }
        Ok(limits)
    }
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    let limit = limit.min(MAX_MASK_SIDE);
    if n > limit {
        Err(Error::InstanceTooLarge { n, limit })
    } else {
        Ok(())
    }
}

fn check_indices(g: &BipartiteGraph, left: &[usize], right: &[usize]) -> Result<()> {
    for v in left
        .iter()
        .map(|&i| VertexRef::left(i))
        .chain(right.iter().map(|&i| VertexRef::right(i)))
    {
        g.degree(v)?;
    }
    Ok(())
}

fn sorted_unique(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `|L| = |R|` and no edge of `g` joins `L` to `R`.
pub fn is_bihole(g: &BipartiteGraph, w: &BiholeWitness) -> Result<bool> {
    check_indices(g, &w.left, &w.right)?;
    let left = sorted_unique(&w.left);
    let right = sorted_unique(&w.right);
    if left.len() != right.len() {
        return Ok(false);
    }
    Ok(left
        .iter()
        .all(|&l| right.iter().all(|&r| !g.has_edge(l, r))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegeneracyCheck {
    /// Full elimination order in `g`'s labels.
    Degenerate(Vec<VertexRef>),
    /// Vertices left when peeling got stuck; every one has more than `d`
    /// neighbours inside the set.
    Core(Vec<VertexRef>),
}

impl DegeneracyCheck {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, DegeneracyCheck::Degenerate(_))
    }
}

/// Greedy peeling of `g[left ∪ right]`: repeatedly remove the first vertex
/// (Left before Right, ascending label) whose current degree is at most `d`.
pub fn degeneracy_certificate(
    g: &BipartiteGraph,
    left: &[usize],
    right: &[usize],
    d: usize,
) -> Result<DegeneracyCheck> {
    check_indices(g, left, right)?;
    let left = sorted_unique(left);
    let right = sorted_unique(right);
    let sub = g.induced(&left, &right)?;
    let labels: Vec<VertexRef> = left
        .iter()
        .map(|&i| VertexRef::left(i))
        .chain(right.iter().map(|&i| VertexRef::right(i)))
        .collect();
    let k = left.len();
    let mut degree: Vec<usize> = sub.all_degrees().collect();
    let mut removed = vec![false; labels.len()];
    let mut order = Vec::with_capacity(labels.len());

    while order.len() < labels.len() {
        let Some(pos) = (0..labels.len()).find(|&i| !removed[i] && degree[i] <= d) else {
            let core = (0..labels.len())
                .filter(|&i| !removed[i])
                .map(|i| labels[i])
                .collect();
            return Ok(DegeneracyCheck::Core(core));
        };
        removed[pos] = true;
        order.push(labels[pos]);
        let nbrs = if pos < k {
            sub.left_neighbors(pos).iter().map(|&r| k + r).collect::<Vec<_>>()
        } else {
            sub.right_neighbors(pos - k).to_vec()
        };
        for u in nbrs {
            degree[u] -= 1;
        }
    }
    Ok(DegeneracyCheck::Degenerate(order))
}

/// Checks a witness's elimination order against `g` directly: balanced sets,
/// order is a permutation of the witness, and each vertex has at most `d`
/// not-yet-removed witness neighbours when removed.
pub fn verify_degenerate_witness(
    g: &BipartiteGraph,
    w: &DegenerateWitness,
    d: usize,
) -> Result<bool> {
    check_indices(g, &w.left, &w.right)?;
    let left = sorted_unique(&w.left);
    let right = sorted_unique(&w.right);
    if left.len() != right.len() || left.len() != w.left.len() || right.len() != w.right.len() {
        return Ok(false);
    }
    let mut expected: Vec<VertexRef> = left
        .iter()
        .map(|&i| VertexRef::left(i))
        .chain(right.iter().map(|&i| VertexRef::right(i)))
        .collect();
    let mut got = w.elimination_order.clone();
    expected.sort_unstable();
    got.sort_unstable();
    if expected != got {
        return Ok(false);
    }
    let mut alive_left = vec![false; g.left_count()];
    let mut alive_right = vec![false; g.right_count()];
    left.iter().for_each(|&i| alive_left[i] = true);
    right.iter().for_each(|&i| alive_right[i] = true);
    for v in &w.elimination_order {
        let deg = match v.side {
            Side::Left => g.left_neighbors(v.index).iter().filter(|&&r| alive_right[r]).count(),
            Side::Right => g.right_neighbors(v.index).iter().filter(|&&l| alive_left[l]).count(),
        };
        if deg > d {
            return Ok(false);
        }
        match v.side {
            Side::Left => alive_left[v.index] = false,
            Side::Right => alive_right[v.index] = false,
        }
    }
    Ok(true)
}

fn left_masks(g: &BipartiteGraph) -> Vec<u32> {
    (0..g.left_count())
        .map(|l| g.left_neighbors(l).iter().fold(0u32, |m, &r| m | (1 << r)))
        .collect()
}

/// Largest `min(|S|, |C(S)|)` over all left subsets `S`, visited in ascending
/// bitmask order, where `C(S) = ∩_{l ∈ S} rows[l]` (all right vertices for `S = ∅`).
fn best_balanced_over_left_subsets(rows: &[u32], n: usize) -> usize {
    let full: u32 = (1u32 << n) - 1;
    let mut common = vec![0u32; 1usize << n];
    common[0] = full;
    let mut best = 0;
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        common[mask] = common[mask & (mask - 1)] & rows[low];
        let size = (mask.count_ones()).min(common[mask].count_ones()) as usize;
        best = best.max(size);
    }
    best
}

/// Exact β(G). For a bihole `(L, R)`, `R` lies in the common non-neighbourhood
/// of `L`, so enumerating left subsets alone suffices.
pub fn max_bihole_exact(g: &BipartiteGraph, limits: &OracleLimits) -> Result<usize> {
    let n = g.balanced_size()?;
    check_limit(n, limits.max_side_bihole)?;
    if n == 0 {
        return Ok(0);
    }
    let full = (1u32 << n) - 1;
    let non_nbrs: Vec<u32> = left_masks(g).into_iter().map(|m| !m & full).collect();
    Ok(best_balanced_over_left_subsets(&non_nbrs, n))
}

/// Largest balanced complete bipartite subgraph `K_{t,t}` of `g`.
pub fn max_biclique_exact(g: &BipartiteGraph, limits: &OracleLimits) -> Result<usize> {
    let n = g.balanced_size()?;
    check_limit(n, limits.max_side_bihole)?;
    if n == 0 {
        return Ok(0);
    }
    Ok(best_balanced_over_left_subsets(&left_masks(g), n))
}

/// Bitmask version of greedy peeling on `g[S ∪ T]`.
fn masks_are_degenerate(left_rows: &[u32], right_rows: &[u32], s: u32, t: u32, d: u32) -> bool {
    let (mut s, mut t) = (s, t);
    loop {
        if s == 0 && t == 0 {
            return true;
        }
        let mut progressed = false;
        let mut bits = s;
        while bits != 0 {
            let l = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if (left_rows[l] & t).count_ones() <= d {
                s &= !(1 << l);
                progressed = true;
            }
        }
        let mut bits = t;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if (right_rows[r] & s).count_ones() <= d {
                t &= !(1 << r);
                progressed = true;
            }
        }
        if !progressed {
            return false;
        }
    }
}

/// All `k`-subsets of `0..n` as bitmasks, ascending.
fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1u32 << n))
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

/// Exact β_d(G): balanced pairs `(S, T)` tried by decreasing size; the first
/// size with a `d`-degenerate induced subgraph wins.
pub fn max_degenerate_exact(g: &BipartiteGraph, d: usize, limits: &OracleLimits) -> Result<usize> {
    let n = g.balanced_size()?;
    check_limit(n, limits.max_side_degenerate)?;
    let left_rows = left_masks(g);
    let right_rows: Vec<u32> = (0..n)
        .map(|r| g.right_neighbors(r).iter().fold(0u32, |m, &l| m | (1 << l)))
        .collect();
    let d = u32::try_from(d).unwrap_or(u32::MAX);
    for k in (1..=n).rev() {
        let subsets = subsets_of_size(n, k);
        for &s in &subsets {
            for &t in &subsets {
                if masks_are_degenerate(&left_rows, &right_rows, s, t, d) {
                    return Ok(k);
                }
            }
        }
    }
    Ok(0)
}
