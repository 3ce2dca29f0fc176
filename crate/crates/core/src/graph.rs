//! Two-sided graphs with mirrored sorted adjacency, the edge-list text
//! format, and seeded test-ensemble generators.

use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Side::Left => "L",
            Side::Right => "R",
        }
    }
}

/// A vertex on one side of a bipartition. Orders Left before Right, then by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexRef {
    pub side: Side,
    pub index: usize,
}

impl VertexRef {
    pub fn left(index: usize) -> Self {
        VertexRef {
            side: Side::Left,
            index,
        }
    }

    pub fn right(index: usize) -> Self {
        VertexRef {
            side: Side::Right,
            index,
        }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.tag(), self.index)
    }
}

/// Serialized as a two-element array `["L", 3]`.
impl Serialize for VertexRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(self.side.tag())?;
        t.serialize_element(&self.index)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for VertexRef {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (tag, index) = <(String, usize)>::deserialize(deserializer)?;
        let side = match tag.as_str() {
            "L" => Side::Left,
            "R" => Side::Right,
            other => {
                return Err(serde::de::Error::custom(format!(
                    "unknown side tag {other:?}"
                )))
            }
        };
        Ok(VertexRef { side, index })
    }
}

/// Old-to-new index mapping produced by [`BipartiteGraph::delete_pair`].
///
/// Surviving vertices above a removed index shift down by one; everything
/// below keeps its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMap {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

/// A bipartite graph `G = (A, B, E)` with `A` the left side and `B` the right.
///
/// Adjacency is stored on both sides, sorted and duplicate-free. Values are
/// immutable; edits return new graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipartiteGraph {
    left_adj: Vec<Vec<usize>>,
    right_adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl BipartiteGraph {
    /// Builds a graph from `(left, right)` pairs. Duplicates collapse and edge
    /// order does not matter.
    pub fn new(
        left_count: usize,
        right_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut left_adj = vec![Vec::new(); left_count];
        for (l, r) in edges {
            if l >= left_count || r >= right_count {
                return Err(Error::EdgeOutOfRange {
                    left: l,
                    right: r,
                    left_count,
                    right_count,
                });
            }
            left_adj[l].push(r);
        }
        Ok(Self::from_left_adjacency(left_adj, right_count))
    }

    pub fn edgeless(left_count: usize, right_count: usize) -> Self {
        Self::from_left_adjacency(vec![Vec::new(); left_count], right_count)
    }

    /// Indices must already be in range.
    fn from_left_adjacency(mut left_adj: Vec<Vec<usize>>, right_count: usize) -> Self {
        let mut right_adj = vec![Vec::new(); right_count];
        let mut edge_count = 0;
        for (l, nbrs) in left_adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            nbrs.dedup();
            edge_count += nbrs.len();
            for &r in nbrs.iter() {
                right_adj[r].push(l);
            }
        }
        // Left vertices are visited in ascending order, so right lists are sorted.
        BipartiteGraph {
            left_adj,
            right_adj,
            edge_count,
        }
    }

    pub fn left_count(&self) -> usize {
        self.left_adj.len()
    }

    pub fn right_count(&self) -> usize {
        self.right_adj.len()
    }

    pub fn side_count(&self, side: Side) -> usize {
        match side {
            Side::Left => self.left_count(),
            Side::Right => self.right_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_balanced(&self) -> bool {
        self.left_count() == self.right_count()
    }

    /// The common side size `n` of a balanced graph.
    pub fn balanced_size(&self) -> Result<usize> {
        if self.is_balanced() {
            Ok(self.left_count())
        } else {
            Err(Error::UnbalancedGraph {
                left_count: self.left_count(),
                right_count: self.right_count(),
            })
        }
    }

    pub fn contains(&self, v: VertexRef) -> bool {
        v.index < self.side_count(v.side)
    }

    fn check(&self, v: VertexRef) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                left_count: self.left_count(),
                right_count: self.right_count(),
            })
        }
    }

    /// Sorted neighbour indices (on the opposite side) of `v`.
    pub fn neighbors(&self, v: VertexRef) -> Result<&[usize]> {
        self.check(v)?;
        Ok(self.adj(v))
    }

    fn adj(&self, v: VertexRef) -> &[usize] {
        match v.side {
            Side::Left => &self.left_adj[v.index],
            Side::Right => &self.right_adj[v.index],
        }
    }

    pub fn left_neighbors(&self, l: usize) -> &[usize] {
        &self.left_adj[l]
    }

    pub fn right_neighbors(&self, r: usize) -> &[usize] {
        &self.right_adj[r]
    }

    pub fn degree(&self, v: VertexRef) -> Result<usize> {
        self.check(v)?;
        Ok(self.adj(v).len())
    }

    /// Degrees of one side, in index order.
    pub fn degrees(&self, side: Side) -> impl Iterator<Item = usize> + '_ {
        let lists = match side {
            Side::Left => &self.left_adj,
            Side::Right => &self.right_adj,
        };
        lists.iter().map(Vec::len)
    }

    /// Degrees of every vertex, left side first.
    pub fn all_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.degrees(Side::Left).chain(self.degrees(Side::Right))
    }

    pub fn max_degree(&self, side: Side) -> Result<usize> {
        self.degrees(side).max().ok_or(Error::EmptySide)
    }

    /// Binary search on the sorted left adjacency list. Panics on out-of-range `l`.
    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.left_adj[l].binary_search(&r).is_ok()
    }

    /// Edges as `(left, right)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_adj
            .iter()
            .enumerate()
            .flat_map(|(l, nbrs)| nbrs.iter().map(move |&r| (l, r)))
    }

    /// Removes left vertex `a` and right vertex `b` from a balanced graph.
    ///
    /// Returns the `(n-1)x(n-1)` graph and the old-to-new index mapping.
    pub fn delete_pair(&self, a: usize, b: usize) -> Result<(BipartiteGraph, IndexMap)> {
        self.check(VertexRef::left(a))?;
        self.check(VertexRef::right(b))?;
        self.balanced_size()?;
        let shift = |i: usize, removed: usize| match i.cmp(&removed) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        };
        let map = IndexMap {
            left: (0..self.left_count()).map(|i| shift(i, a)).collect(),
            right: (0..self.right_count()).map(|i| shift(i, b)).collect(),
        };
        let left_adj = self
            .left_adj
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != a)
            .map(|(_, nbrs)| nbrs.iter().filter_map(|&r| shift(r, b)).collect())
            .collect();
        let g = Self::from_left_adjacency(left_adj, self.right_count() - 1);
        Ok((g, map))
    }

    /// Same vertex sets with `v` isolated.
    pub fn delete_incident_edges(&self, v: VertexRef) -> Result<BipartiteGraph> {
        self.check(v)?;
        let mut left_adj = self.left_adj.clone();
        match v.side {
            Side::Left => left_adj[v.index].clear(),
            Side::Right => {
                for &l in &self.right_adj[v.index] {
                    left_adj[l].retain(|&r| r != v.index);
                }
            }
        }
        Ok(Self::from_left_adjacency(left_adj, self.right_count()))
    }

    /// Cross edge `(l, r)` present iff absent here.
    pub fn bipartite_complement(&self) -> BipartiteGraph {
        let right_count = self.right_count();
        let left_adj = self
            .left_adj
            .iter()
            .map(|nbrs| {
                let mut out = Vec::with_capacity(right_count - nbrs.len());
                let mut it = nbrs.iter().peekable();
                for r in 0..right_count {
                    if it.peek() == Some(&&r) {
                        it.next();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        Self::from_left_adjacency(left_adj, right_count)
    }

    /// Subgraph induced by left indices `left` and right indices `right`,
    /// re-indexed in ascending order of the selected indices.
    pub fn induced(&self, left: &[usize], right: &[usize]) -> Result<BipartiteGraph> {
        let mut left_sel = left.to_vec();
        let mut right_sel = right.to_vec();
        left_sel.sort_unstable();
        left_sel.dedup();
        right_sel.sort_unstable();
        right_sel.dedup();
        for &l in &left_sel {
            self.check(VertexRef::left(l))?;
        }
        let mut right_pos = vec![None; self.right_count()];
        for (new, &r) in right_sel.iter().enumerate() {
            self.check(VertexRef::right(r))?;
            right_pos[r] = Some(new);
        }
        let left_adj = left_sel
            .iter()
            .map(|&l| self.left_adj[l].iter().filter_map(|&r| right_pos[r]).collect())
            .collect();
        Ok(Self::from_left_adjacency(left_adj, right_sel.len()))
    }

    /// Full scan of the structural invariants.
    pub fn is_consistent(&self) -> bool {
        let sorted_unique = |v: &Vec<usize>, bound: usize| {
            v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&x| x < bound)
        };
        let left_ok = self
            .left_adj
            .iter()
            .all(|n| sorted_unique(n, self.right_count()));
        let right_ok = self
            .right_adj
            .iter()
            .all(|n| sorted_unique(n, self.left_count()));
        let mirror = self.left_adj.iter().enumerate().all(|(l, nbrs)| {
            nbrs.iter()
                .all(|&r| self.right_adj[r].binary_search(&l).is_ok())
        }) && self.right_adj.iter().enumerate().all(|(r, nbrs)| {
            nbrs.iter()
                .all(|&l| self.left_adj[l].binary_search(&r).is_ok())
        });
        let left_sum: usize = self.left_adj.iter().map(Vec::len).sum();
        let right_sum: usize = self.right_adj.iter().map(Vec::len).sum();
        left_ok
            && right_ok
            && mirror
            && left_sum == self.edge_count
            && right_sum == self.edge_count
    }

    /// Parses the edge-list text format (see [`BipartiteGraph::to_edge_list`]).
    pub fn parse_edge_list(text: &str) -> Result<BipartiteGraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, line)| (i + 1, line.trim_end_matches('\r').trim()))
            .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'));

        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::MalformedHeader("missing \"nA nB\" header".into()))?;
        let (left_count, right_count) = parse_pair(header)
            .ok_or_else(|| Error::MalformedHeader(format!("expected \"nA nB\", got {header:?}")))?;

        let mut left_adj = vec![Vec::new(); left_count];
        for (line_no, line) in lines {
            let (l, r) = parse_pair(line).ok_or_else(|| Error::MalformedEdgeLine {
                line: line_no,
                text: line.to_string(),
            })?;
            if l >= left_count || r >= right_count {
                return Err(Error::IndexOutOfRangeAtLine {
                    line: line_no,
                    detail: format!("edge ({l}, {r}) in a {left_count}x{right_count} graph"),
                });
            }
            left_adj[l].push(r);
        }
        Ok(Self::from_left_adjacency(left_adj, right_count))
    }

    /// Canonical text form: header `nA nB`, then one `u v` line per edge in
    /// lexicographic order, LF line endings.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.left_count(), self.right_count());
        for (l, r) in self.edges() {
            out.push_str(&format!("{l} {r}\n"));
        }
        out
    }

    /// Balanced `n x n` graph from one of the fixed models.
    ///
    /// `Gnp(p)` draws from ChaCha8 seeded with `seed` via `seed_from_u64`,
    /// visiting pairs `(l, r)` in lexicographic order; each pair consumes one
    /// `u64` whose top 53 bits `u` give the edge iff `u * 2^-53 < p`. Other
    /// models ignore the seed.
    pub fn generate(model: GraphModel, n: usize, seed: u64) -> Result<BipartiteGraph> {
        if n == 0 {
            return Err(Error::InvalidSize("n must be at least 1".into()));
        }
        let left_adj: Vec<Vec<usize>> = match model {
            GraphModel::Gnp(p) => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidProbability(p));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..n)
                    .map(|_| {
                        (0..n)
                            .filter(|_| unit_interval(rng.next_u64()) < p)
                            .collect()
                    })
                    .collect()
            }
            GraphModel::Complete => (0..n).map(|_| (0..n).collect()).collect(),
            GraphModel::Edgeless => vec![Vec::new(); n],
            GraphModel::Matching => (0..n).map(|i| vec![i]).collect(),
            GraphModel::Cycle => {
                if n < 2 {
                    return Err(Error::InvalidSize("cycle needs n >= 2".into()));
                }
                (0..n).map(|i| vec![i, (i + 1) % n]).collect()
            }
            GraphModel::Crown => (0..n)
                .map(|i| (0..n).filter(|&j| j != i).collect())
                .collect(),
        };
        Ok(Self::from_left_adjacency(left_adj, n))
    }
}

fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphModel {
    Gnp(f64),
    Complete,
    Edgeless,
    Matching,
    /// The `2n`-cycle `a_i ~ b_i`, `a_i ~ b_{i+1 mod n}`.
    Cycle,
    /// `K_{n,n}` minus the perfect matching `a_i ~ b_i`.
    Crown,
}

impl GraphModel {
    pub fn name(&self) -> &'static str {
        match self {
            GraphModel::Gnp(_) => "gnp",
            GraphModel::Complete => "complete",
            GraphModel::Edgeless => "edgeless",
            GraphModel::Matching => "matching",
            GraphModel::Cycle => "cycle",
            GraphModel::Crown => "crown",
        }
    }

    /// Parses a model name; `gnp` takes its probability from `p`.
    pub fn from_name(name: &str, p: Option<f64>) -> std::result::Result<Self, String> {
        Ok(match name {
            "gnp" => GraphModel::Gnp(p.ok_or("gnp requires a probability")?),
            "complete" => GraphModel::Complete,
            "edgeless" => GraphModel::Edgeless,
            "matching" => GraphModel::Matching,
            "cycle" => GraphModel::Cycle,
            "crown" => GraphModel::Crown,
            other => return Err(format!("unknown model {other:?}")),
        })
    }
}

impl FromStr for BipartiteGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_edge_list(s)
    }
}
