//! Constructive extraction of biholes and balanced induced `d`-degenerate
//! subgraphs by pair peeling.
//!
//! The working graph is repeatedly shrunk until it has no edges; whatever
//! vertices survive form the witness. Each iteration either
//!
//! * isolates a vertex `v` with `1 <= deg(v) <= d` (only possible for `d >= 1`),
//!   choosing the minimum such degree, Left side first, then lowest index; or
//! * removes a pair `(a, b)` where `a` has maximum degree on the left and `b`
//!   maximum degree on the right, preferring a nonadjacent pair (Case 1) and
//!   otherwise taking an adjacent one (Case 2, when every max-degree pair is
//!   adjacent).
//!
//! Along the way the strengthened bound of the working graph never decreases,
//! and an edgeless `m x m` graph has strengthened bound exactly `m`, so the
//! witness has at least `⌈S(G)⌉` vertices per side. The trace records every
//! step in the input graph's labels so [`check_trace`] can replay it.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::bounds::{strengthened_bound, BoundReport};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, VertexRef};
use crate::oracle::{degeneracy_certificate, DegeneracyCheck};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairCase {
    /// Max-degree pair with no edge between them.
    Nonadjacent,
    /// Every max-degree pair is adjacent.
    Adjacent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairChoice {
    pub a: usize,
    pub b: usize,
    pub case: PairCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PeelKind {
    PairCase1 { a: usize, b: usize },
    PairCase2 { a: usize, b: usize },
    LowDegreeEdgeDeletion { v: VertexRef },
}

/// One extraction step. Vertex indices are labels in the input graph; degrees
/// are measured in the working graph just before the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelStep {
    #[serde(flatten)]
    pub kind: PeelKind,
    pub max_left: usize,
    pub max_right: usize,
    /// Degree of `a`, or of `v` for an edge deletion.
    pub first_degree: usize,
    /// Degree of `b`; absent for an edge deletion.
    pub second_degree: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeelTrace {
    pub d: usize,
    pub initial: BoundReport,
    pub steps: Vec<PeelStep>,
    /// Strengthened bound of the working graph before the first step and
    /// after each step; `values.len() == steps.len() + 1`.
    pub values: Vec<Rational>,
}

impl PeelTrace {
    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiholeWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl BiholeWitness {
    pub fn size(&self) -> usize {
        self.left.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    /// Every witness vertex once; each has degree `<= d` among the vertices
    /// not yet removed when its turn comes.
    pub elimination_order: Vec<VertexRef>,
}

impl DegenerateWitness {
    pub fn size(&self) -> usize {
        self.left.len()
    }
}

impl Serialize for BiholeWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BiholeWitness", 3)?;
        st.serialize_field("left", &self.left)?;
        st.serialize_field("right", &self.right)?;
        st.serialize_field("size", &self.size())?;
        st.end()
    }
}

impl Serialize for DegenerateWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DegenerateWitness", 4)?;
        st.serialize_field("left", &self.left)?;
        st.serialize_field("right", &self.right)?;
        st.serialize_field("size", &self.size())?;
        st.serialize_field("elimination_order", &self.elimination_order)?;
        st.end()
    }
}

/// Picks the next pair to remove.
///
/// Scans max-degree left vertices in ascending order and, for each, max-degree
/// right vertices in ascending order; the first nonadjacent pair wins. If there
/// is none, the lexicographically smallest max-degree pair is returned as an
/// adjacent pair.
pub fn select_pair(g: &BipartiteGraph) -> Result<PairChoice> {
    g.balanced_size()?;
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let argmax = |side: Side| -> Vec<usize> {
        let max = g.max_degree(side).expect("graph has edges");
        g.degrees(side)
            .enumerate()
            .filter(|&(_, deg)| deg == max)
            .map(|(i, _)| i)
            .collect()
    };
    let tops_left = argmax(Side::Left);
    let tops_right = argmax(Side::Right);
    for &a in &tops_left {
        for &b in &tops_right {
            if !g.has_edge(a, b) {
                return Ok(PairChoice {
                    a,
                    b,
                    case: PairCase::Nonadjacent,
                });
            }
        }
    }
    Ok(PairChoice {
        a: tops_left[0],
        b: tops_right[0],
        case: PairCase::Adjacent,
    })
}

/// A shrinking copy of the input graph together with the original label of
/// every surviving vertex.
struct Working {
    graph: BipartiteGraph,
    left_labels: Vec<usize>,
    right_labels: Vec<usize>,
}

impl Working {
    fn new(g: &BipartiteGraph) -> Self {
        Working {
            graph: g.clone(),
            left_labels: (0..g.left_count()).collect(),
            right_labels: (0..g.right_count()).collect(),
        }
    }

    fn locate(&self, v: VertexRef) -> Option<usize> {
        let labels = match v.side {
            Side::Left => &self.left_labels,
            Side::Right => &self.right_labels,
        };
        labels.binary_search(&v.index).ok()
    }

    fn label(&self, v: VertexRef) -> VertexRef {
        let index = match v.side {
            Side::Left => self.left_labels[v.index],
            Side::Right => self.right_labels[v.index],
        };
        VertexRef { side: v.side, index }
    }

    fn remove_pair(&mut self, a: usize, b: usize) -> Result<()> {
        let (next, _) = self.graph.delete_pair(a, b)?;
        self.graph = next;
        self.left_labels.remove(a);
        self.right_labels.remove(b);
        Ok(())
    }

    fn isolate(&mut self, v: VertexRef) -> Result<()> {
        self.graph = self.graph.delete_incident_edges(v)?;
        Ok(())
    }

    fn max_degrees(&self) -> (usize, usize) {
        (
            self.graph.max_degree(Side::Left).unwrap_or(0),
            self.graph.max_degree(Side::Right).unwrap_or(0),
        )
    }

    /// Minimum-degree vertex with `1 <= deg <= d`, Left first, then lowest index.
    fn low_degree_vertex(&self, d: usize) -> Option<(VertexRef, usize)> {
        let g = &self.graph;
        let left = g
            .degrees(Side::Left)
            .enumerate()
            .map(|(i, deg)| (VertexRef::left(i), deg));
        let right = g
            .degrees(Side::Right)
            .enumerate()
            .map(|(i, deg)| (VertexRef::right(i), deg));
        let mut best: Option<(VertexRef, usize)> = None;
        for (v, deg) in left.chain(right) {
            if deg >= 1 && deg <= d && best.is_none_or(|(_, b)| deg < b) {
                best = Some((v, deg));
            }
        }
        best
    }
}

/// Runs the peeling loop; `d = 0` never takes the edge-deletion branch.
fn peel(g: &BipartiteGraph, d: usize) -> Result<(Working, PeelTrace)> {
    let initial = BoundReport::compute(g, d, None)?;
    let mut work = Working::new(g);
    let mut steps = Vec::new();
    let mut values = vec![initial.strengthened.clone()];

    while work.graph.edge_count() > 0 {
        let (max_left, max_right) = work.max_degrees();
        let step = if let Some((v, deg)) = work.low_degree_vertex(d) {
            let step = PeelStep {
                kind: PeelKind::LowDegreeEdgeDeletion { v: work.label(v) },
                max_left,
                max_right,
                first_degree: deg,
                second_degree: None,
            };
            work.isolate(v)?;
            step
        } else {
            let choice = select_pair(&work.graph)?;
            let (a, b) = (work.left_labels[choice.a], work.right_labels[choice.b]);
            let step = PeelStep {
                kind: match choice.case {
                    PairCase::Nonadjacent => PeelKind::PairCase1 { a, b },
                    PairCase::Adjacent => PeelKind::PairCase2 { a, b },
                },
                max_left,
                max_right,
                first_degree: work.graph.left_neighbors(choice.a).len(),
                second_degree: Some(work.graph.right_neighbors(choice.b).len()),
            };
            work.remove_pair(choice.a, choice.b)?;
            step
        };
        steps.push(step);
        values.push(strengthened_bound(&work.graph, d)?);
    }

    let trace = PeelTrace {
        d,
        initial,
        steps,
        values,
    };
    Ok((work, trace))
}

/// Extracts a bihole of size at least the floor bound (and at least the
/// ceiling of the strengthened bound when `n >= 1`).
pub fn find_bihole(g: &BipartiteGraph) -> Result<(BiholeWitness, PeelTrace)> {
    let (work, trace) = peel(g, 0)?;
    let witness = BiholeWitness {
        left: work.left_labels,
        right: work.right_labels,
    };
    Ok((witness, trace))
}

/// Extracts a balanced vertex set whose induced subgraph in `g` is
/// `d`-degenerate, of size at least the floor bound for `d`.
///
/// Edges deleted by the low-degree branch are not restored on the working
/// graph; the witness is taken as an induced subgraph of the original `g`,
/// which differs from the working one only at vertices that had degree at
/// most `d` when isolated.
pub fn find_degenerate(g: &BipartiteGraph, d: usize) -> Result<(DegenerateWitness, PeelTrace)> {
    let (work, trace) = peel(g, d)?;
    let order = match degeneracy_certificate(g, &work.left_labels, &work.right_labels, d)? {
        DegeneracyCheck::Degenerate(order) => order,
        DegeneracyCheck::Core(core) => panic!(
            "extracted witness is not {d}-degenerate; stuck core {core:?}"
        ),
    };
    let witness = DegenerateWitness {
        left: work.left_labels,
        right: work.right_labels,
        elimination_order: order,
    };
    Ok((witness, trace))
}

/// Replays `trace` on `g` from scratch.
///
/// Returns `Err(TraceMismatch)` if a step cannot legally be applied (wrong
/// case condition, vertex already removed, recorded degrees or values
/// disagreeing with the replay). Returns `Ok(false)` if every step applies but
/// the strengthened bound decreases somewhere, `Ok(true)` otherwise.
pub fn check_trace(g: &BipartiteGraph, trace: &PeelTrace, d: usize) -> Result<bool> {
    g.balanced_size()?;
    let mismatch = |step: usize, reason: String| Error::TraceMismatch { step, reason };
    if trace.d != d {
        return Err(mismatch(0, format!("trace built for d = {}, checked with d = {d}", trace.d)));
    }
    if trace.values.len() != trace.steps.len() + 1 {
        return Err(mismatch(0, "value count does not match step count".into()));
    }

    let mut work = Working::new(g);
    let mut current = strengthened_bound(g, d)?;
    if current != trace.values[0] {
        return Err(mismatch(0, "initial value differs".into()));
    }
    let mut monotone = true;

    for (i, step) in trace.steps.iter().enumerate() {
        let (max_left, max_right) = work.max_degrees();
        if (step.max_left, step.max_right) != (max_left, max_right) {
            return Err(mismatch(i, format!(
                "recorded maxima ({}, {}) but replay has ({max_left}, {max_right})",
                step.max_left, step.max_right
            )));
        }
        match step.kind {
            PeelKind::LowDegreeEdgeDeletion { v } => {
                let idx = work
                    .locate(v)
                    .ok_or_else(|| mismatch(i, format!("{v} is no longer present")))?;
                let local = VertexRef { side: v.side, index: idx };
                let deg = work.graph.degree(local)?;
                if deg < 1 || deg > d {
                    return Err(mismatch(i, format!("{v} has degree {deg}, outside [1, {d}]")));
                }
                if step.first_degree != deg || step.second_degree.is_some() {
                    return Err(mismatch(i, "recorded degrees differ".into()));
                }
                work.isolate(local)?;
            }
            PeelKind::PairCase1 { a, b } | PeelKind::PairCase2 { a, b } => {
                let la = work
                    .locate(VertexRef::left(a))
                    .ok_or_else(|| mismatch(i, format!("L{a} is no longer present")))?;
                let lb = work
                    .locate(VertexRef::right(b))
                    .ok_or_else(|| mismatch(i, format!("R{b} is no longer present")))?;
                let deg_a = work.graph.left_neighbors(la).len();
                let deg_b = work.graph.right_neighbors(lb).len();
                if deg_a != max_left || deg_b != max_right {
                    return Err(mismatch(i, format!("L{a} or R{b} is not of maximum degree")));
                }
                if max_left == 0 || max_right == 0 {
                    return Err(mismatch(i, "pair step on an edgeless graph".into()));
                }
                if let Some((v, _)) = work.low_degree_vertex(d) {
                    return Err(mismatch(i, format!(
                        "pair step while {} has degree in [1, {d}]",
                        work.label(v)
                    )));
                }
                let adjacent = work.graph.has_edge(la, lb);
                match step.kind {
                    PeelKind::PairCase1 { .. } if adjacent => {
                        return Err(mismatch(i, format!("case 1 pair L{a}, R{b} is adjacent")));
                    }
                    PeelKind::PairCase2 { .. } => {
                        if !adjacent {
                            return Err(mismatch(i, format!("case 2 pair L{a}, R{b} is nonadjacent")));
                        }
                        if select_pair(&work.graph)?.case == PairCase::Nonadjacent {
                            return Err(mismatch(i, "case 2 taken while a nonadjacent max-degree pair exists".into()));
                        }
                    }
                    _ => {}
                }
                if step.first_degree != deg_a || step.second_degree != Some(deg_b) {
                    return Err(mismatch(i, "recorded degrees differ".into()));
                }
                work.remove_pair(la, lb)?;
            }
        }
        let next = strengthened_bound(&work.graph, d)?;
        if next != trace.values[i + 1] {
            return Err(mismatch(i, "recorded value differs from replay".into()));
        }
        if next < current {
            monotone = false;
        }
        current = next;
    }
    Ok(monotone)
}
