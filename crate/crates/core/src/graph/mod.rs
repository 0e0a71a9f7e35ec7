//! Typed multigraphs with half-edge identity.
//!
//! Every edge carries a type: `C` edges must receive the same color on both
//! half-edges, `O` edges must receive different colors. A red/blue labeling of
//! the half-edges therefore expresses edge colorings and edge orientations in
//! one formalism. Parallel edges are allowed, self-loops are not.

mod generate;
mod json;
mod virtual_edges;

pub use generate::{
    gen_random_bounded, gen_random_regular, gen_structured, split_nodes_epsilon, Structured,
    TypeAssignment,
};
pub use json::{
    read_graph, read_labeling, read_orientation, write_graph, write_labeling, write_orientation,
    GraphFile, LabelingFile, OrientationFile,
};
pub use virtual_edges::{EdgeOrigin, VirtualEdge, VirtualEdgeMap};

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("n * delta = {n} * {delta} is odd; no regular multigraph exists")]
    ParityError { n: usize, delta: usize },
    #[error("configuration model gave up after {0} re-pairing attempts")]
    RetryExhausted(usize),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

/// Edge type: `C` (coloring) or `O` (orientation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeType {
    C,
    O,
}

impl EdgeType {
    /// Type of a virtual edge that replaces a pair of edges meeting at a middle node.
    pub fn combine(a: EdgeType, b: EdgeType) -> EdgeType {
        if a == b {
            EdgeType::O
        } else {
            EdgeType::C
        }
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeType::C => f.write_str("C"),
            EdgeType::O => f.write_str("O"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    R,
    B,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::R => Color::B,
            Color::B => Color::R,
        }
    }

    /// Color the far half of an edge must carry when the near half is `self`.
    pub fn across(self, kind: EdgeType) -> Color {
        match kind {
            EdgeType::C => self,
            EdgeType::O => self.flip(),
        }
    }
}

/// Reference to one endpoint of an edge; `side` is 0 for `endpoint0`, 1 for `endpoint1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub side: u8,
}

impl HalfEdge {
    pub fn new(edge: EdgeId, side: u8) -> Self {
        debug_assert!(side < 2);
        HalfEdge { edge, side }
    }

    pub fn twin(self) -> HalfEdge {
        HalfEdge {
            edge: self.edge,
            side: 1 - self.side,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub ends: [NodeId; 2],
    pub kind: EdgeType,
}

impl Edge {
    pub fn other(&self, v: NodeId) -> NodeId {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedMultiGraph {
    n: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<HalfEdge>>,
}

impl TypedMultiGraph {
    /// Builds a graph with dense edge ids in input order.
    pub fn new<I>(n: usize, edge_list: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId, EdgeType)>,
    {
        let mut g = TypedMultiGraph::empty(n);
        for (u, v, kind) in edge_list {
            g.push_edge(u, v, kind)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        TypedMultiGraph {
            n,
            edges: Vec::new(),
            incidence: vec![Vec::new(); n],
        }
    }

    pub fn push_edge(&mut self, u: NodeId, v: NodeId, kind: EdgeType) -> Result<EdgeId, GraphError> {
        for node in [u, v] {
            if node >= self.n {
                return Err(GraphError::NodeOutOfRange { node, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let id = self.edges.len();
        self.edges.push(Edge { ends: [u, v], kind });
        self.incidence[u].push(HalfEdge::new(id, 0));
        self.incidence[v].push(HalfEdge::new(id, 1));
        Ok(id)
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn kind(&self, e: EdgeId) -> EdgeType {
        self.edges[e].kind
    }

    /// Node that owns a half-edge.
    pub fn node_of(&self, h: HalfEdge) -> NodeId {
        self.edges[h.edge].ends[h.side as usize]
    }

    /// Half-edges incident to `v`, in edge-id order.
    pub fn incident(&self, v: NodeId) -> &[HalfEdge] {
        &self.incidence[v]
    }

    /// The half-edge of `e` that sits at `v`.
    pub fn half_at(&self, e: EdgeId, v: NodeId) -> HalfEdge {
        let side = if self.edges[e].ends[0] == v { 0 } else { 1 };
        debug_assert_eq!(self.edges[e].ends[side as usize], v);
        HalfEdge::new(e, side)
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn all_of_type(&self, kind: EdgeType) -> bool {
        self.edges.iter().all(|e| e.kind == kind)
    }

    /// Neighbors of `v` with multiplicity, in edge-id order.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.incidence[v].iter().map(move |h| self.edges[h.edge].ends[1 - h.side as usize])
    }

    /// Same graph with every edge retyped.
    pub fn with_all_types(&self, kind: EdgeType) -> TypedMultiGraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.kind = kind;
        }
        g
    }

    /// Subgraph on the same node set keeping the edges for which `keep` holds.
    /// Returns the subgraph and, for each of its edges, the id in `self`.
    pub fn edge_subgraph<F>(&self, mut keep: F) -> (TypedMultiGraph, Vec<EdgeId>)
    where
        F: FnMut(EdgeId, &Edge) -> bool,
    {
        let mut sub = TypedMultiGraph::empty(self.n);
        let mut back = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if keep(id, e) {
                sub.push_edge(e.ends[0], e.ends[1], e.kind)
                    .expect("endpoints already validated");
                back.push(id);
            }
        }
        (sub, back)
    }

    /// Unweighted BFS distances from `src`; `usize::MAX` marks unreachable nodes.
    pub fn bfs_distances(&self, src: NodeId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of the shortest cycle, `None` for forests. Parallel edges form cycles of length 2.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent_edge = vec![usize::MAX; self.n];
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent_edge[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] >= b) {
                    break;
                }
                for h in &self.incidence[u] {
                    if h.edge == parent_edge[u] {
                        continue;
                    }
                    let w = self.node_of(h.twin());
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent_edge[w] = h.edge;
                        queue.push_back(w);
                    } else {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }
}

/// Per-half-edge colors; `None` marks an unset half during construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    halves: Vec<[Option<Color>; 2]>,
}

impl Labeling {
    pub fn unset(m: usize) -> Self {
        Labeling {
            halves: vec![[None, None]; m],
        }
    }

    pub fn from_pairs(pairs: Vec<[Color; 2]>) -> Self {
        Labeling {
            halves: pairs.into_iter().map(|[a, b]| [Some(a), Some(b)]).collect(),
        }
    }

    /// Whole-edge coloring: both halves of edge `e` get `colors[e]`.
    pub fn from_edge_colors(colors: &[Color]) -> Self {
        Labeling {
            halves: colors.iter().map(|&c| [Some(c), Some(c)]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.halves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.halves.is_empty()
    }

    pub fn get(&self, h: HalfEdge) -> Option<Color> {
        self.halves[h.edge][h.side as usize]
    }

    pub fn set(&mut self, h: HalfEdge, c: Color) {
        self.halves[h.edge][h.side as usize] = Some(c);
    }

    /// Sets the half `h` to `c` and its twin to the color forced by `kind`.
    pub fn set_edge_from(&mut self, h: HalfEdge, c: Color, kind: EdgeType) {
        self.set(h, c);
        self.set(h.twin(), c.across(kind));
    }

    pub fn is_total(&self) -> bool {
        self.halves.iter().all(|p| p[0].is_some() && p[1].is_some())
    }

    /// Both halves of every edge; panics if the labeling is not total.
    pub fn pairs(&self) -> Vec<[Color; 2]> {
        self.halves
            .iter()
            .map(|p| [p[0].expect("total labeling"), p[1].expect("total labeling")])
            .collect()
    }

    pub fn raw(&self) -> &[[Option<Color>; 2]] {
        &self.halves
    }

    /// Swaps R and B on every half-edge.
    pub fn swapped(&self) -> Labeling {
        Labeling {
            halves: self
                .halves
                .iter()
                .map(|p| [p[0].map(Color::flip), p[1].map(Color::flip)])
                .collect(),
        }
    }

    /// Number of red half-edges at every node.
    pub fn red_degrees(&self, g: &TypedMultiGraph) -> Vec<usize> {
        (0..g.node_count())
            .map(|v| {
                g.incident(v)
                    .iter()
                    .filter(|h| self.get(**h) == Some(Color::R))
                    .count()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// endpoint0 → endpoint1
    Forward,
    /// endpoint1 → endpoint0
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    /// Side (0 or 1) of the edge's tail.
    pub fn tail_side(self) -> u8 {
        match self {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    dirs: Vec<Direction>,
}

impl Orientation {
    pub fn new(dirs: Vec<Direction>) -> Self {
        Orientation { dirs }
    }

    pub fn all_forward(m: usize) -> Self {
        Orientation {
            dirs: vec![Direction::Forward; m],
        }
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn dir(&self, e: EdgeId) -> Direction {
        self.dirs[e]
    }

    pub fn dirs(&self) -> &[Direction] {
        &self.dirs
    }

    pub fn set(&mut self, e: EdgeId, d: Direction) {
        self.dirs[e] = d;
    }

    /// Orients `e` away from `from`.
    pub fn set_from(&mut self, g: &TypedMultiGraph, e: EdgeId, from: NodeId) {
        self.dirs[e] = if g.edge(e).ends[0] == from {
            Direction::Forward
        } else {
            Direction::Backward
        };
    }

    pub fn tail(&self, g: &TypedMultiGraph, e: EdgeId) -> NodeId {
        g.edge(e).ends[self.dirs[e].tail_side() as usize]
    }

    pub fn head(&self, g: &TypedMultiGraph, e: EdgeId) -> NodeId {
        g.edge(e).ends[1 - self.dirs[e].tail_side() as usize]
    }

    pub fn is_out(&self, h: HalfEdge) -> bool {
        self.dirs[h.edge].tail_side() == h.side
    }

    pub fn out_degrees(&self, g: &TypedMultiGraph) -> Vec<usize> {
        let mut out = vec![0; g.node_count()];
        for e in 0..g.edge_count() {
            out[self.tail(g, e)] += 1;
        }
        out
    }

    /// Outgoing half-edges of `v` in edge-id order.
    pub fn out_edges<'a>(&'a self, g: &'a TypedMultiGraph, v: NodeId) -> impl Iterator<Item = HalfEdge> + 'a {
        g.incident(v).iter().copied().filter(move |h| self.is_out(*h))
    }
}
