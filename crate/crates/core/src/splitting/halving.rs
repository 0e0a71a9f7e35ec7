//! Degree halving: orient, let every node pair up its outgoing edges into
//! virtual edges, recurse on the smaller graph, unfold the labels back.

use std::collections::BTreeMap;

use crate::graph::{
    Color, EdgeId, EdgeOrigin, EdgeType, HalfEdge, Labeling, NodeId, Orientation, TypedMultiGraph,
    VirtualEdge, VirtualEdgeMap,
};
use crate::subroutines::{eps_balanced_orientation, outdeg2_orientation, CostLedger};

use super::lemma31_split;

/// Level parameters for a graph of maximum degree `delta`: `k = ceil(log2 delta)`
/// regular levels with `eps_i = 2^(i/2) / (4 sqrt(delta))`, followed by two
/// outdegree-2 levels.
#[derive(Clone, Debug, PartialEq)]
pub struct HalvingSchedule {
    pub delta: usize,
    pub k: usize,
    pub eps: Vec<f64>,
}

impl HalvingSchedule {
    pub const EXTRA_LEVELS: usize = 2;

    pub fn new(delta: usize) -> Self {
        let k = ceil_log2(delta);
        let eps = (0..k)
            .map(|i| 2f64.powf(i as f64 / 2.0) / (4.0 * (delta as f64).sqrt()))
            .collect();
        HalvingSchedule { delta, k, eps }
    }
}

/// `ceil(log2 x)`, with 0 for `x <= 1`.
pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Per-level record of a halving run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTrace {
    pub delta: usize,
    /// Maximum degree of the level graphs; entry 0 is the input, the last entry
    /// the graph handed to the both-colors coloring.
    pub level_max_degree: Vec<usize>,
}

/// One halving level with an eps-balanced orientation.
pub fn halve_step(g: &TypedMultiGraph, eps: f64, ledger: &mut CostLedger) -> (TypedMultiGraph, VirtualEdgeMap) {
    halve_with(g, |r, l| eps_balanced_orientation(r, eps, l), ledger)
}

/// One of the closing levels, driven by an outdegree-2 orientation.
pub fn halve_step_outdeg2(g: &TypedMultiGraph, ledger: &mut CostLedger) -> (TypedMultiGraph, VirtualEdgeMap) {
    halve_with(g, outdeg2_orientation, ledger)
}

/// Shared level construction.
///
/// Parallel edges of equal type are first colored outright in pairs (one red and
/// one blue half at both ends), leaving at most one `C` and one `O` edge per node
/// pair. The orientation then never has a node send two edges to the same
/// neighbor, so pairing outgoing edges by id never creates a self-loop.
pub fn halve_with<F>(g: &TypedMultiGraph, orient: F, ledger: &mut CostLedger) -> (TypedMultiGraph, VirtualEdgeMap)
where
    F: FnOnce(&TypedMultiGraph, &mut CostLedger) -> Orientation,
{
    let mut fixed = Vec::new();
    let mut resolved = vec![false; g.edge_count()];
    let mut classes: BTreeMap<(NodeId, NodeId, EdgeType), Vec<EdgeId>> = BTreeMap::new();
    for (id, e) in g.edges().iter().enumerate() {
        let key = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]), e.kind);
        classes.entry(key).or_default().push(id);
    }
    for ((a, _, kind), ids) in classes {
        for pair in ids.chunks_exact(2) {
            for (&e, at_a) in pair.iter().zip([Color::R, Color::B]) {
                let far = at_a.across(kind);
                let cols = if g.edge(e).ends[0] == a { [at_a, far] } else { [far, at_a] };
                fixed.push((e, cols));
                resolved[e] = true;
            }
        }
    }
    fixed.sort_by_key(|f| f.0);

    let (rest, back) = g.edge_subgraph(|id, _| !resolved[id]);
    let o = orient(&rest, ledger);
    let mut paired = vec![false; rest.edge_count()];
    let mut virtuals = Vec::new();
    for v in 0..rest.node_count() {
        let outs: Vec<HalfEdge> = o.out_edges(&rest, v).collect();
        for pair in outs.chunks_exact(2) {
            let (h1, h2) = (pair[0], pair[1]);
            let u = rest.node_of(h1.twin());
            let w = rest.node_of(h2.twin());
            assert_ne!(u, w, "at most one outgoing edge per neighbor");
            paired[h1.edge] = true;
            paired[h2.edge] = true;
            virtuals.push((
                u,
                w,
                VirtualEdge {
                    first: HalfEdge::new(back[h1.edge], h1.side),
                    second: HalfEdge::new(back[h2.edge], h2.side),
                    middle: v,
                    first_kind: rest.kind(h1.edge),
                    second_kind: rest.kind(h2.edge),
                },
            ));
        }
    }

    let mut coarse = TypedMultiGraph::empty(g.node_count());
    let mut origins = Vec::new();
    for (rid, e) in rest.edges().iter().enumerate() {
        if !paired[rid] {
            coarse.push_edge(e.ends[0], e.ends[1], e.kind).expect("copied edge");
            origins.push(EdgeOrigin::Kept(back[rid]));
        }
    }
    for (u, w, ve) in virtuals {
        coarse.push_edge(u, w, ve.kind()).expect("virtual edges join distinct nodes");
        origins.push(EdgeOrigin::Virtual(ve));
    }
    let map = VirtualEdgeMap {
        finer_edge_count: g.edge_count(),
        origins,
        fixed,
    };
    (coarse, map)
}

/// Labeling with `d_R(v), d_B(v)` in `[d(v)/2 - 1, d(v)/2 + 1]` at every node.
pub fn balanced_split(g: &TypedMultiGraph) -> (Labeling, CostLedger) {
    let (lab, ledger, _) = balanced_split_traced(g);
    (lab, ledger)
}

pub fn balanced_split_traced(g: &TypedMultiGraph) -> (Labeling, CostLedger, SplitTrace) {
    let schedule = HalvingSchedule::new(g.max_degree());
    let mut ledger = CostLedger::new();
    let mut maps = Vec::new();
    let mut degrees = vec![g.max_degree()];
    let mut cur = g.clone();
    for level in 0..schedule.k + HalvingSchedule::EXTRA_LEVELS {
        let mut sub = CostLedger::new();
        let (next, map) = match schedule.eps.get(level) {
            Some(&eps) => halve_step(&cur, eps, &mut sub),
            None => halve_step_outdeg2(&cur, &mut sub),
        };
        ledger.absorb(&format!("level{level}"), sub, 1 << level);
        degrees.push(next.max_degree());
        maps.push(map);
        cur = next;
    }
    assert!(cur.max_degree() <= 4, "closing levels leave maximum degree at most 4");
    let mut sub = CostLedger::new();
    let mut lab = lemma31_split(&cur, &mut sub);
    ledger.absorb("lemma31", sub, 1 << maps.len());
    for map in maps.iter().rev() {
        lab = map.unfold(&lab).expect("levels only produce type-consistent labelings");
    }
    debug_assert!(lab.is_total());
    let trace = SplitTrace {
        delta: schedule.delta,
        level_max_degree: degrees,
    };
    (lab, ledger, trace)
}
