//! Exact splitting of C-only graphs: `d_R(v)` in `{floor(d/2), floor(d/2) + 1}`.

use thiserror::Error;

use crate::graph::{
    split_nodes_epsilon, Color, EdgeId, EdgeOrigin, EdgeType, Labeling, TypedMultiGraph,
    VirtualEdge, VirtualEdgeMap,
};
use crate::subroutines::{maximal_matching, CostLedger};

use super::balanced_split;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoundMode {
    /// `d_R(v)` in `{floor(d/2), floor(d/2) + 1}`.
    Down,
    /// Colors swapped: `d_B(v)` in `{floor(d/2), floor(d/2) + 1}`.
    Up,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplitError {
    #[error("edge {0} has type O; exact splitting needs an all-C graph")]
    TypeError(EdgeId),
    #[error("eps {0} outside (0, 1]")]
    BadEps(String),
}

/// Matches even-degree nodes greedily (matched edges red), lets the remaining
/// even-degree nodes pair their edges into O-type virtual edges, and solves the
/// residual graph, in which every node with edges has odd degree, by balanced splitting.
pub fn exact_split(g: &TypedMultiGraph, mode: RoundMode) -> Result<(Labeling, CostLedger), SplitError> {
    if let Some(e) = (0..g.edge_count()).find(|&e| g.kind(e) == EdgeType::O) {
        return Err(SplitError::TypeError(e));
    }
    let n = g.node_count();
    let even: Vec<bool> = (0..n).map(|v| g.degree(v).is_multiple_of(2)).collect();
    let (ge, ge_back) = g.edge_subgraph(|_, e| even[e.ends[0]] && even[e.ends[1]]);
    let mut ledger = CostLedger::new();
    let mut sub = CostLedger::new();
    let matching: Vec<EdgeId> = maximal_matching(&ge, &mut sub).into_iter().map(|e| ge_back[e]).collect();
    ledger.absorb("matching", sub, 1);

    let mut fixed: Vec<(EdgeId, [Color; 2])> = Vec::new();
    let mut used = vec![false; g.edge_count()];
    let mut covered = vec![false; n];
    for &e in &matching {
        fixed.push((e, [Color::R, Color::R]));
        used[e] = true;
        covered[g.edge(e).ends[0]] = true;
        covered[g.edge(e).ends[1]] = true;
    }

    // unmatched even nodes form an independent set; they pair up all their edges
    let mut virtuals = Vec::new();
    for v in (0..n).filter(|&v| even[v] && !covered[v]) {
        let halves = g.incident(v);
        for pair in halves.chunks_exact(2) {
            let (h1, h2) = (pair[0], pair[1]);
            debug_assert!(!used[h1.edge] && !used[h2.edge]);
            used[h1.edge] = true;
            used[h2.edge] = true;
            let (u, w) = (g.node_of(h1.twin()), g.node_of(h2.twin()));
            if u == w {
                fixed.push((h1.edge, [Color::R, Color::R]));
                fixed.push((h2.edge, [Color::B, Color::B]));
            } else {
                virtuals.push((
                    u,
                    w,
                    VirtualEdge {
                        first: h1,
                        second: h2,
                        middle: v,
                        first_kind: EdgeType::C,
                        second_kind: EdgeType::C,
                    },
                ));
            }
        }
    }
    fixed.sort_by_key(|f| f.0);

    let mut residual = TypedMultiGraph::empty(n);
    let mut origins = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if !used[id] {
            residual.push_edge(e.ends[0], e.ends[1], e.kind).expect("copied edge");
            origins.push(EdgeOrigin::Kept(id));
        }
    }
    for (u, w, ve) in virtuals {
        residual.push_edge(u, w, ve.kind()).expect("distinct endpoints");
        origins.push(EdgeOrigin::Virtual(ve));
    }
    debug_assert!((0..n).all(|v| residual.degree(v) % 2 == 1 || residual.degree(v) == 0));

    let (res_lab, res_ledger) = balanced_split(&residual);
    // one residual round costs two rounds of the input graph (virtual edges span two hops)
    ledger.absorb("residual", res_ledger, 2);
    let map = VirtualEdgeMap {
        finer_edge_count: g.edge_count(),
        origins,
        fixed,
    };
    let lab = map.unfold(&res_lab).expect("balanced split output is type-consistent");
    debug_assert!(lab.is_total());
    let lab = match mode {
        RoundMode::Down => lab,
        RoundMode::Up => lab.swapped(),
    };
    Ok((lab, ledger))
}

/// Splitting with discrepancy at most `eps * d(v) + 2`: nodes of degree at least
/// `ceil(2/eps)` are cut into virtual nodes of degree in `[ceil(2/eps), 2 ceil(2/eps))`
/// that are split independently.
pub fn eps_split(g: &TypedMultiGraph, eps: f64) -> Result<(Labeling, CostLedger), SplitError> {
    let (split, _) = split_nodes_epsilon(g, eps).map_err(|_| SplitError::BadEps(eps.to_string()))?;
    // virtual nodes keep every edge id, so the labeling transfers unchanged
    Ok(balanced_split(&split))
}
