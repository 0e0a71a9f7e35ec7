//! Graph generators: configuration-model random multigraphs, a few structured
//! families, and the node splitting used to trade balance for speed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EdgeType, GraphError, NodeId, TypedMultiGraph};

/// How edge types are chosen by the random generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TypeAssignment {
    #[default]
    AllC,
    AllO,
    /// Independent fair coin per edge, drawn from the generator's stream.
    Coin,
}

impl TypeAssignment {
    fn draw(self, rng: &mut ChaCha8Rng) -> EdgeType {
        match self {
            TypeAssignment::AllC => EdgeType::C,
            TypeAssignment::AllO => EdgeType::O,
            TypeAssignment::Coin => {
                if rng.gen_bool(0.5) {
                    EdgeType::O
                } else {
                    EdgeType::C
                }
            }
        }
    }
}

/// Pairs up stubs uniformly at random and repairs self-loops by re-pairing only
/// the offending pair with a random partner pair.
fn configuration_pairs(
    stubs: Vec<NodeId>,
    rng: &mut ChaCha8Rng,
    max_retries: usize,
) -> Result<Vec<(NodeId, NodeId)>, GraphError> {
    let mut stubs = stubs;
    stubs.shuffle(rng);
    let mut pairs: Vec<(NodeId, NodeId)> = stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect();
    let mut retries = 0;
    for i in 0..pairs.len() {
        while pairs[i].0 == pairs[i].1 {
            if retries >= max_retries || pairs.len() < 2 {
                return Err(GraphError::RetryExhausted(retries));
            }
            retries += 1;
            let j = rng.gen_range(0..pairs.len() - 1);
            let j = if j >= i { j + 1 } else { j };
            let a = pairs[i].0;
            let (b, c) = pairs[j];
            if b != a && c != a {
                pairs[i] = (a, b);
                pairs[j] = (a, c);
            }
        }
    }
    Ok(pairs)
}

/// Random `delta`-regular multigraph from the configuration model.
///
/// Parallel edges may occur; self-loops never do. The same `(n, delta, seed, types)`
/// always yields the same edge list.
pub fn gen_random_regular(
    n: usize,
    delta: usize,
    seed: u64,
    types: TypeAssignment,
) -> Result<TypedMultiGraph, GraphError> {
    if delta == 0 {
        return Err(GraphError::BadParam("delta must be at least 1".into()));
    }
    if (n * delta) % 2 == 1 {
        return Err(GraphError::ParityError { n, delta });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stubs: Vec<NodeId> = (0..n).flat_map(|v| std::iter::repeat_n(v, delta)).collect();
    let pairs = configuration_pairs(stubs, &mut rng, 100 * n.max(1))?;
    let mut g = TypedMultiGraph::empty(n);
    for (u, v) in pairs {
        let kind = types.draw(&mut rng);
        g.push_edge(u, v, kind)?;
    }
    Ok(g)
}

/// Random multigraph of maximum degree at most `delta`: a configuration-model
/// pairing (one stub dropped when `n * delta` is odd) from which every edge is
/// kept independently with probability `keep`.
pub fn gen_random_bounded(
    n: usize,
    delta: usize,
    keep: f64,
    seed: u64,
    types: TypeAssignment,
) -> Result<TypedMultiGraph, GraphError> {
    if delta == 0 || n < 2 {
        return Err(GraphError::BadParam("need delta >= 1 and n >= 2".into()));
    }
    if !(0.0..=1.0).contains(&keep) {
        return Err(GraphError::BadParam(format!("keep probability {keep} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<NodeId> = (0..n).flat_map(|v| std::iter::repeat_n(v, delta)).collect();
    if stubs.len() % 2 == 1 {
        stubs.pop();
    }
    let pairs = configuration_pairs(stubs, &mut rng, 100 * n)?;
    let mut g = TypedMultiGraph::empty(n);
    for (u, v) in pairs {
        let kept = rng.gen_bool(keep);
        let kind = types.draw(&mut rng);
        if kept {
            g.push_edge(u, v, kind)?;
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structured {
    /// Path on `n` nodes.
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Center node 0 with the given number of leaves.
    Star(usize),
    /// Rooted tree in which every internal node has degree `delta`.
    FullTree { delta: usize, depth: usize },
}

/// Structured graphs with canonical numbering; every edge gets type `kind`.
pub fn gen_structured(which: Structured, kind: EdgeType) -> Result<TypedMultiGraph, GraphError> {
    let mut edges = Vec::new();
    let n = match which {
        Structured::Path(n) => {
            if n == 0 {
                return Err(GraphError::BadParam("path needs at least one node".into()));
            }
            edges.extend((1..n).map(|v| (v - 1, v)));
            n
        }
        Structured::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::BadParam("cycle needs at least 3 nodes".into()));
            }
            edges.extend((0..n).map(|v| (v, (v + 1) % n)));
            n
        }
        Structured::Complete(n) => {
            if n == 0 {
                return Err(GraphError::BadParam("complete graph needs at least one node".into()));
            }
            for u in 0..n {
                edges.extend((u + 1..n).map(|v| (u, v)));
            }
            n
        }
        Structured::Star(leaves) => {
            edges.extend((1..=leaves).map(|v| (0, v)));
            leaves + 1
        }
        Structured::FullTree { delta, depth } => {
            if delta < 2 {
                return Err(GraphError::BadParam("full tree needs delta >= 2".into()));
            }
            let mut frontier = vec![0usize];
            let mut next_id = 1;
            for level in 0..depth {
                let children = if level == 0 { delta } else { delta - 1 };
                let mut next = Vec::new();
                for &p in &frontier {
                    for _ in 0..children {
                        edges.push((p, next_id));
                        next.push(next_id);
                        next_id += 1;
                    }
                }
                frontier = next;
            }
            next_id
        }
    };
    TypedMultiGraph::new(n, edges.into_iter().map(|(u, v)| (u, v, kind)))
}

/// Splits every node of degree at least `s = ceil(2/eps)` into virtual nodes that
/// each carry between `s` and `2s - 1` of its half-edges (in edge-id order).
///
/// Returns the split graph (same edge ids and types) and the map from new node to
/// original node. Nodes of smaller degree are kept as a single node.
pub fn split_nodes_epsilon(
    g: &TypedMultiGraph,
    eps: f64,
) -> Result<(TypedMultiGraph, Vec<NodeId>), GraphError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(GraphError::BadParam(format!("eps {eps} outside (0, 1]")));
    }
    let chunk = (2.0 / eps).ceil() as usize;
    let mut back = Vec::new();
    // new node id for every half-edge
    let mut half_node: Vec<[NodeId; 2]> = vec![[0, 0]; g.edge_count()];
    for v in 0..g.node_count() {
        let halves = g.incident(v);
        let parts = if halves.len() >= chunk { halves.len() / chunk } else { 1 };
        let first = back.len();
        back.extend(std::iter::repeat_n(v, parts));
        for (i, h) in halves.iter().enumerate() {
            let part = (i / chunk).min(parts - 1);
            half_node[h.edge][h.side as usize] = first + part;
        }
    }
    let split = TypedMultiGraph::new(
        back.len(),
        g.edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| (half_node[e][0], half_node[e][1], edge.kind)),
    )?;
    Ok((split, back))
}
