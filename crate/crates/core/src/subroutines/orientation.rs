use std::collections::{BTreeMap, VecDeque};

use crate::graph::{EdgeId, EdgeType, NodeId, Orientation, TypedMultiGraph};

use super::{CostLedger, Unit};

/// Orientation in which every node of degree at least 3 has an outgoing edge.
///
/// Components containing a cycle orient one cycle consistently and every other
/// node toward it along a BFS forest; tree components are rooted at a leaf and
/// oriented toward the root.
pub fn sinkless_orientation(g: &TypedMultiGraph, ledger: &mut CostLedger) -> Orientation {
    ledger.record("sinkless_orientation", Unit::SO, 1, 1);
    let n = g.node_count();
    let mut o = Orientation::all_forward(g.edge_count());
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let comp = component(g, start);
        comp.iter().for_each(|&v| seen[v] = true);
        let roots: Vec<NodeId> = match find_cycle(g, start) {
            Some(cycle) => {
                for &(e, tail) in &cycle {
                    o.set_from(g, e, tail);
                }
                cycle.iter().map(|&(_, tail)| tail).collect()
            }
            None => {
                let leaf = comp.iter().copied().find(|&v| g.degree(v) <= 1).unwrap_or(start);
                vec![leaf]
            }
        };
        // multi-source BFS; every reached node points its tree edge at its parent
        let mut reached = vec![false; n];
        let mut queue = VecDeque::new();
        for &r in &roots {
            reached[r] = true;
            queue.push_back(r);
        }
        while let Some(u) = queue.pop_front() {
            for h in g.incident(u) {
                let w = g.node_of(h.twin());
                if !reached[w] {
                    reached[w] = true;
                    o.set_from(g, h.edge, w);
                    queue.push_back(w);
                }
            }
        }
    }
    o
}

/// Orientation with `|outdeg(v) - indeg(v)| <= 1` everywhere and equality at even-degree nodes.
pub fn balanced_orientation(g: &TypedMultiGraph, ledger: &mut CostLedger) -> Orientation {
    ledger.record("balanced_orientation", Unit::BO(g.max_degree() as f64), 1, 1);
    euler_balance(g)
}

/// Orientation with outdegree at least `(1 - eps) d(v)/2 - 1`; the balanced
/// orientation already achieves this for every `eps`.
pub fn eps_balanced_orientation(g: &TypedMultiGraph, eps: f64, ledger: &mut CostLedger) -> Orientation {
    assert!(eps > 0.0 && eps <= 1.0, "eps must lie in (0, 1]");
    ledger.record("eps_balanced_orientation", Unit::BO(1.0 / eps), 1, 1);
    euler_balance(g)
}

/// Orientation in which every node of degree at least 5 has outdegree at least 2.
pub fn outdeg2_orientation(g: &TypedMultiGraph, ledger: &mut CostLedger) -> Orientation {
    ledger.record("outdeg2_orientation", Unit::SO, 1, 1);
    euler_balance(g)
}

/// Parallel edges are first paired up in opposite directions (a C edge with an O
/// edge where possible, the C edge leaving the smaller endpoint), so a node never
/// sends two edges of different types to the same neighbor through this step. The
/// rest is oriented along closed trails after joining every odd node to a dummy.
fn euler_balance(g: &TypedMultiGraph) -> Orientation {
    let n = g.node_count();
    let mut o = Orientation::all_forward(g.edge_count());
    let mut done = vec![false; g.edge_count()];

    let mut classes: BTreeMap<(NodeId, NodeId), [Vec<EdgeId>; 2]> = BTreeMap::new();
    for (id, e) in g.edges().iter().enumerate() {
        let key = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
        let slot = usize::from(e.kind == EdgeType::O);
        classes.entry(key).or_default()[slot].push(id);
    }
    for ((lo, hi), [cs, os]) in classes {
        let mixed = cs.len().min(os.len());
        for i in 0..mixed {
            o.set_from(g, cs[i], lo);
            o.set_from(g, os[i], hi);
            done[cs[i]] = true;
            done[os[i]] = true;
        }
        let rest = if cs.len() > mixed { &cs[mixed..] } else { &os[mixed..] };
        for pair in rest.chunks_exact(2) {
            o.set_from(g, pair[0], lo);
            o.set_from(g, pair[1], hi);
            done[pair[0]] = true;
            done[pair[1]] = true;
        }
    }

    // remaining edges plus dummy node `n`; adjacency entries are (edge slot, other end)
    let mut ends: Vec<[NodeId; 2]> = Vec::new();
    let mut real: Vec<Option<EdgeId>> = Vec::new();
    for (id, e) in g.edges().iter().enumerate() {
        if !done[id] {
            ends.push(e.ends);
            real.push(Some(id));
        }
    }
    let mut deg = vec![0usize; n + 1];
    for &[a, b] in &ends {
        deg[a] += 1;
        deg[b] += 1;
    }
    for v in 0..n {
        if deg[v] % 2 == 1 {
            ends.push([v, n]);
            real.push(None);
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (slot, &[a, b]) in ends.iter().enumerate() {
        adj[a].push(slot);
        adj[b].push(slot);
    }
    let mut used = vec![false; ends.len()];
    let mut ptr = vec![0usize; n + 1];
    for start in 0..=n {
        loop {
            let mut cur = start;
            let mut moved = false;
            loop {
                while ptr[cur] < adj[cur].len() && used[adj[cur][ptr[cur]]] {
                    ptr[cur] += 1;
                }
                if ptr[cur] == adj[cur].len() {
                    break;
                }
                let slot = adj[cur][ptr[cur]];
                used[slot] = true;
                moved = true;
                let [a, b] = ends[slot];
                let next = if a == cur { b } else { a };
                if let Some(e) = real[slot] {
                    o.set_from(g, e, cur);
                }
                cur = next;
            }
            debug_assert_eq!(cur, start, "trails close up in an even graph");
            if !moved {
                break;
            }
        }
    }
    o
}

fn component(g: &TypedMultiGraph, start: NodeId) -> Vec<NodeId> {
    let dist = g.bfs_distances(start);
    (0..g.node_count()).filter(|&v| dist[v] != usize::MAX).collect()
}

/// Some cycle in the component of `start`, as `(edge, tail)` steps in walking
/// order. Two parallel edges count as a cycle.
pub(crate) fn find_cycle(g: &TypedMultiGraph, start: NodeId) -> Option<Vec<(EdgeId, NodeId)>> {
    let n = g.node_count();
    let mut parent: Vec<Option<(EdgeId, NodeId)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    depth[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for h in g.incident(u) {
            if parent[u].is_some_and(|(pe, _)| pe == h.edge) {
                continue;
            }
            let w = g.node_of(h.twin());
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = Some((h.edge, u));
                queue.push_back(w);
                continue;
            }
            // non-tree edge u-w closes a cycle through their lowest common ancestor
            let (mut a, mut b) = (u, w);
            let mut up = Vec::new();
            let mut down = Vec::new();
            while a != b {
                if depth[a] >= depth[b] {
                    let (e, p) = parent[a].expect("non-root");
                    up.push((e, a));
                    a = p;
                } else {
                    let (e, p) = parent[b].expect("non-root");
                    down.push((e, p));
                    b = p;
                }
            }
            down.reverse();
            up.extend(down);
            up.push((h.edge, w));
            return Some(up);
        }
    }
    None
}
