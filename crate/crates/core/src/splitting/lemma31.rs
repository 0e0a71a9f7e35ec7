//! Two-coloring in which every node of degree at least 3 sees both colors,
//! using one sinkless orientation on a cluster graph.

use std::collections::VecDeque;

use crate::graph::{Color, EdgeId, EdgeType, HalfEdge, Labeling, NodeId, TypedMultiGraph};
use crate::subroutines::{find_cycle, ruling_set_32, sinkless_orientation, CostLedger};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub center: NodeId,
    pub members: Vec<NodeId>,
    /// All members have degree 3 in the reduced graph and the cluster is a tree.
    pub bad: bool,
    /// For bad clusters: the two lowest-id intercluster edges assigned to the cluster.
    pub e_c: Option<EdgeId>,
    pub e_nc: Option<EdgeId>,
}

/// Clustering of the degree-reduced graph; edge ids refer to the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterDecomposition {
    /// Edges kept in the degree-3 reduction (marked by both endpoints).
    pub reduced_edges: Vec<EdgeId>,
    pub cluster_of: Vec<usize>,
    pub clusters: Vec<Cluster>,
}

pub fn lemma31_split(g: &TypedMultiGraph, ledger: &mut CostLedger) -> Labeling {
    lemma31_with_clusters(g, ledger).0
}

fn default_color(lab: &mut Labeling, g: &TypedMultiGraph, e: EdgeId) {
    lab.set_edge_from(HalfEdge::new(e, 0), Color::R, g.kind(e));
}

/// Color for the half `skip` at its node that leaves the node with both colors,
/// given that all its other halves are already colored.
fn happy_choice(lab: &Labeling, g: &TypedMultiGraph, skip: HalfEdge) -> Color {
    let v = g.node_of(skip);
    let mut others = g
        .incident(v)
        .iter()
        .filter(|h| **h != skip)
        .map(|h| lab.get(*h).expect("other halves colored first"));
    match others.next() {
        Some(first) if others.all(|c| c == first) => first.flip(),
        _ => Color::R,
    }
}

/// BFS forest of `inner` grown from `roots`; returns nodes in visiting order and,
/// per node, the inner-graph half-edge leading to its parent.
fn forest(inner: &TypedMultiGraph, roots: &[NodeId]) -> (Vec<NodeId>, Vec<Option<HalfEdge>>) {
    let mut parent = vec![None; inner.node_count()];
    let mut seen = vec![false; inner.node_count()];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for &r in roots {
        if !seen[r] {
            seen[r] = true;
            queue.push_back(r);
        }
    }
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for h in inner.incident(u) {
            let w = inner.node_of(h.twin());
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(h.twin());
                queue.push_back(w);
            }
        }
    }
    (order, parent)
}

pub fn lemma31_with_clusters(g: &TypedMultiGraph, ledger: &mut CostLedger) -> (Labeling, ClusterDecomposition) {
    let n = g.node_count();
    let mut marked = vec![[false; 2]; g.edge_count()];
    for v in 0..n {
        if g.degree(v) >= 3 {
            for h in &g.incident(v)[..3] {
                marked[h.edge][h.side as usize] = true;
            }
        }
    }
    let (gp, reduced) = g.edge_subgraph(|id, _| marked[id][0] && marked[id][1]);

    let centers = ruling_set_32(&gp, ledger);
    let mut best = vec![(usize::MAX, usize::MAX); n];
    for (ci, &c) in centers.iter().enumerate() {
        best[c] = best[c].min((0, ci));
        for u in gp.neighbors(c) {
            best[u] = best[u].min((1, ci));
            for w in gp.neighbors(u) {
                best[w] = best[w].min((2, ci));
            }
        }
    }
    let cluster_of: Vec<usize> = best.iter().map(|&(d, ci)| {
        assert!(d <= 2, "ruling set dominates within distance 2");
        ci
    }).collect();
    let mut members = vec![Vec::new(); centers.len()];
    for v in 0..n {
        members[cluster_of[v]].push(v);
    }
    let internal: Vec<bool> = gp
        .edges()
        .iter()
        .map(|e| cluster_of[e.ends[0]] == cluster_of[e.ends[1]])
        .collect();
    let mut internal_count = vec![0usize; centers.len()];
    let mut inter_of: Vec<Vec<EdgeId>> = vec![Vec::new(); centers.len()];
    for (id, e) in gp.edges().iter().enumerate() {
        if internal[id] {
            internal_count[cluster_of[e.ends[0]]] += 1;
        } else {
            inter_of[cluster_of[e.ends[0]]].push(id);
            inter_of[cluster_of[e.ends[1]]].push(id);
        }
    }
    let bad: Vec<bool> = (0..centers.len())
        .map(|c| {
            members[c].iter().all(|&v| gp.degree(v) == 3) && internal_count[c] + 1 == members[c].len()
        })
        .collect();

    // cluster multigraph: one node per good cluster, two per bad cluster
    let mut h_first = vec![0usize; centers.len()];
    let mut h_cluster = Vec::new();
    for c in 0..centers.len() {
        h_first[c] = h_cluster.len();
        h_cluster.push(c);
        if bad[c] {
            h_cluster.push(c);
        }
    }
    // H-node owning each side of every intercluster edge
    let mut side_node = vec![[usize::MAX; 2]; gp.edge_count()];
    for c in 0..centers.len() {
        let list = &inter_of[c];
        for (i, &e) in list.iter().enumerate() {
            let side = usize::from(cluster_of[gp.edge(e).ends[0]] != c);
            let offset = usize::from(bad[c] && i >= list.len() / 2);
            side_node[e][side] = h_first[c] + offset;
        }
    }
    let inter_edges: Vec<EdgeId> = (0..gp.edge_count()).filter(|&e| !internal[e]).collect();
    let h = TypedMultiGraph::new(
        h_cluster.len(),
        inter_edges.iter().map(|&e| (side_node[e][0], side_node[e][1], EdgeType::C)),
    )
    .expect("intercluster edges join distinct cluster nodes");
    let h_orient = sinkless_orientation(&h, ledger);
    let mut assigned: Vec<Vec<EdgeId>> = vec![Vec::new(); centers.len()];
    for (hid, &e) in inter_edges.iter().enumerate() {
        assigned[h_cluster[h_orient.tail(&h, hid)]].push(e);
    }

    let mut lab = Labeling::unset(gp.edge_count());
    let mut is_enc = vec![false; gp.edge_count()];
    let mut ec_enc = vec![None; centers.len()];
    for c in 0..centers.len() {
        if bad[c] {
            let a = &assigned[c];
            assert!(a.len() >= 2, "bad clusters receive at least two intercluster edges");
            ec_enc[c] = Some((a[0], a[1]));
            is_enc[a[1]] = true;
        }
    }
    for &e in &inter_edges {
        if !is_enc[e] {
            default_color(&mut lab, &gp, e);
        }
    }

    let mut local_index = vec![usize::MAX; n];
    let locals: Vec<Local> = (0..centers.len())
        .map(|c| Local::build(&gp, &members[c], &internal, &mut local_index))
        .collect();

    // bad clusters: alternate along the path from e_c to e_nc, then the trees hanging off it
    let mut path_roots: Vec<Vec<NodeId>> = vec![Vec::new(); centers.len()];
    for c in 0..centers.len() {
        let Some((ec, enc)) = ec_enc[c] else { continue };
        let loc = &locals[c];
        let (xc, xnc) = (loc.endpoint_in(&gp, ec), loc.endpoint_in(&gp, enc));
        let (_, parent) = forest(&loc.g, &[xc]);
        let mut steps = Vec::new(); // local half-edges from xc towards xnc
        let mut cur = xnc;
        while cur != xc {
            let up = parent[cur].expect("cluster is connected");
            steps.push(up.twin());
            cur = loc.g.node_of(up.twin());
        }
        steps.reverse();
        let mut prev = lab.get(gp.half_at(ec, loc.nodes[xc])).expect("e_c colored");
        let mut nodes = vec![xc];
        for step in steps {
            let half = loc.global(step);
            lab.set_edge_from(half, prev.flip(), gp.kind(half.edge));
            prev = lab.get(half.twin()).unwrap();
            nodes.push(loc.g.node_of(step.twin()));
        }
        lab.set_edge_from(gp.half_at(enc, loc.nodes[xnc]), prev.flip(), gp.kind(enc));
        path_roots[c] = nodes;
    }
    for c in (0..centers.len()).filter(|&c| bad[c]) {
        let loc = &locals[c];
        let (order, parent) = forest(&loc.g, &path_roots[c]);
        color_leaves_up(&mut lab, &gp, loc, &order, &parent);
    }

    for c in (0..centers.len()).filter(|&c| !bad[c]) {
        let loc = &locals[c];
        if let Some(root) = (0..loc.nodes.len()).find(|&v| gp.degree(loc.nodes[v]) < 3) {
            let (order, parent) = forest(&loc.g, &[root]);
            default_non_tree(&mut lab, &gp, loc, &parent, &[]);
            color_leaves_up(&mut lab, &gp, loc, &order, &parent);
        } else {
            let cycle = find_cycle(&loc.g, 0).expect("good cluster without low-degree node has a cycle");
            let roots: Vec<NodeId> = cycle.iter().map(|&(_, t)| t).collect();
            let cycle_edges: Vec<EdgeId> = cycle.iter().map(|&(e, _)| e).collect();
            let (order, parent) = forest(&loc.g, &roots);
            default_non_tree(&mut lab, &gp, loc, &parent, &cycle_edges);
            color_leaves_up(&mut lab, &gp, loc, &order, &parent);
            for &(e, tail) in &cycle {
                let third = loc
                    .g
                    .incident(tail)
                    .iter()
                    .map(|h| h.edge)
                    .find(|le| !cycle_edges.contains(le))
                    .map(|le| loc.global(loc.g.half_at(le, tail)))
                    .or_else(|| {
                        // third edge leaves the cluster
                        let v = loc.nodes[tail];
                        gp.incident(v).iter().copied().find(|h| !internal[h.edge])
                    })
                    .expect("cycle nodes have degree 3");
                let c3 = lab.get(third).expect("third edge colored before the cycle");
                let half = loc.global(loc.g.half_at(e, tail));
                lab.set_edge_from(half, c3.flip(), gp.kind(half.edge));
            }
        }
    }
    debug_assert!(lab.is_total());

    // lift to the input graph
    let mut out = Labeling::unset(g.edge_count());
    let mut in_reduced = vec![false; g.edge_count()];
    for (&e, [a, b]) in reduced.iter().zip(lab.pairs()) {
        in_reduced[e] = true;
        out.set(HalfEdge::new(e, 0), a);
        out.set(HalfEdge::new(e, 1), b);
    }
    for v in 0..n {
        if g.degree(v) < 3 || gp.degree(v) == 3 {
            continue;
        }
        let own: Vec<HalfEdge> = g.incident(v)[..3].iter().copied().filter(|h| !in_reduced[h.edge]).collect();
        let colors: Vec<Color> = if own.len() >= 2 {
            vec![Color::R, Color::B, Color::R]
        } else {
            let seen: Vec<Color> = g.incident(v)[..3]
                .iter()
                .filter(|h| in_reduced[h.edge])
                .map(|h| out.get(*h).unwrap())
                .collect();
            vec![if seen[0] == seen[1] { seen[0].flip() } else { Color::R }]
        };
        for (h, c) in own.iter().zip(colors) {
            out.set_edge_from(*h, c, g.kind(h.edge));
        }
    }
    for e in 0..g.edge_count() {
        if out.get(HalfEdge::new(e, 0)).is_none() {
            default_color(&mut out, g, e);
        }
    }

    let clusters = (0..centers.len())
        .map(|c| Cluster {
            center: centers[c],
            members: members[c].clone(),
            bad: bad[c],
            e_c: ec_enc[c].map(|(a, _)| reduced[a]),
            e_nc: ec_enc[c].map(|(_, b)| reduced[b]),
        })
        .collect();
    (out, ClusterDecomposition { reduced_edges: reduced, cluster_of, clusters })
}

/// A cluster's internal edges on locally numbered nodes.
struct Local {
    g: TypedMultiGraph,
    nodes: Vec<NodeId>,
    edges: Vec<EdgeId>,
}

impl Local {
    fn build(gp: &TypedMultiGraph, members: &[NodeId], internal: &[bool], index: &mut [usize]) -> Local {
        for (i, &v) in members.iter().enumerate() {
            index[v] = i;
        }
        let mut g = TypedMultiGraph::empty(members.len());
        let mut edges = Vec::new();
        for &v in members {
            for h in gp.incident(v) {
                if h.side == 0 && internal[h.edge] {
                    let e = gp.edge(h.edge);
                    g.push_edge(index[e.ends[0]], index[e.ends[1]], e.kind)
                        .expect("no self-loops inside a cluster");
                    edges.push(h.edge);
                }
            }
        }
        Local { g, nodes: members.to_vec(), edges }
    }

    fn global(&self, h: HalfEdge) -> HalfEdge {
        HalfEdge::new(self.edges[h.edge], h.side)
    }

    /// Local id of the endpoint of intercluster edge `e` inside this cluster.
    fn endpoint_in(&self, gp: &TypedMultiGraph, e: EdgeId) -> NodeId {
        let [a, b] = gp.edge(e).ends;
        let v = if self.nodes.binary_search(&a).is_ok() { a } else { b };
        self.nodes.binary_search(&v).expect("endpoint inside the cluster")
    }
}

/// Internal edges that are neither tree edges nor listed in `skip` (local ids) get the default color.
fn default_non_tree(
    lab: &mut Labeling,
    gp: &TypedMultiGraph,
    loc: &Local,
    parent: &[Option<HalfEdge>],
    skip: &[EdgeId],
) {
    let mut tree = vec![false; loc.g.edge_count()];
    parent.iter().flatten().for_each(|h| tree[h.edge] = true);
    for le in 0..loc.g.edge_count() {
        if !tree[le] && !skip.contains(&le) {
            default_color(lab, gp, loc.edges[le]);
        }
    }
}

/// Colors the tree edges from the deepest nodes upward; each child picks the
/// color of its parent edge so that it sees both colors.
fn color_leaves_up(
    lab: &mut Labeling,
    gp: &TypedMultiGraph,
    loc: &Local,
    order: &[NodeId],
    parent: &[Option<HalfEdge>],
) {
    for &v in order.iter().rev() {
        if let Some(up) = parent[v] {
            let half = loc.global(up);
            let c = happy_choice(lab, gp, half);
            lab.set_edge_from(half, c, gp.kind(half.edge));
        }
    }
}
